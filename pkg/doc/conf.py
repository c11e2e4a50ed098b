# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import datetime
import os
import sys
from importlib import metadata

sys.path.insert(0, os.path.abspath(os.path.join("..", "src")))
# modules that autodoc should mock
# useful if some external dependencies are not satisfied at doc build time.
autodoc_mock_imports = ["scipy"]

# -- Project information -----------------------------------------------------

_meta = metadata.metadata("atgm")

project = _meta["Name"]
author = _meta["Author"] or "atgm developers"
copyright = f'{datetime.datetime.now().date().strftime("%Y")}, {author}'

# The full version, including alpha/beta/rc tags
release = metadata.version("atgm")

# -- General configuration ---------------------------------------------------

extensions = [
    "furo.sphinxext",  # Theme
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.intersphinx",
    "sphinx.ext.autosummary",
    "sphinx_copybutton",
    "myst_parser",
]

autosummary_generate = True

intersphinx_mapping = {
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}

napoleon_include_init_with_doc = False
napoleon_use_admonition_for_examples = False
napoleon_use_admonition_for_references = True

templates_path = ["_templates"]

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

html_title = project

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"

# -- Options for Markdown files ----------------------------------------------

myst_enable_extensions = [
    "colon_fence",
    "deflist",
    "dollarmath",
]
myst_heading_anchors = 3

add_module_names = False  # Class names without full module path

copybutton_prompt_text = r">>> |\.\.\. |\$ |In \[\d*\]: | {2,5}\.\.\.: | {5,8}: "
copybutton_prompt_is_regexp = True
