"""
Test cases for main application functionality.
"""

from io import StringIO
from unittest import TestCase

from atgm.utils import logging
from atgm.utils.logging import configure_logging, get_logger
from atgm.utils.parser import config_overrides, get_parser


class TestMain(TestCase):
    """
    Test cases for main application functionality.
    """

    def test_logger(self) -> None:
        """
        Test the logger.
        """
        sio = StringIO()
        configure_logging(sio, logging.INFO, True)
        log = get_logger("main")
        log.info("matched 7 of 7")
        log.debug("hidden")
        self.assertRegex(sio.getvalue(), "matched 7 of 7")
        self.assertNotIn("hidden", sio.getvalue())

    def test_parser(self) -> None:
        """
        Test the log level and the configuration flags of a subcommand.
        """
        parser = get_parser()
        ret = parser.parse_args(["--log", "info"])
        self.assertEqual(ret.log, logging.INFO)
        self.assertIsNone(ret.command)
        ret = parser.parse_args(["match", "a.txt", "b.txt", "--lambda", "2", "--ratio-k", "3", "--rounds", "1"])
        self.assertEqual(ret.log, logging.WARNING)
        self.assertEqual(config_overrides(ret), {"lam": 2.0, "ratio_k": 3.0, "rounds_k0": 1})
