# -*- coding: utf-8 -*-
#######
# nonlocal-core - a workbench for multiplayer nonlocal games: classical,
# no-signaling, explicit quantum and NPA-relaxed quantum values.
#
# Copyright (c) 2019 nonlocal-core developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
#######

"""
Tests: Message logger test case

"""
import unittest
from unittest import mock
from nonlocal_core.common.config import Configuration
from nonlocal_core.common.messages_logger import MessageLogger
from nonlocal_core.solvers import SemidefiniteProgram, sdp_solve

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"


def fluent_config(level):
    c = Configuration()
    c.LOG_LEVEL = level
    c.LOG_INTERFACE = "fluentd"
    return c


class MessageLoggerTestCase(unittest.TestCase):
    """
    This class tests the level gating, the record layout and the fluentd
    interface of the message logger
    """

    def test_change_loglevel(self):

        for level in (4, 3, 2, 1):
            c = Configuration()
            c.LOG_LEVEL = level

            logger = MessageLogger(config=c, component="test")
            written = [logger.debug("debug"), logger.info("info"),
                       logger.warning("warning"), logger.error("error")]

            self.assertEqual(sum(1 for m in written if m is not None), level)

    def test_message_layout(self):

        c = Configuration()
        c.LOG_LEVEL = 4
        logger = MessageLogger(config=c, component="npa")
        message = logger.info("Solving level 1", side=5)

        self.assertTrue(message.startswith("## INFO ##"))
        self.assertIn("component=npa", message)
        self.assertIn("side=5", message)
        self.assertTrue(message.endswith("Solving level 1\n"))

    def test_fluentd(self):

        sender = mock.MagicMock()
        logger = MessageLogger(config=fluent_config(4), component="test", fluent_sender=sender)
        logger.debug("debug")
        logger.info("info")
        logger.warning("warning")
        logger.error("error")

        self.assertEqual(sender.emit_with_time.call_count, 4)
        tag = sender.emit_with_time.call_args[0][0]
        data = sender.emit_with_time.call_args[1]["data"]
        self.assertEqual(tag, "ERROR")
        self.assertEqual(data["message"], "error")
        self.assertEqual(data["component"], "test")

    def test_progress_record(self):

        sender = mock.MagicMock()
        logger = MessageLogger(config=fluent_config(4), component="sdp_solve", fluent_sender=sender)
        logger.progress(1000, primal=1e-3, dual=2e-3)

        data = sender.emit_with_time.call_args[1]["data"]
        self.assertEqual(data["event"], "progress")
        self.assertEqual(data["iteration"], 1000)
        self.assertEqual(data["primal"], 1e-3)
        self.assertEqual(data["dual"], 2e-3)
        self.assertEqual(data["log_level"], "DEBUG")

    def test_outcome_record(self):

        c = Configuration()
        c.LOG_LEVEL = 2
        logger = MessageLogger(config=c, component="seesaw_refine")

        self.assertIsNone(logger.outcome(True, 12, 0.85))
        message = logger.outcome(False, 100, 0.84, change=1e-3)
        self.assertIn("## WARNING ##", message)
        self.assertIn("converged=False", message)
        self.assertIn("iterations=100", message)

    def test_fluentd_failure_falls_back(self):

        sender = mock.MagicMock()
        sender.emit_with_time.side_effect = IOError("connection refused")
        logger = MessageLogger(config=fluent_config(1), component="test", fluent_sender=sender)
        message = logger.error("error")

        self.assertIn("## ERROR ##", message)

    def test_solver_records(self):

        program = SemidefiniteProgram([[0, 1], [1, 0]], {1: 1.0}, fixed={0: 1.0})
        c = Configuration()
        c.LOG_LEVEL = 1
        with mock.patch("nonlocal_core.solvers.PROGRESS_INTERVAL", 1), \
                mock.patch.object(MessageLogger, "progress") as progress, \
                mock.patch.object(MessageLogger, "outcome") as outcome:
            result = sdp_solve(program, config=c, max_iterations=3)

        self.assertEqual(progress.call_count, result.iterations - int(result.converged))
        self.assertEqual(progress.call_args_list[0][0][0], 1)
        self.assertIn("primal", progress.call_args_list[0][1])
        outcome.assert_called_once()
        self.assertEqual(outcome.call_args[0][:2], (result.converged, result.iterations))


if __name__ == '__main__':
    unittest.main()
