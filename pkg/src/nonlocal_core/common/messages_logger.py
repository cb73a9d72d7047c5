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
Leveled and structured logging of the computations
"""
import sys
import time
from .fluent_logger_base import FluentLoggerBase

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

LEVELS = {"ERROR": 1, "WARNING": 2, "INFO": 3, "DEBUG": 4}


class MessageLogger(FluentLoggerBase):
    """Writes log lines to stderr or records to fluentd

    LOG_LEVEL 1 keeps errors only, 4 everything. Every method returns the
    written line, or None if the level filtered it.
    """

    def format_record(self, record):
        fields = "".join("\t%s=%s" % (k, record[k]) for k in sorted(record)
                         if k not in ("node", "time", "component", "log_level", "message"))
        return "## %s ## %s\thost=%s\tcomponent=%s%s\tmessage:\t%s\n" \
               % (record["log_level"], time.ctime(record["time"]), record["node"], record["component"],
                  fields, record["message"])

    def log(self, log_level, message, **fields):
        if self.log_level < LEVELS[log_level]:
            return None
        record = self.record(log_level, message, **fields)
        line = self.format_record(record)

        if self.interface == "fluentd":
            try:
                self.send_to_fluent(record)
                return line
            except Exception as e:
                sys.stderr.write("MessageLogger ERROR: Unable to reach the fluentd server "
                                 "host %s port %i error: %s\n" % (self.host, self.port, str(e)))
        sys.stderr.write(line)
        return line

    def debug(self, message, **fields):
        return self.log("DEBUG", message, **fields)

    def info(self, message, **fields):
        return self.log("INFO", message, **fields)

    def warning(self, message, **fields):
        return self.log("WARNING", message, **fields)

    def error(self, message, **fields):
        return self.log("ERROR", message, **fields)

    def progress(self, iteration, **residuals):
        """Debug record of an iterative solver"""
        return self.log("DEBUG", "iteration %i" % iteration, event="progress", iteration=iteration,
                        **residuals)

    def outcome(self, converged, iterations, value, **residuals):
        """Final record of an iterative solver, a warning if it did not
        converge
        """
        if converged:
            return self.log("INFO", "converged after %i iterations, value %.12g" % (iterations, value),
                            event="outcome", converged=True, iterations=iterations, value=value, **residuals)
        return self.log("WARNING", "no convergence within %i iterations, value %.12g" % (iterations, value),
                        event="outcome", converged=False, iterations=iterations, value=value, **residuals)
