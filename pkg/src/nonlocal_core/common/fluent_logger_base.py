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
Structured log records and their delivery to fluentd
"""
import platform
import time
from .config import global_config

try:
    from fluent import sender
    has_fluent = True
except ImportError:
    has_fluent = False

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

FLUENT_TAG = "nonlocal_core"


class FluentLoggerBase(object):
    """Builds structured records for a computation and forwards them to
    fluentd if LOG_INTERFACE is "fluentd"

    Args:
        config (Configuration): Interface, fluentd address and log level
        component (str): The computation that logs, e.g. "sdp_solve"
        fluent_sender: An existing fluent sender to use

    """

    def __init__(self, config=None, component=None, fluent_sender=None):

        if config is None:
            config = global_config

        self.host = config.LOG_FLUENT_HOST
        self.port = config.LOG_FLUENT_PORT
        self.log_level = config.LOG_LEVEL
        self.component = component or "nonlocal_core"
        self.fluent_sender = fluent_sender

        self.interface = config.LOG_INTERFACE
        if self.interface == "fluentd" and fluent_sender is None:
            if has_fluent:
                self.fluent_sender = sender.FluentSender(FLUENT_TAG, host=self.host, port=self.port)
            else:
                self.interface = "stderr"

    def record(self, log_level, message, **fields):
        """The log entry as flat dictionary; fields carry computation data
        like iteration counts and residuals
        """
        record = dict(fields)
        record.update({"node": platform.node(),
                       "time": time.time(),
                       "component": self.component,
                       "log_level": log_level,
                       "message": message})
        return record

    def send_to_fluent(self, record):
        self.fluent_sender.emit_with_time(record["log_level"], timestamp=int(record["time"]), data=record)
