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
Global configuration
"""

import os
import configparser

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

if os.environ.get('DEFAULT_CONFIG_PATH'):
    DEFAULT_CONFIG_PATH = os.environ['DEFAULT_CONFIG_PATH']
else:
    DEFAULT_CONFIG_PATH = "/etc/default/nonlocal_core"

# The only environment variable besides the config path
NPA_LEVEL_ENV = "NONLOCAL_NPA_LEVEL"


class Configuration(object):

    def __init__(self):
        """
        The constructor creates default parameter that can be overwritten with a read() call
        """

        # CLASSICAL
        self.MAX_STRATEGY_COUNT = 10 ** 8   # Maximum number of deterministic strategy tuples
        #                                     that are enumerated
        self.ENUMERATION_CHUNK = 65536      # Number of strategy prefixes that are scored at once

        # NPA
        self.NPA_DEFAULT_LEVEL = 1            # The relaxation level if none was requested
        self.NPA_DEFAULT_BASIS = "projector"  # "projector" or "dichotomic"
        self.NPA_FORCE_COMPLEX = False        # Solve the Hermitian formulation even for real games
        self.NPA_MAX_MATRIX_SIDE = 512        # Largest moment matrix that is handed to the SDP solver

        # SOLVERS
        self.LP_TOLERANCE = 1e-9          # Feasibility and pivoting tolerance of the simplex
        self.SDP_TOLERANCE = 1e-8         # Residual tolerance of the ADMM solver
        self.SDP_MAX_ITERATIONS = 100000  # Iteration cap of the ADMM solver
        self.SDP_OVER_RELAXATION = 1.6    # ADMM over-relaxation factor
        self.SDP_BOUND_MARGIN = 1e-7      # Added to the SDP optimum when reporting upper bounds

        # SEESAW
        self.SEESAW_ITERATIONS = 200     # Maximum number of seesaw rounds
        self.SEESAW_TOLERANCE = 1e-10    # Stop if the value changes less than this

        # HARDY
        self.HARDY_RESTARTS = 50         # Number of random restarts of the Hardy search

        # Logging
        self.LOG_LEVEL = 1                  # 1 Error, 2 Warning, 3 Info, 4 Debug
        self.LOG_INTERFACE = "stderr"       # The logging interface to use: "stderr" or "fluentd"
        self.LOG_FLUENT_HOST = "127.0.0.1"  # The Fluentd host used for fluent logging
        self.LOG_FLUENT_PORT = 24224        # The Fluentd port used for fluent logging

        if os.environ.get(NPA_LEVEL_ENV):
            self.NPA_DEFAULT_LEVEL = int(os.environ[NPA_LEVEL_ENV])

    def __str__(self):
        string = ""
        for entry in dir(self):
            if "__" not in entry and entry in self.__dict__:
                string += "%s=%s\n" % (entry, str(self.__dict__[entry]))

        return string

    def write(self, path=DEFAULT_CONFIG_PATH):
        """Save the configuration into a file

        Args:
            path (str): The path to the configuration file

        Raises:
            IOError: If unable to write config file

        """
        config = configparser.ConfigParser()

        config.add_section('CLASSICAL')
        config.set('CLASSICAL', 'MAX_STRATEGY_COUNT', str(self.MAX_STRATEGY_COUNT))
        config.set('CLASSICAL', 'ENUMERATION_CHUNK', str(self.ENUMERATION_CHUNK))

        config.add_section('NPA')
        config.set('NPA', 'DEFAULT_LEVEL', str(self.NPA_DEFAULT_LEVEL))
        config.set('NPA', 'DEFAULT_BASIS', self.NPA_DEFAULT_BASIS)
        config.set('NPA', 'FORCE_COMPLEX', str(self.NPA_FORCE_COMPLEX))
        config.set('NPA', 'MAX_MATRIX_SIDE', str(self.NPA_MAX_MATRIX_SIDE))

        config.add_section('SOLVERS')
        config.set('SOLVERS', 'LP_TOLERANCE', repr(self.LP_TOLERANCE))
        config.set('SOLVERS', 'SDP_TOLERANCE', repr(self.SDP_TOLERANCE))
        config.set('SOLVERS', 'SDP_MAX_ITERATIONS', str(self.SDP_MAX_ITERATIONS))
        config.set('SOLVERS', 'SDP_OVER_RELAXATION', repr(self.SDP_OVER_RELAXATION))
        config.set('SOLVERS', 'SDP_BOUND_MARGIN', repr(self.SDP_BOUND_MARGIN))

        config.add_section('SEESAW')
        config.set('SEESAW', 'ITERATIONS', str(self.SEESAW_ITERATIONS))
        config.set('SEESAW', 'TOLERANCE', repr(self.SEESAW_TOLERANCE))

        config.add_section('HARDY')
        config.set('HARDY', 'RESTARTS', str(self.HARDY_RESTARTS))

        config.add_section('LOGGING')
        config.set('LOGGING', 'LOG_INTERFACE', self.LOG_INTERFACE)
        config.set('LOGGING', 'LOG_FLUENT_HOST', str(self.LOG_FLUENT_HOST))
        config.set('LOGGING', 'LOG_FLUENT_PORT', str(self.LOG_FLUENT_PORT))
        config.set('LOGGING', 'LOG_LEVEL', str(self.LOG_LEVEL))

        with open(path, 'w') as configfile:
            config.write(configfile)

    def read(self, path=DEFAULT_CONFIG_PATH):
        """Read the configuration from a file

        Args:
            path (str): The path to the configuration file

        Raises:
            IOError: If unable to read config file

        """
        config = configparser.ConfigParser()
        with open(path, 'r') as configfile:
            config.read_file(configfile)

            if config.has_section("CLASSICAL"):
                if config.has_option("CLASSICAL", "MAX_STRATEGY_COUNT"):
                    self.MAX_STRATEGY_COUNT = config.getint("CLASSICAL", "MAX_STRATEGY_COUNT")
                if config.has_option("CLASSICAL", "ENUMERATION_CHUNK"):
                    self.ENUMERATION_CHUNK = config.getint("CLASSICAL", "ENUMERATION_CHUNK")

            if config.has_section("NPA"):
                if config.has_option("NPA", "DEFAULT_LEVEL"):
                    self.NPA_DEFAULT_LEVEL = config.getint("NPA", "DEFAULT_LEVEL")
                if config.has_option("NPA", "DEFAULT_BASIS"):
                    self.NPA_DEFAULT_BASIS = config.get("NPA", "DEFAULT_BASIS")
                if config.has_option("NPA", "FORCE_COMPLEX"):
                    self.NPA_FORCE_COMPLEX = config.getboolean("NPA", "FORCE_COMPLEX")
                if config.has_option("NPA", "MAX_MATRIX_SIDE"):
                    self.NPA_MAX_MATRIX_SIDE = config.getint("NPA", "MAX_MATRIX_SIDE")

            if config.has_section("SOLVERS"):
                if config.has_option("SOLVERS", "LP_TOLERANCE"):
                    self.LP_TOLERANCE = config.getfloat("SOLVERS", "LP_TOLERANCE")
                if config.has_option("SOLVERS", "SDP_TOLERANCE"):
                    self.SDP_TOLERANCE = config.getfloat("SOLVERS", "SDP_TOLERANCE")
                if config.has_option("SOLVERS", "SDP_MAX_ITERATIONS"):
                    self.SDP_MAX_ITERATIONS = config.getint("SOLVERS", "SDP_MAX_ITERATIONS")
                if config.has_option("SOLVERS", "SDP_OVER_RELAXATION"):
                    self.SDP_OVER_RELAXATION = config.getfloat("SOLVERS", "SDP_OVER_RELAXATION")
                if config.has_option("SOLVERS", "SDP_BOUND_MARGIN"):
                    self.SDP_BOUND_MARGIN = config.getfloat("SOLVERS", "SDP_BOUND_MARGIN")

            if config.has_section("SEESAW"):
                if config.has_option("SEESAW", "ITERATIONS"):
                    self.SEESAW_ITERATIONS = config.getint("SEESAW", "ITERATIONS")
                if config.has_option("SEESAW", "TOLERANCE"):
                    self.SEESAW_TOLERANCE = config.getfloat("SEESAW", "TOLERANCE")

            if config.has_section("HARDY"):
                if config.has_option("HARDY", "RESTARTS"):
                    self.HARDY_RESTARTS = config.getint("HARDY", "RESTARTS")

            if config.has_section("LOGGING"):
                if config.has_option("LOGGING", "LOG_INTERFACE"):
                    self.LOG_INTERFACE = config.get("LOGGING", "LOG_INTERFACE")
                if config.has_option("LOGGING", "LOG_FLUENT_HOST"):
                    self.LOG_FLUENT_HOST = config.get("LOGGING", "LOG_FLUENT_HOST")
                if config.has_option("LOGGING", "LOG_FLUENT_PORT"):
                    self.LOG_FLUENT_PORT = config.getint("LOGGING", "LOG_FLUENT_PORT")
                if config.has_option("LOGGING", "LOG_LEVEL"):
                    self.LOG_LEVEL = config.getint("LOGGING", "LOG_LEVEL")

        if os.environ.get(NPA_LEVEL_ENV):
            self.NPA_DEFAULT_LEVEL = int(os.environ[NPA_LEVEL_ENV])


global_config = Configuration()
