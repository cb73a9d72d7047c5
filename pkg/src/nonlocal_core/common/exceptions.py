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
Exceptions that should be used in case an error occurs that is related to
the nonlocal core functionality
"""

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"


class NonlocalCoreError(Exception):
    """Base class of all nonlocal core errors, the message is prefixed
    with the name of the raised class
    """
    def __init__(self, message):
        message = "%s:  %s" % (str(self.__class__.__name__), message)
        Exception.__init__(self, message)


class InvalidScenarioError(NonlocalCoreError):
    """Raise this exception in case a scenario violates its invariants
    """
    pass


class InvalidGameError(NonlocalCoreError):
    """Raise this exception in case the input distribution or the predicate
    of a game is malformed
    """
    pass


class InvalidBehaviorError(NonlocalCoreError):
    """Raise this exception in case a conditional probability table is
    not normalized or has negative entries
    """
    pass


class ScenarioMismatchError(NonlocalCoreError):
    """Raise this exception in case two objects are defined over different
    scenarios. The message names the mismatched party and alphabet.
    """
    pass


class UnsupportedScenarioError(NonlocalCoreError):
    """Raise this exception in case an operation requires a scenario
    structure (binary answers, two parties, ...) that is not present
    """
    pass


class DomainError(NonlocalCoreError):
    """Raise this exception in case a numerical argument is outside of
    its domain
    """
    pass


class TooLargeScenarioError(NonlocalCoreError):
    """Raise this exception in case an enumeration or a relaxation exceeds
    its configured cap
    """
    def __init__(self, message, count=None):
        self.count = count
        NonlocalCoreError.__init__(self, message)


class DimensionMismatchError(NonlocalCoreError):
    """Raise this exception in case matrix or state dimensions do not fit
    """
    pass


class NonHermitianError(NonlocalCoreError):
    """Raise this exception in case a Hermitian (or symmetric) matrix
    is required
    """
    pass


class InvalidStrategyError(NonlocalCoreError):
    """Raise this exception in case a quantum strategy or measurement
    violates its invariants
    """
    pass


class InputFormatError(NonlocalCoreError):
    """Raise this exception in case a JSON document can not be converted
    into a game, behavior, strategy, functional or graph
    """
    pass


class SolverError(NonlocalCoreError):
    """Raise this exception in case a LP or SDP solver fails,
    the status and residuals are attached for diagnostics
    """
    def __init__(self, message, status=None, residuals=None):
        self.status = status
        self.residuals = residuals
        NonlocalCoreError.__init__(self, message)
