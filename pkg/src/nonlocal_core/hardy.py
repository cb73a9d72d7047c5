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
Hardy's paradox as a two qubit constraint problem

Both parties have two settings with outcomes 0 and 1. The local reasoning
P(0,1|0,1) = 0, P(1,0|1,0) = 0 and P(0,0|1,1) = 0 forbids the event
(0,0) on settings (0,0); a quantum strategy that satisfies the three zero
constraints and still produces that event exhibits the paradox.
"""
import numpy as np
from scipy.optimize import brentq, minimize
from .common.config import global_config
from .common.exceptions import DimensionMismatchError
from .common.messages_logger import MessageLogger
from .games import Party, Scenario
from .linalg import StateVector
from .quantum import Measurement, QuantumStrategy, strategy_behavior

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

# The largest paradox probability, reached for a = b in the family below
HARDY_CEILING = (5.0 * np.sqrt(5.0) - 11.0) / 2.0

# (question pair, answer pair) of the zero constraints and the target event
ZERO_CONSTRAINTS = (((0, 1), (0, 1)), ((1, 0), (1, 0)), ((1, 1), (0, 0)))
TARGET_EVENT = ((0, 0), (0, 0))


def hardy_scenario():
    return Scenario([Party(["0", "1"], ["0", "1"]), Party(["0", "1"], ["0", "1"])])


class HardyCheck(object):

    def __init__(self, constraint_residuals, paradox_probability):
        self.constraint_residuals = tuple(constraint_residuals)
        self.paradox_probability = paradox_probability

    @property
    def max_residual(self):
        return max(self.constraint_residuals)

    def __repr__(self):
        return "HardyCheck(residuals=%s, paradox_probability=%.12g)" % (str(self.constraint_residuals),
                                                                        self.paradox_probability)


def hardy_check(state, measurements):
    """The three zero constraint probabilities and the target probability

    Args:
        state (StateVector): A two qubit state
        measurements (list): measurements[p][x], two parties with two
                             projective two outcome measurements each

    Returns:
        HardyCheck

    """
    if tuple(state.party_dims) != (2, 2):
        raise DimensionMismatchError("Hardy's test needs a two qubit state, got dimensions %s"
                                     % str(state.party_dims))
    behavior = strategy_behavior(QuantumStrategy(state, measurements), hardy_scenario())
    residuals = [behavior(q, a) for q, a in ZERO_CONSTRAINTS]
    return HardyCheck(residuals, behavior(*TARGET_EVENT))


def _projective_pair(vector):
    v = np.asarray(vector, dtype=complex).reshape(2, 1)
    v = v / np.linalg.norm(v)
    projector = v @ v.conj().T
    return Measurement([projector, np.eye(2) - projector])


def hardy_strategy(a, b, c):
    """The strategy of the family a|01> + b|10> + c|11>

    Setting 1 measures the computational basis of both qubits. Setting 0
    has outcome 0 on c|0> - a|1> for the first party and on c|0> - b|1>
    for the second, which makes the three zero constraints exact.
    """
    state = StateVector.normalized([0.0, a, b, c], (2, 2))
    _, a, b, c = state.amplitudes.real
    computational = Measurement([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    first = [_projective_pair([c, -a]), computational]
    second = [_projective_pair([c, -b]), computational]
    return QuantumStrategy(state, [first, second])


def family_probability(a, b, c):
    """a^2 b^2 c^2 / ((a^2 + c^2)(b^2 + c^2)) for a normalized (a, b, c)"""
    norm = a * a + b * b + c * c
    a2, b2, c2 = a * a / norm, b * b / norm, c * c / norm
    denominator = (a2 + c2) * (b2 + c2)
    if denominator == 0.0:
        return 0.0
    return a2 * b2 * c2 / denominator


def _amplitudes(theta, phi):
    return np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)


class HardyResult(object):

    def __init__(self, best_probability, strategy, amplitudes, check):
        self.best_probability = best_probability
        self.strategy = strategy
        self.amplitudes = amplitudes
        self.check = check

    def __repr__(self):
        return "HardyResult(best_probability=%.12g)" % self.best_probability


def hardy_configuration(target=1.0 / 16.0):
    """The symmetric member a = b of the family with paradox probability
    target, on the branch of the smaller a

    With s = a^2 the probability is s^2 (1 - 2 s) / (1 - s)^2, which
    increases on (0, s*) with s* the maximizer.
    """
    def probability(s):
        return s * s * (1.0 - 2.0 * s) / (1.0 - s) ** 2

    peak = minimize(lambda v: -probability(v[0]), [0.3], method="Nelder-Mead",
                    options={"xatol": 1e-12, "fatol": 1e-15}).x[0]
    s = brentq(lambda v: probability(v) - target, 1e-12, peak, xtol=1e-15)
    a = np.sqrt(s)
    c = np.sqrt(1.0 - 2.0 * s)
    return hardy_strategy(a, a, c)


def hardy_optimize(seed=0, restarts=None, config=None):
    """Maximize the paradox probability over the exact family

    Each restart draws the two spherical angles of (a, b, c) and refines
    with Nelder-Mead. Zero restarts return the 1/16 configuration.

    Returns:
        HardyResult

    """
    if config is None:
        config = global_config
    if restarts is None:
        restarts = config.HARDY_RESTARTS
    log = MessageLogger(config=config, component="hardy_optimize")

    if restarts == 0:
        strategy = hardy_configuration()
        check = hardy_check(strategy.state, strategy.measurements)
        amplitudes = tuple(float(v) for v in strategy.state.amplitudes.real[1:])
        return HardyResult(check.paradox_probability, strategy, amplitudes, check)

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        start = rng.uniform(0.0, np.pi / 2.0, size=2)
        result = minimize(lambda v: -family_probability(*_amplitudes(*v)), start, method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000})
        value = -float(result.fun)
        if best is None or value > best[0]:
            best = (value, result.x)

    amplitudes = tuple(float(v) for v in _amplitudes(*best[1]))
    strategy = hardy_strategy(*amplitudes)
    check = hardy_check(strategy.state, strategy.measurements)
    log.info("Hardy search over %i restarts reached %.12g, zero constraints %g"
             % (restarts, check.paradox_probability, check.max_residual))
    return HardyResult(check.paradox_probability, strategy, amplitudes, check)
