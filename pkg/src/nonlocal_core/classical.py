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
Classical value by exhaustive enumeration, no-signaling value by linear
programming and membership in the local polytope
"""
from fractions import Fraction
import numpy as np
from .common.config import global_config
from .common.exceptions import SolverError
from .common.messages_logger import MessageLogger
from .games import LocalModel, maximize_over_deterministic, \
    iter_deterministic_strategies, check_strategy_count, uniform_behavior
from .bell import BellFunctional, fourier_form, correlator_functional, eval_functional, local_bound
from .solvers import LinearProgram, lp_solve, OPTIMAL

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

RECONSTRUCTION_TOLERANCE = 1e-7
SEPARATION_MARGIN = 1e-9
# Marginal terms below this are numerical noise of the dual projection
FORM_TOLERANCE = 1e-9
# Relative singular value cutoff for the span of the deterministic behaviors
SPAN_RCOND = 1e-10


def classical_value(game, config=None):
    """The exact classical value and a strategy attaining it

    Shared randomness can not exceed the best deterministic strategy, so
    the maximum over deterministic strategy tuples is the classical value.
    The strategies are scored with integer weights on the common
    denominator of pi.

    Args:
        game (Game): The game
        config (Configuration): The enumeration cap and chunk size

    Returns:
        tuple: (Fraction, DeterministicStrategy)

    Raises:
        TooLargeScenarioError

    """
    if config is None:
        config = global_config
    log = MessageLogger(config=config, component="classical_value")

    table, denominator = game.integer_weight_table()
    best, witness = maximize_over_deterministic(table, game.scenario, config=config)
    value = Fraction(best, denominator)
    log.info("Classical value of %s is %s" % (str(game.name), str(value)))
    return value, witness


def _no_signaling_constraints(scenario):
    """Normalization rows and the marginal equalities against question 0 of
    every party, over the flattened probability table
    """
    n = scenario.n_parties
    index = np.arange(int(np.prod(scenario.shape))).reshape(scenario.shape)
    rows = []
    rhs = []

    for q in scenario.joint_questions():
        row = np.zeros(index.size)
        row[index[q].ravel()] = 1.0
        rows.append(row)
        rhs.append(1.0)

    for p in range(n):
        for q in scenario.joint_questions():
            if q[p] == 0:
                continue
            reference = q[:p] + (0,) + q[p + 1:]
            here = np.moveaxis(index[q], p, 0)
            there = np.moveaxis(index[reference], p, 0)
            for rest in np.ndindex(here.shape[1:]):
                row = np.zeros(index.size)
                row[here[(slice(None),) + rest]] += 1.0
                row[there[(slice(None),) + rest]] -= 1.0
                rows.append(row)
                rhs.append(0.0)

    return np.array(rows), np.array(rhs)


def ns_value(game, config=None):
    """The no-signaling value, the maximum winning probability over all
    normalized, nonnegative and no-signaling behaviors

    Raises:
        SolverError

    """
    if config is None:
        config = global_config
    log = MessageLogger(config=config, component="ns_value")

    a_eq, b_eq = _no_signaling_constraints(game.scenario)
    result = lp_solve(LinearProgram(game.weight_table().ravel(), a_eq, b_eq), config=config)
    if result.status != OPTIMAL:
        raise SolverError("The no-signaling linear program of %s ended with status %s"
                          % (str(game.name), result.status), status=result.status)
    value = min(max(result.value, 0.0), 1.0)
    log.info("No-signaling value of %s is %.12g" % (str(game.name), value))
    return value


class MembershipResult(object):
    is_local = None


class InLocal(MembershipResult):
    """The behavior is a mixture of deterministic strategies"""
    is_local = True

    def __init__(self, model):
        self.model = model

    def __repr__(self):
        return "InLocal(components=%i)" % len(self.model.components)


class Separated(MembershipResult):
    """A Bell functional whose deterministic maximum local_bound is exceeded
    by the behavior. visibility is the largest weight v for which
    v P + (1 - v) uniform is still local.
    """
    is_local = False

    def __init__(self, functional, local_bound, behavior_value, visibility=None):
        self.functional = functional
        self.local_bound = local_bound
        self.behavior_value = behavior_value
        self.visibility = visibility

    def __repr__(self):
        return "Separated(local_bound=%.12g, behavior_value=%.12g)" % (self.local_bound, self.behavior_value)


def deterministic_vertices(scenario, config=None):
    """All deterministic behaviors as columns of a matrix over the flattened
    probability table, and the strategies in column order
    """
    if config is None:
        config = global_config
    count = check_strategy_count(scenario, config.MAX_STRATEGY_COUNT)
    index = np.arange(int(np.prod(scenario.shape))).reshape(scenario.shape)
    questions = list(scenario.joint_questions())
    vertices = np.zeros((index.size, count))
    strategies = []
    for column, strategy in enumerate(iter_deterministic_strategies(scenario)):
        for q in questions:
            vertices[index[q + strategy.answer(q)], column] = 1.0
        strategies.append(strategy)
    return vertices, strategies


def _canonical_functional(f, vertices, scenario):
    """Project onto the span of the deterministic behaviors, shift to vanish
    on the uniform behavior and scale to unit max |beta| (or unit local
    bound if there is no correlator form)
    """
    f = f / np.abs(f).max()
    coefficients = np.linalg.lstsq(vertices, f, rcond=SPAN_RCOND)[0]
    f = vertices @ coefficients
    uniform = uniform_behavior(scenario).probs.ravel()
    normalization = np.ones_like(f) / scenario.joint_question_count
    f = f - float(f @ uniform) * normalization
    alpha = f.reshape(scenario.shape)

    form = fourier_form(scenario, alpha, tolerance=FORM_TOLERANCE)
    if form is not None:
        scale = 1.0 / np.abs(form.beta).max()
        return correlator_functional(scenario, form.beta * scale, form.constant * scale,
                                     name="separating")

    functional = BellFunctional(scenario, alpha, name="separating")
    bound = local_bound(functional)[0]
    return BellFunctional(scenario, alpha / bound, name="separating")


def local_membership(behavior, scenario, config=None):
    """Decide if the behavior is a mixture of deterministic strategies

    A feasibility program over the deterministic vertices yields the mixture.
    A behavior outside the span of the vertices, e.g. a signaling one, is
    separated by its component orthogonal to that span with visibility 0.
    Otherwise the program max v s.t. sum_d lambda_d d - v (P - U) = U is
    solved, U the uniform behavior; the negated equality duals of its
    terminal basis separate P from every deterministic behavior.

    Returns:
        MembershipResult: InLocal or Separated

    Raises:
        TooLargeScenarioError, SolverError

    """
    if config is None:
        config = global_config
    log = MessageLogger(config=config, component="local_membership")

    scenario.check_same(behavior.scenario)
    vertices, strategies = deterministic_vertices(scenario, config=config)
    target = behavior.probs.ravel()
    count = vertices.shape[1]

    a_eq = np.vstack([vertices, np.ones((1, count))])
    b_eq = np.concatenate([target, [1.0]])
    result = lp_solve(LinearProgram(np.zeros(count), a_eq, b_eq), config=config)

    if result.status == OPTIMAL:
        weights = result.primal
        components = [(float(w), strategies[i]) for i, w in enumerate(weights) if w > 1e-12]
        if len(components) == 1:
            components = [(Fraction(1), components[0][1])]
        model = LocalModel(components)
        deviation = float(np.abs(model.behavior(scenario).probs - behavior.probs).max())
        if deviation > RECONSTRUCTION_TOLERANCE:
            raise SolverError("The local model deviates by %g from the behavior" % deviation)
        log.info("Behavior is local, mixture of %i deterministic strategies" % len(components))
        return InLocal(model)

    uniform = uniform_behavior(scenario).probs.ravel()
    residual = target - vertices @ np.linalg.lstsq(vertices, target, rcond=SPAN_RCOND)[0]
    if float(np.abs(residual).max()) > RECONSTRUCTION_TOLERANCE:
        # Off the no-signaling subspace, the orthogonal part vanishes on
        # every deterministic behavior
        functional = BellFunctional(scenario, (residual / np.abs(residual).max()).reshape(scenario.shape),
                                    name="separating")
        bound = local_bound(functional, config=config)[0]
        value = eval_functional(functional, behavior)
        log.info("Behavior leaves the span of the local polytope, Bell value %.12g > %.12g"
                 % (value, bound))
        return Separated(functional, bound, value, visibility=0.0)

    direction = (target - uniform).reshape(-1, 1)
    a_eq = np.hstack([vertices, -direction])
    objective = np.concatenate([np.zeros(count), [1.0]])
    result = lp_solve(LinearProgram(objective, a_eq, uniform), config=config)
    if result.status != OPTIMAL:
        raise SolverError("The visibility program ended with status %s" % result.status,
                          status=result.status)

    functional = _canonical_functional(-result.dual, vertices, scenario)
    bound = local_bound(functional, config=config)[0]
    value = eval_functional(functional, behavior)
    if value <= bound + SEPARATION_MARGIN:
        raise SolverError("The separating functional is inconclusive: behavior value %.12g, "
                          "local bound %.12g" % (value, bound))
    log.info("Behavior is nonlocal, visibility %.12g, Bell value %.12g > %.12g"
             % (result.value, value, bound))
    return Separated(functional, bound, value, visibility=result.value)
