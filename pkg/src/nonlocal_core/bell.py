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
Bell functionals in full and in correlator form
"""
import itertools
import numpy as np
from .common.config import global_config
from .common.exceptions import UnsupportedScenarioError, DimensionMismatchError
from .games import Party, Scenario, answer_sign_tensor, game_value, maximize_over_deterministic, \
    iter_deterministic_strategies, random_behavior, strategy_count, expand_question_axes

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

MARGINAL_TOLERANCE = 1e-12
AFFINE_TOLERANCE = 1e-9
# Random behaviors an affine fit is verified on
AFFINE_CHECK_BEHAVIORS = 100
# Scenarios with more deterministic points are fitted on random behaviors
MAX_FIT_POINTS = 65536


def binary_scenario(n_parties, questions=2):
    return Scenario([Party([str(x) for x in range(questions)], ["0", "1"]) for _ in range(n_parties)])


class CorrelatorForm(object):
    """f(P) = constant + sum_q beta_q E_q

    offsets holds the per question share of the constant, so that
    expand() reproduces the full coefficient tensor.
    """

    def __init__(self, beta, offsets):
        self.beta = np.asarray(beta, dtype=float)
        self.offsets = np.asarray(offsets, dtype=float)

    @property
    def constant(self):
        return float(self.offsets.sum())

    def expand(self):
        n = self.beta.ndim
        return expand_question_axes(self.offsets, n) + \
            expand_question_axes(self.beta, n) * answer_sign_tensor(n)


def fourier_form(scenario, alpha, tolerance=MARGINAL_TOLERANCE):
    """Split alpha into parity characters, None if a proper nonempty subset
    of the parties carries weight
    """
    if not scenario.is_binary:
        return None
    n = scenario.n_parties
    answer_axes = tuple(range(n, 2 * n))
    for size in range(1, n):
        for subset in itertools.combinations(range(n), size):
            character = np.ones((2,) * n)
            for a in itertools.product((0, 1), repeat=n):
                character[a] = (-1) ** sum(a[i] for i in subset)
            weight = (alpha * character).sum(axis=answer_axes) / 2 ** n
            if np.abs(weight).max() > tolerance:
                return None
    offsets = alpha.sum(axis=answer_axes) / 2 ** n
    beta = (alpha * answer_sign_tensor(n)).sum(axis=answer_axes) / 2 ** n
    return CorrelatorForm(beta, offsets)


class BellFunctional(object):
    """A linear functional B(P) = sum alpha[q + a] P(a|q)

    Args:
        scenario (Scenario): The alphabets
        alpha (array): Coefficients with shape scenario.shape
        game (Game): If given, the relation omega = offset + scale B is
                     fitted and verified
        name (str): An optional identifier

    """

    def __init__(self, scenario, alpha, game=None, name=None, config=None):

        alpha = np.array(alpha, dtype=float)
        if alpha.shape != scenario.shape:
            raise DimensionMismatchError("The coefficient tensor has shape %s, expected %s"
                                         % (str(alpha.shape), str(scenario.shape)))
        alpha.setflags(write=False)
        self.scenario = scenario
        self.alpha = alpha
        self.name = name
        self.correlator_form = fourier_form(scenario, alpha)
        self.affine_to_game = None
        if game is not None:
            self.affine_to_game = fit_affine_to_game(self, game, config=config)

    def __call__(self, behavior):
        return eval_functional(self, behavior)

    def __repr__(self):
        return "BellFunctional(name=%s, shape=%s)" % (str(self.name), str(self.alpha.shape))


def eval_functional(f, p):
    f.scenario.check_same(p.scenario)
    return float(np.sum(f.alpha * p.probs))


def correlator_form(f):
    """The correlator form of a functional

    Raises:
        UnsupportedScenarioError: For non binary answers or functionals with
                                  marginal terms

    """
    if not f.scenario.is_binary:
        raise UnsupportedScenarioError("Correlator forms require binary answer alphabets, got %s"
                                       % str(f.scenario.answer_shape))
    if f.correlator_form is None:
        raise UnsupportedScenarioError("The functional %s has marginal terms and no correlator form"
                                       % str(f.name))
    return f.correlator_form


def _deterministic_scores(table, scenario):
    for strategy in iter_deterministic_strategies(scenario):
        yield sum(table[q + strategy.answer(q)] for q in scenario.joint_questions())


def fit_affine_to_game(f, game, config=None):
    """Fit omega(G; P) = offset + scale B(P) and verify it

    The fit uses the deterministic behaviors (or seeded random behaviors
    for large scenarios). The relation is verified on the fit points and
    on random, generally signaling, behaviors.

    Returns:
        tuple: (offset, scale) or None if omega is no affine function of B

    """
    f.scenario.check_same(game.scenario)
    weights = game.weight_table()
    rng = np.random.default_rng(0)

    if strategy_count(f.scenario) <= MAX_FIT_POINTS:
        b_values = np.array(list(_deterministic_scores(f.alpha, f.scenario)))
        w_values = np.array(list(_deterministic_scores(weights, f.scenario)))
    else:
        points = [random_behavior(f.scenario, rng) for _ in range(256)]
        b_values = np.array([eval_functional(f, p) for p in points])
        w_values = np.array([game_value(game, p) for p in points])

    design = np.column_stack([np.ones_like(b_values), b_values])
    (offset, scale), _, rank, _ = np.linalg.lstsq(design, w_values, rcond=None)
    if rank < 2:
        # B is constant on the fit points, omega must be constant as well
        scale = 0.0
        offset = float(w_values.mean())

    if np.abs(offset + scale * b_values - w_values).max() > AFFINE_TOLERANCE:
        return None
    for _ in range(AFFINE_CHECK_BEHAVIORS):
        p = random_behavior(f.scenario, rng)
        if abs(offset + scale * eval_functional(f, p) - game_value(game, p)) > AFFINE_TOLERANCE:
            return None
    return float(offset), float(scale)


def functional_of_game(game, config=None):
    """The functional with alpha = pi V, its value equals the game value"""
    return BellFunctional(game.scenario, game.weight_table(), game=game,
                          name="omega(%s)" % str(game.name), config=config)


def correlator_functional(scenario, beta, constant=0.0, game=None, name=None, config=None):
    """constant + sum_q beta_q E_q as full functional, the constant is spread
    evenly over the joint questions
    """
    if not scenario.is_binary:
        raise UnsupportedScenarioError("Correlator functionals require binary answer alphabets, got %s"
                                       % str(scenario.answer_shape))
    beta = np.asarray(beta, dtype=float)
    if beta.shape != scenario.question_shape:
        raise DimensionMismatchError("The correlator coefficients have shape %s, expected %s"
                                     % (str(beta.shape), str(scenario.question_shape)))
    offsets = np.full(scenario.question_shape, float(constant) / scenario.joint_question_count)
    alpha = CorrelatorForm(beta, offsets).expand()
    return BellFunctional(scenario, alpha, game=game, name=name, config=config)


def chsh_functional(scenario=None, game=None, config=None):
    """S = E_00 + E_01 + E_10 - E_11"""
    if scenario is None:
        scenario = game.scenario if game is not None else binary_scenario(2)
    return correlator_functional(scenario, [[1.0, 1.0], [1.0, -1.0]], game=game, name="chsh",
                                 config=config)


def mermin_functional(scenario=None, game=None, config=None):
    """M = <XXX> - <XYY> - <YXY> - <YYX>, question 0 measures X, 1 measures Y"""
    if scenario is None:
        scenario = game.scenario if game is not None else binary_scenario(3)
    beta = np.zeros((2, 2, 2))
    beta[0, 0, 0] = 1.0
    beta[0, 1, 1] = beta[1, 0, 1] = beta[1, 1, 0] = -1.0
    return correlator_functional(scenario, beta, game=game, name="mermin", config=config)


def local_bound(f, config=None):
    """The maximum of the functional over deterministic behaviors

    Returns:
        tuple: (bound, DeterministicStrategy)

    """
    if config is None:
        config = global_config
    return maximize_over_deterministic(f.alpha, f.scenario, config=config)
