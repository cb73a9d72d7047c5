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
Tests: Classical value, no-signaling value and local membership test case
"""
import time
import unittest
from fractions import Fraction
import numpy as np
from nonlocal_core.common.config import Configuration
from nonlocal_core.common.exceptions import TooLargeScenarioError
from nonlocal_core.games import Party, Scenario, Game, Behavior, behavior_of_deterministic, iter_deterministic_strategies, \
    game_value, uniform_behavior, mix
from nonlocal_core.classical import classical_value, ns_value, local_membership, deterministic_vertices, \
    InLocal, Separated
from nonlocal_core.bell import local_bound, eval_functional
from nonlocal_core.quantum import strategy_behavior
from nonlocal_core.catalog import chsh_game, ghz_game, magic_square_game, xor_game, coloring_game, \
    chsh_strategy, GraphSpec
try:
    from .test_nonlocal_base import NonlocalTestCaseBase, brute_force_value, count_perfect_strategies
except ImportError:
    from test_nonlocal_base import NonlocalTestCaseBase, brute_force_value, count_perfect_strategies

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"


def pr_box(scenario):
    probs = np.zeros(scenario.shape)
    for x in range(2):
        for y in range(2):
            for a in range(2):
                probs[x, y, a, (a + x * y) % 2] = 0.5
    return Behavior(scenario, probs)


class ClassicalValueTestCase(NonlocalTestCaseBase):

    def test_chsh(self):

        game = chsh_game()
        start = time.time()
        value, witness = classical_value(game, config=self.config)
        self.assertLess(time.time() - start, 0.1)

        self.assertEqual(value, Fraction(3, 4))
        self.assertIsInstance(value, Fraction)
        self.assertEqual(game_value(game, behavior_of_deterministic(witness, game.scenario)), 0.75)

    def test_ghz(self):

        value, _ = classical_value(ghz_game(), config=self.config)
        self.assertEqual(value, Fraction(3, 4))
        self.assertEqual(value, brute_force_value(ghz_game()))

    def test_magic_square(self):

        game = magic_square_game()
        value, _ = classical_value(game, config=self.config)

        self.assertEqual(value, Fraction(8, 9))
        self.assertEqual(count_perfect_strategies(game), 0)

    def test_xor_tables(self):

        self.assertEqual(classical_value(xor_game([[0, 0], [0, 0]]), config=self.config)[0], 1)
        self.assertEqual(classical_value(xor_game([[0, 1], [1, 0]]), config=self.config)[0], 1)

        rng = np.random.default_rng(5)
        for _ in range(5):
            game = xor_game(rng.integers(0, 2, size=(3, 2)).tolist())
            self.assertEqual(classical_value(game, config=self.config)[0], brute_force_value(game))

    def test_non_uniform_weights(self):

        pi = {(0, 0): Fraction(1, 2), (0, 1): Fraction(1, 6), (1, 0): Fraction(1, 6), (1, 1): Fraction(1, 6)}
        game = xor_game([[0, 0], [0, 1]], pi=pi)
        self.assertEqual(classical_value(game, config=self.config)[0], Fraction(5, 6))

    def test_coloring_oracle(self):

        triangle = GraphSpec.complete(3)
        two = coloring_game(triangle, 2)

        self.assertEqual(classical_value(coloring_game(triangle, 3), config=self.config)[0], 1)
        self.assertEqual(classical_value(two, config=self.config)[0], brute_force_value(two))
        self.assertEqual(brute_force_value(two), Fraction(7, 9))

    def test_relabeling_invariance(self):

        rng = np.random.default_rng(8)
        for _ in range(5):
            scenario = Scenario([Party(range(2), range(3)), Party(range(3), range(2))])
            table = rng.integers(0, 2, size=scenario.shape).astype(bool)
            numerators = rng.integers(1, 5, size=(2, 3))
            pi = dict(((x, y), Fraction(int(numerators[x, y]), int(numerators.sum())))
                      for x in range(2) for y in range(3))

            px, py = rng.permutation(2), rng.permutation(3)
            alice = [rng.permutation(3) for _ in range(2)]
            bob = [rng.permutation(2) for _ in range(3)]
            relabeled = np.zeros(scenario.shape, dtype=bool)
            relabeled_pi = {}
            for x in range(2):
                for y in range(3):
                    relabeled_pi[(int(px[x]), int(py[y]))] = pi[(x, y)]
                    for a in range(3):
                        for b in range(2):
                            relabeled[px[x], py[y], alice[x][a], bob[y][b]] = table[x, y, a, b]

            value = classical_value(Game(scenario, pi, table), config=self.config)[0]
            self.assertEqual(classical_value(Game(scenario, relabeled_pi, relabeled), config=self.config)[0],
                             value)
            self.assertEqual(value, brute_force_value(Game(scenario, pi, table)))

    def test_cap(self):

        config = Configuration()
        config.LOG_LEVEL = 1
        config.MAX_STRATEGY_COUNT = 1000
        self.assertRaises(TooLargeScenarioError, classical_value, magic_square_game(), config)


class NoSignalingValueTestCase(NonlocalTestCaseBase):

    def test_chsh(self):

        start = time.time()
        value = ns_value(chsh_game(), config=self.config)
        self.assertLess(time.time() - start, 1.0)
        self.assertAlmostEqual(value, 1.0, delta=1e-8)

    def test_pseudo_telepathy_games(self):

        self.assertAlmostEqual(ns_value(ghz_game(), config=self.config), 1.0, delta=1e-8)
        self.assertAlmostEqual(ns_value(magic_square_game(), config=self.config), 1.0, delta=1e-8)

    def test_ns_bounds_classical(self):

        rng = np.random.default_rng(6)
        for _ in range(5):
            game = xor_game(rng.integers(0, 2, size=(2, 3)).tolist())
            classical = classical_value(game, config=self.config)[0]
            self.assertGreaterEqual(ns_value(game, config=self.config), float(classical) - 1e-9)

    def test_triangle_two_colors(self):

        # the no-signaling box with P(a != b) = 1 on edges and P(a = b) = 1 on self pairs
        self.assertAlmostEqual(ns_value(coloring_game(GraphSpec.complete(3), 2), config=self.config), 1.0,
                               delta=1e-8)


class LocalMembershipTestCase(NonlocalTestCaseBase):

    def test_tsirelson_behavior_is_separated(self):

        game = chsh_game()
        behavior = strategy_behavior(chsh_strategy(), game.scenario)
        result = local_membership(behavior, game.scenario, config=self.config)

        self.assertIsInstance(result, Separated)
        self.assertFalse(result.is_local)
        self.assertAlmostEqual(result.local_bound, 2.0, delta=1e-6)
        self.assertAlmostEqual(result.behavior_value, 2.0 * np.sqrt(2.0), delta=1e-6)
        self.assertAlmostEqual(result.visibility, 1.0 / np.sqrt(2.0), delta=1e-6)
        self.assertAlmostEqual(local_bound(result.functional, config=self.config)[0], 2.0, delta=1e-6)
        self.assertAlmostEqual(eval_functional(result.functional, uniform_behavior(game.scenario)), 0.0,
                               delta=1e-9)

    def test_pr_box(self):

        scenario = chsh_game().scenario
        result = local_membership(pr_box(scenario), scenario, config=self.config)

        self.assertIsInstance(result, Separated)
        self.assertAlmostEqual(result.visibility, 0.5, delta=1e-8)
        self.assertAlmostEqual(result.behavior_value, 4.0, delta=1e-6)

    def test_deterministic_behaviors_are_local(self):

        scenario = chsh_game().scenario
        for strategy in iter_deterministic_strategies(scenario):
            behavior = behavior_of_deterministic(strategy, scenario)
            result = local_membership(behavior, scenario, config=self.config)
            self.assertIsInstance(result, InLocal)
            self.assertArrayAlmostEqual(result.model.behavior(scenario).probs, behavior.probs, 1e-9)

    def test_mixtures_are_local(self):

        scenario = chsh_game().scenario
        behavior = mix(pr_box(scenario), uniform_behavior(scenario), 0.4)
        result = local_membership(behavior, scenario, config=self.config)

        self.assertTrue(result.is_local)
        self.assertArrayAlmostEqual(result.model.behavior(scenario).probs, behavior.probs, 1e-7)

    def test_signaling_box_is_separated(self):

        # Alice answers Bob's question, Bob always answers 0
        scenario = chsh_game().scenario
        probs = np.zeros(scenario.shape)
        for x in range(2):
            for y in range(2):
                probs[x, y, y, 0] = 1.0
        behavior = Behavior(scenario, probs)
        result = local_membership(behavior, scenario, config=self.config)

        self.assertIsInstance(result, Separated)
        self.assertEqual(result.visibility, 0.0)
        self.assertAlmostEqual(result.local_bound, 0.0, delta=1e-9)
        self.assertGreater(result.behavior_value, result.local_bound + 0.1)
        self.assertAlmostEqual(local_bound(result.functional, config=self.config)[0], result.local_bound,
                               delta=1e-12)
        self.assertAlmostEqual(eval_functional(result.functional, behavior), result.behavior_value, delta=1e-12)
        self.assertAlmostEqual(eval_functional(result.functional, uniform_behavior(scenario)), 0.0, delta=1e-9)

    def test_vertices(self):

        vertices, strategies = deterministic_vertices(chsh_game().scenario, config=self.config)
        self.assertEqual(vertices.shape, (16, 16))
        self.assertEqual(len(strategies), 16)
        self.assertArrayAlmostEqual(vertices.sum(axis=0), np.full(16, 4.0), 0.0)


if __name__ == '__main__':
    unittest.main()
