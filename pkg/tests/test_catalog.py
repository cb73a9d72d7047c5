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
Tests: Game catalog test case
"""
import itertools
import unittest
from fractions import Fraction
from nonlocal_core.common.exceptions import InvalidGameError, InvalidScenarioError, DomainError
from nonlocal_core.classical import classical_value
from nonlocal_core.quantum import magic_square_strategy, winning_probability
from nonlocal_core.catalog import CATALOG, GraphSpec, xor_game, chsh_game, ghz_game, magic_square_game, \
    coloring_game, coloring_support, coloring_proviso, chromatic_numbers, chsh_strategy, ghz_strategy, \
    parity_obstruction, perfect_grids, pseudo_telepathy
try:
    from .test_nonlocal_base import NonlocalTestCaseBase
except ImportError:
    from test_nonlocal_base import NonlocalTestCaseBase

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"


class XorGameTestCase(NonlocalTestCaseBase):

    def test_chsh_predicate(self):

        game = chsh_game()
        for (x, y) in game.scenario.joint_questions():
            for (a, b) in game.scenario.joint_answers():
                self.assertEqual(bool(game.predicate[x, y, a, b]), (a ^ b) == (x & y))
        self.assertEqual(game.pi[(1, 1)], Fraction(1, 4))

    def test_invalid_tables(self):

        self.assertRaises(InvalidGameError, xor_game, [[0, 2]])
        self.assertRaises(InvalidGameError, xor_game, [])
        self.assertRaises(InvalidGameError, xor_game, [0, 1])


class GhzGameTestCase(NonlocalTestCaseBase):

    def test_truth_table(self):

        game = ghz_game()
        self.assertEqual(sorted(game.promise), [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
        for q in game.promise:
            for a in game.scenario.joint_answers():
                expected = sum(a) % 2 == int(q[0] or q[1] or q[2])
                self.assertEqual(bool(game.predicate[q + a]), expected)


class MagicSquareTestCase(NonlocalTestCaseBase):

    def test_alphabets(self):

        alice, bob = magic_square_game().scenario.parties
        self.assertEqual(alice.answers, ("000", "011", "101", "110"))
        self.assertEqual(bob.answers, ("001", "010", "100", "111"))

    def test_parity_obstruction(self):

        self.assertEqual(perfect_grids(), [])
        for bits in itertools.product((0, 1), repeat=9):
            rows, columns = parity_obstruction(bits)
            self.assertEqual(sum(rows) % 2, sum(columns) % 2)

    def test_pseudo_telepathy(self):

        result = pseudo_telepathy(magic_square_game(), magic_square_strategy(), config=self.config)
        self.assertTrue(result.is_pseudo_telepathic)
        self.assertEqual(result.classical, Fraction(8, 9))

        self.assertTrue(pseudo_telepathy(ghz_game(), ghz_strategy(), config=self.config).is_pseudo_telepathic)
        self.assertFalse(pseudo_telepathy(chsh_game(), chsh_strategy(), config=self.config).is_pseudo_telepathic)


class ColoringTestCase(NonlocalTestCaseBase):

    def test_graphs(self):

        self.assertEqual(len(GraphSpec.complete(4).edges), 6)
        self.assertEqual(len(GraphSpec.path(3).edges), 2)
        self.assertEqual(len(GraphSpec.cycle(5).edges), 5)
        self.assertTrue(GraphSpec.cycle(5).has_edge("0", "4"))
        self.assertFalse(GraphSpec.path(3).has_edge("0", "2"))

    def test_invalid_graphs(self):

        self.assertRaises(InvalidScenarioError, GraphSpec, ["a", "a"], [])
        self.assertRaises(InvalidScenarioError, GraphSpec, ["a"], [("a", "a")])
        self.assertRaises(InvalidScenarioError, GraphSpec, ["a"], [("a", "b")])
        self.assertRaises(InvalidScenarioError, GraphSpec, ["a", "b"], [("a", "b"), ("b", "a")])

    def test_single_edge(self):

        game = coloring_game(GraphSpec.path(2), 1)
        self.assertEqual(classical_value(game, config=self.config)[0], Fraction(1, 2))
        self.assertEqual(classical_value(coloring_game(GraphSpec.path(2), 2), config=self.config)[0], 1)

    def test_support(self):

        support = coloring_support(GraphSpec.path(3))
        self.assertEqual(support, [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)])
        game = coloring_game(GraphSpec.path(3), 2)
        self.assertEqual(game.pi[(1, 2)], Fraction(1, 7))
        self.assertNotIn((0, 2), game.pi)

    def test_proviso(self):

        graph = GraphSpec.path(2)
        self.assertTrue(coloring_proviso(coloring_game(graph, 2), graph))
        partial = coloring_game(graph, 2, pi={("0", "1"): Fraction(1)})
        self.assertFalse(coloring_proviso(partial, graph))
        self.assertEqual(classical_value(coloring_game(graph, 1, pi={("0", "0"): Fraction(1)}),
                                         config=self.config)[0], 1)

    def test_invalid(self):

        self.assertRaises(DomainError, coloring_game, GraphSpec.path(2), 0)
        self.assertRaises(DomainError, coloring_game, GraphSpec.path(2), 1.5)
        self.assertRaises(InvalidGameError, coloring_game, GraphSpec([], []), 2)

    def test_chromatic_numbers(self):

        for graph, chi in [(GraphSpec.complete(3), 3), (GraphSpec.complete(4), 4), (GraphSpec.path(3), 2),
                           (GraphSpec.cycle(5), 3)]:
            result = chromatic_numbers(graph, config=self.config)
            self.assertEqual(result.chi, chi)
            self.assertLessEqual(result.chi_q_upper, result.chi)
            self.assertEqual(result.level, 1)

        self.assertRaises(DomainError, chromatic_numbers, GraphSpec.complete(3), 2, config=self.config)


class CatalogTestCase(NonlocalTestCaseBase):

    def test_entries(self):

        self.assertEqual(sorted(CATALOG), ["chsh", "coloring", "ghz", "magic_square"])
        self.assertEqual(CATALOG["coloring"].parameters, ["graph", "colors"])
        self.assertIsNone(CATALOG["coloring"].strategy)

        for name in ["chsh", "ghz", "magic_square"]:
            entry = CATALOG[name]
            game = entry.build()
            self.assertEqual(game.name, name)
            self.assertGreater(winning_probability(game, entry.strategy()), 0.85)


if __name__ == '__main__':
    unittest.main()
