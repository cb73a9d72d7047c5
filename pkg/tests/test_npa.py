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
Tests: NPA moment relaxation test case
"""
import unittest
import numpy as np
from nonlocal_core.common.config import Configuration
from nonlocal_core.common.exceptions import TooLargeScenarioError, DomainError, UnsupportedScenarioError, \
    InputFormatError
from nonlocal_core.npa import Symbol, IDENTITY, ZERO, PROJECTOR, DICHOTOMIC, canonicalize, adjoint, \
    word_label, parse_word, generators, monomial_index, build_problem, npa_bound, npa_functional_bound, \
    moment_matrix, dump_problem, load_problem
from nonlocal_core.bell import chsh_functional
from nonlocal_core.quantum import winning_probability
from nonlocal_core.catalog import chsh_game, ghz_game, magic_square_game, coloring_game, chsh_strategy, \
    ghz_strategy, GraphSpec
try:
    from .test_nonlocal_base import NonlocalTestCaseBase
except ImportError:
    from test_nonlocal_base import NonlocalTestCaseBase

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

TSIRELSON = (2.0 + np.sqrt(2.0)) / 4.0


class WordTestCase(unittest.TestCase):

    def test_commuting_parties(self):

        word = (Symbol(1, 0, 0), Symbol(0, 1, 0))
        self.assertEqual(canonicalize(word), (Symbol(0, 1, 0), Symbol(1, 0, 0)))

    def test_projector_rules(self):

        a0 = Symbol(0, 0, 0)
        a1 = Symbol(0, 0, 1)
        b = Symbol(0, 1, 0)

        self.assertEqual(canonicalize((a0, a0)), (a0,))
        self.assertIs(canonicalize((a0, a1)), ZERO)
        self.assertEqual(canonicalize((a0, b, a0)), (a0, b, a0))
        self.assertEqual(canonicalize(()), IDENTITY)
        self.assertIs(canonicalize(ZERO), ZERO)

    def test_dichotomic_rules(self):

        a0 = Symbol(0, 0, 0)
        a1 = Symbol(0, 1, 0)

        self.assertEqual(canonicalize((a0, a0), DICHOTOMIC), IDENTITY)
        self.assertEqual(canonicalize((a0, a1, a1, a0), DICHOTOMIC), IDENTITY)
        self.assertEqual(canonicalize((a0, a1, Symbol(1, 0, 0), a1), DICHOTOMIC),
                         (a0, Symbol(1, 0, 0)))

    def test_adjoint(self):

        word = (Symbol(0, 0, 0), Symbol(0, 1, 1), Symbol(1, 0, 0))
        self.assertEqual(adjoint(word), (Symbol(0, 1, 1), Symbol(0, 0, 0), Symbol(1, 0, 0)))

    def test_labels(self):

        word = (Symbol(0, 1, 0), Symbol(1, 0, 1))
        self.assertEqual(word_label(word), "A(0|1) B(1|0)")
        self.assertEqual(word_label(word, DICHOTOMIC), "A(1) B(0)")
        self.assertEqual(word_label(IDENTITY), "I")
        self.assertEqual(word_label(ZERO), "0")
        self.assertEqual(parse_word("A(0|1) B(1|0)"), word)
        self.assertEqual(parse_word("A(1) B(0)"), (Symbol(0, 1, 0), Symbol(1, 0, 0)))
        self.assertRaises(InputFormatError, parse_word, "A[0]")


class IndexTestCase(unittest.TestCase):

    def test_chsh_sizes(self):

        scenario = chsh_game().scenario
        for basis in (PROJECTOR, DICHOTOMIC):
            self.assertEqual(len(monomial_index(scenario, 1, basis)), 5)
            self.assertEqual(len(monomial_index(scenario, 2, basis)), 13)
        self.assertEqual(len(monomial_index(scenario, 1, PROJECTOR, eliminate=False)), 9)

    def test_tripartite_augmentation(self):

        index = monomial_index(ghz_game().scenario, 1)
        self.assertEqual(len(index), 11)
        self.assertIn((Symbol(1, 0, 0), Symbol(2, 1, 0)), index)

    def test_order(self):

        index = monomial_index(chsh_game().scenario, 2)
        self.assertEqual(index[0], IDENTITY)
        self.assertEqual([len(w) for w in index], sorted(len(w) for w in index))

    def test_generators(self):

        scenario = magic_square_game().scenario
        self.assertEqual(len(generators(scenario)), 18)
        self.assertEqual(len(generators(scenario, eliminate=False)), 24)


class NpaBoundTestCase(NonlocalTestCaseBase):

    def test_chsh(self):

        for basis in (PROJECTOR, DICHOTOMIC):
            for level in (1, 2):
                result = npa_bound(chsh_game(), level=level, basis=basis, config=self.config)
                self.assertTrue(result.converged)
                self.assertAlmostEqual(result.value, TSIRELSON, delta=1e-5)
                self.assertGreater(result.bound, result.value)

    def test_chsh_functional(self):

        result = npa_functional_bound(chsh_functional(), level=1, config=self.config)
        self.assertAlmostEqual(result.value, 2.0 * np.sqrt(2.0), delta=1e-4)

    def test_formulations_agree(self):

        reference = npa_bound(chsh_game(), level=1, config=self.config).value
        explicit = npa_bound(chsh_game(), level=1, eliminate=False, config=self.config)
        hermitian = npa_bound(chsh_game(), level=1, force_complex=True, config=self.config)

        self.assertFalse(explicit.problem.eliminated)
        self.assertTrue(hermitian.problem.is_complex)
        self.assertAlmostEqual(explicit.value, reference, delta=1e-5)
        self.assertAlmostEqual(hermitian.value, reference, delta=1e-5)

    def test_explicit_normalization_tripartite(self):

        explicit = npa_bound(ghz_game(), level=1, eliminate=False, config=self.config, tol=1e-6)

        self.assertFalse(explicit.problem.eliminated)
        self.assertTrue(explicit.converged)
        self.assertAlmostEqual(explicit.value, 1.0, delta=1e-4)
        self.assertGreaterEqual(explicit.bound, 0.75)

    def test_pseudo_telepathy(self):

        self.assertAlmostEqual(npa_bound(magic_square_game(), level=1, config=self.config).value, 1.0,
                               delta=1e-5)
        self.assertAlmostEqual(npa_bound(ghz_game(), level=1, config=self.config).value, 1.0, delta=1e-5)

    def test_level_monotonicity(self):

        games = [chsh_game(), ghz_game(), coloring_game(GraphSpec.complete(3), 2)]
        for game in games:
            first = npa_bound(game, level=1, config=self.config).value
            second = npa_bound(game, level=2, config=self.config).value
            self.assertLessEqual(second, first + 1e-6)

    def test_magic_square_levels(self):

        first = npa_bound(magic_square_game(), level=1, config=self.config, tol=1e-6)
        second = npa_bound(magic_square_game(), level=2, config=self.config, tol=1e-6)

        self.assertEqual(second.problem.side, 208)
        self.assertLessEqual(second.value, first.value + 1e-4)
        self.assertAlmostEqual(second.value, 1.0, delta=1e-4)

    def test_domain_errors(self):

        self.assertRaises(DomainError, npa_bound, chsh_game(), 0, config=self.config)
        self.assertRaises(DomainError, npa_bound, chsh_game(), 1.5, config=self.config)
        self.assertRaises(DomainError, npa_bound, chsh_game(), 1, "pauli", config=self.config)
        self.assertRaises(UnsupportedScenarioError, npa_bound, magic_square_game(), 1, DICHOTOMIC,
                          config=self.config)

    def test_too_large(self):

        config = Configuration()
        config.LOG_LEVEL = 1
        config.NPA_MAX_MATRIX_SIDE = 4
        with self.assertRaises(TooLargeScenarioError) as context:
            npa_bound(chsh_game(), level=1, config=config)
        self.assertEqual(context.exception.count, 5)

    def test_iteration_cap(self):

        result = npa_bound(chsh_game(), level=1, config=self.config, max_iterations=1)
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 1)


class MomentMatrixTestCase(NonlocalTestCaseBase):

    def check_strategy(self, game, strategy, basis):

        problem = build_problem(game, 1, basis, config=self.config)
        gamma = moment_matrix(problem, strategy)

        self.assertAlmostEqual(gamma[0, 0].real, 1.0, delta=1e-12)
        self.assertGreaterEqual(np.linalg.eigvalsh((gamma + gamma.conj().T) / 2.0).min(), -1e-10)

        values = {}
        for i in range(problem.side):
            for j in range(problem.side):
                k = int(problem.cell_classes[i, j])
                if k in values:
                    self.assertAlmostEqual(values[k], gamma[i, j].real, delta=1e-12)
                else:
                    values[k] = gamma[i, j].real

        objective = sum(c * values[k] for k, c in problem.objective.items())
        self.assertAlmostEqual(objective, winning_probability(game, strategy), delta=1e-12)

    def test_chsh(self):

        for basis in (PROJECTOR, DICHOTOMIC):
            self.check_strategy(chsh_game(), chsh_strategy(), basis)

    def test_ghz(self):

        self.check_strategy(ghz_game(), ghz_strategy(), PROJECTOR)


class SerializationTestCase(NonlocalTestCaseBase):

    def test_byte_stable(self):

        for game, kwargs in [(chsh_game(), {}), (chsh_game(), {"basis": DICHOTOMIC}),
                             (chsh_game(), {"eliminate": False}), (chsh_game(), {"force_complex": True}),
                             (ghz_game(), {})]:
            problem = build_problem(game, 1, config=self.config, **kwargs)
            text = dump_problem(problem)
            restored = load_problem(text)

            self.assertEqual(dump_problem(restored), text)
            self.assertEqual(dump_problem(build_problem(game, 1, config=self.config, **kwargs)), text)
            self.assertEqual(restored.side, problem.side)

    def test_malformed(self):

        self.assertRaises(InputFormatError, load_problem, "{}")
        self.assertRaises(InputFormatError, load_problem, "not json")


if __name__ == '__main__':
    unittest.main()
