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
Tests: JSON input format test case
"""
import json
import os
import tempfile
import unittest
from fractions import Fraction
import numpy as np
from nonlocal_core.common.exceptions import InputFormatError, NonlocalCoreError, ScenarioMismatchError
from nonlocal_core.games import random_behavior
from nonlocal_core.quantum import strategy_behavior
from nonlocal_core.catalog import chsh_game, ghz_game, magic_square_game, chsh_strategy
from nonlocal_core.bell import chsh_functional
from nonlocal_core import formats
try:
    from .test_nonlocal_base import NonlocalTestCaseBase
except ImportError:
    from test_nonlocal_base import NonlocalTestCaseBase

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

BINARY_PARTIES = [{"questions": ["0", "1"], "answers": ["0", "1"]},
                  {"questions": ["0", "1"], "answers": ["0", "1"]}]

CHSH_TABLE = {
    "name": "chsh_table",
    "parties": BINARY_PARTIES,
    "pi": [{"q": [x, y], "w": "1/4"} for x in "01" for y in "01"],
    "predicate": {"type": "table",
                  "wins": [{"q": [x, y], "a": [a, b]} for x in "01" for y in "01" for a in "01" for b in "01"
                           if (int(a) ^ int(b)) == (int(x) & int(y))]}
}


class GameFormatTestCase(NonlocalTestCaseBase):

    def test_table(self):

        game = formats.parse_game(CHSH_TABLE)
        self.assertEqual(game.name, "chsh_table")
        self.assertTrue(np.array_equal(game.predicate, chsh_game().predicate))
        self.assertEqual(game.pi, chsh_game().pi)

    def test_builtin_and_xor(self):

        builtin = formats.parse_game({"predicate": {"type": "builtin", "name": "magic_square"}})
        self.assertEqual(builtin.name, "magic_square")

        xor = formats.parse_game({"predicate": {"type": "xor", "f": [[0, 0], [0, 1]]},
                                  "pi": [{"q": ["0", "0"], "w": "1/2"}, {"q": ["1", "1"], "w": "1/2"}]})
        self.assertEqual(xor.promise, ((0, 0), (1, 1)))

    def test_builtin_coloring(self):

        document = {"predicate": {"type": "builtin", "name": "coloring", "colors": 2,
                                  "graph": {"vertices": ["u", "v", "w"], "edges": [["u", "v"], ["v", "w"]]}}}
        game = formats.parse_game(document)
        self.assertEqual(len(game.promise), 7)

        override = formats.parse_game(document, colors=1)
        self.assertEqual(override.scenario.answer_shape, (1, 1))

    def test_canonical_form(self):

        for game in [chsh_game(), ghz_game(), magic_square_game()]:
            restored = formats.parse_game(formats.game_to_document(game))
            self.assertTrue(np.array_equal(restored.predicate, game.predicate))
            self.assertEqual(restored.pi, game.pi)
            self.assertEqual(formats.game_hash(restored), formats.game_hash(game))

        self.assertNotEqual(formats.game_hash(chsh_game()), formats.game_hash(ghz_game()))
        self.assertEqual(len(formats.game_hash(chsh_game())), 64)

    def test_float_weight(self):

        document = json.loads(json.dumps(CHSH_TABLE))
        document["pi"][0]["w"] = 0.25
        with self.assertRaises(InputFormatError) as context:
            formats.parse_game(document)
        self.assertIn("0.25", str(context.exception))
        self.assertIn("rational string", str(context.exception))

    def test_invalid_pi(self):

        document = json.loads(json.dumps(CHSH_TABLE))
        document["pi"][0]["w"] = "1/3"
        with self.assertRaises(InputFormatError) as context:
            formats.parse_game(document)
        self.assertIn("13/12", str(context.exception))

        document["pi"][0]["w"] = "-1/4"
        self.assertRaises(InputFormatError, formats.parse_game, document)

        document["pi"][0]["w"] = "1/4"
        document["pi"].append({"q": ["0", "0"], "w": "0"})
        self.assertRaises(InputFormatError, formats.parse_game, document)

    def test_malformed(self):

        self.assertRaises(InputFormatError, formats.parse_game, [])
        self.assertRaises(InputFormatError, formats.parse_game, {"predicate": {"type": "circuit"}})
        self.assertRaises(InputFormatError, formats.parse_game, {"predicate": {"type": "builtin", "name": "x"}})
        self.assertRaises(InputFormatError, formats.parse_game, {"predicate": {"type": "xor", "f": [[0, 3]]}})

        document = json.loads(json.dumps(CHSH_TABLE))
        document["predicate"]["wins"].append({"q": ["0", "2"], "a": ["0", "0"]})
        self.assertRaises(NonlocalCoreError, formats.parse_game, document)


class BehaviorFormatTestCase(NonlocalTestCaseBase):

    def test_round_trip(self):

        behavior = random_behavior(ghz_game().scenario, np.random.default_rng(8))
        restored = formats.parse_behavior(formats.behavior_to_document(behavior))
        self.assertArrayAlmostEqual(restored.probs, behavior.probs, 0.0)

    def test_missing_records(self):

        scenario = chsh_game().scenario
        records = [{"q": [x, y], "a": ["0", "0"], "p": 1.0} for x in "01" for y in "01"]
        behavior = formats.parse_behavior(records, scenario)
        self.assertEqual(behavior.probs[1, 1, 0, 0], 1.0)
        self.assertEqual(behavior.probs[1, 1, 1, 1], 0.0)

        self.assertRaises(InputFormatError, formats.parse_behavior, records[:-1], scenario)
        self.assertRaises(InputFormatError, formats.parse_behavior, records + records[:1], scenario)
        self.assertRaises(InputFormatError, formats.parse_behavior, records)

    def test_scenario_mismatch(self):

        document = formats.behavior_to_document(random_behavior(ghz_game().scenario))
        self.assertRaises(ScenarioMismatchError, formats.parse_behavior, document, chsh_game().scenario)


class StrategyFormatTestCase(NonlocalTestCaseBase):

    def test_observables(self):

        root = np.sqrt(0.5)
        document = {
            "party_dims": [2, 2],
            "state": [[root, 0.0], 0.0, 0.0, [root, 0.0]],
            "measurements": [
                [{"observable": [[1, 0], [0, -1]]}, {"observable": [[0, 1], [1, 0]]}],
                [{"observable": [[root, root], [root, -root]]}, {"observable": [[root, -root], [-root, -root]]}],
            ]
        }
        strategy = formats.parse_strategy(document)
        scenario = chsh_game().scenario
        self.assertArrayAlmostEqual(strategy_behavior(strategy, scenario).probs,
                                    strategy_behavior(chsh_strategy(), scenario).probs, 1e-12)

    def test_effects(self):

        document = {
            "party_dims": [2],
            "state": [[0.0, 1.0], 0.0],
            "measurements": [[{"effects": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "outcomes": ["up", "down"]}]]
        }
        strategy = formats.parse_strategy(document)
        self.assertEqual(strategy.measurements[0][0].outcomes, ("up", "down"))
        self.assertEqual(strategy.state.amplitudes[0], 1j)

    def test_invalid(self):

        document = {"party_dims": [2], "state": [1.0, 1.0],
                    "measurements": [[{"effects": [[[1, 0], [0, 1]]]}]]}
        self.assertRaises(InputFormatError, formats.parse_strategy, document)

        document["state"] = [1.0, [0.0, 0.0, 0.0]]
        self.assertRaises(InputFormatError, formats.parse_strategy, document)

        document["state"] = [1.0, 0.0]
        document["measurements"] = [[{"effects": [[[2, 0], [0, 0]]]}]]
        self.assertRaises(InputFormatError, formats.parse_strategy, document)


class FunctionalFormatTestCase(NonlocalTestCaseBase):

    def test_beta(self):

        document = {"parties": BINARY_PARTIES, "name": "S",
                    "beta": [{"q": ["0", "0"], "c": 1}, {"q": ["0", "1"], "c": 1},
                             {"q": ["1", "0"], "c": 1}, {"q": ["1", "1"], "c": -1}]}
        f = formats.parse_functional(document)
        self.assertEqual(f.name, "S")
        self.assertArrayAlmostEqual(f.alpha, chsh_functional().alpha, 1e-15)

    def test_round_trip(self):

        document = formats.functional_to_document(chsh_functional())
        self.assertEqual(document["constant"], 0.0)
        self.assertEqual(len(document["beta"]), 4)

        del document["beta"]
        f = formats.parse_functional(document, game=chsh_game())
        self.assertArrayAlmostEqual(f.alpha, chsh_functional().alpha, 1e-15)
        self.assertAlmostEqual(f.affine_to_game[1], 0.125, delta=1e-9)

    def test_invalid(self):

        self.assertRaises(InputFormatError, formats.parse_functional, {"alpha": []})
        self.assertRaises(InputFormatError, formats.parse_functional,
                          {"parties": BINARY_PARTIES, "alpha": [{"q": ["0", "0"], "a": ["0", "0"], "c": "x"}]})


class DocumentTestCase(unittest.TestCase):

    def test_load(self):

        directory = tempfile.mkdtemp()
        path = os.path.join(directory, "game.json")
        with open(path, "w") as output:
            json.dump(CHSH_TABLE, output)
        self.assertEqual(formats.load_document(path)["name"], "chsh_table")

        with open(path, "w") as output:
            output.write("{\"pi\": ")
        self.assertRaises(InputFormatError, formats.load_document, path)
        os.remove(path)
        self.assertRaises(InputFormatError, formats.load_document, path)
        os.rmdir(directory)

    def test_graph(self):

        graph = formats.parse_graph({"vertices": ["a", "b"], "edges": [["a", "b"]]})
        self.assertTrue(graph.has_edge("b", "a"))
        self.assertRaises(InputFormatError, formats.parse_graph, {"vertices": ["a"], "edges": [["a"]]})
        self.assertRaises(InputFormatError, formats.parse_graph, {"vertices": ["a"], "edges": [["a", "a"]]})


if __name__ == '__main__':
    unittest.main()
