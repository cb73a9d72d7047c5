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
JSON documents of games, behaviors, strategies, functionals and graphs

Game document::

    {"parties": [{"questions": ["0", "1"], "answers": ["0", "1"],
                  "answer_constraint": null}, ...],
     "pi": [{"q": ["0", "1"], "w": "1/4"}, ...],
     "predicate": {"type": "table", "wins": [{"q": [...], "a": [...]}]}
                | {"type": "xor", "f": [[0, 0], [0, 1]]}
                | {"type": "builtin", "name": "chsh|ghz|magic_square|coloring",
                   "graph": {...}, "colors": 3}}

Behavior document: a list of {"q": [...], "a": [...], "p": 0.25} records,
or {"parties": [...], "records": [...]} if no game defines the scenario.
"""
import hashlib
import json
from fractions import Fraction
import numpy as np
from .common.exceptions import InputFormatError, NonlocalCoreError
from .games import Party, Scenario, Game, Behavior
from .linalg import StateVector
from .quantum import Measurement, DichotomicObservable, QuantumStrategy
from .bell import BellFunctional, correlator_functional
from .catalog import CATALOG, GraphSpec, xor_game, coloring_game

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"


def _require(document, key, context):
    if not isinstance(document, dict):
        raise InputFormatError("The %s must be a JSON object, got %s" % (context, type(document).__name__))
    if key not in document:
        raise InputFormatError("The %s misses the key <%s>" % (context, key))
    return document[key]


def _record_list(value, context):
    if not isinstance(value, list):
        raise InputFormatError("The %s must be a JSON list" % context)
    return value


def load_document(path):
    """Read a JSON file

    Raises:
        InputFormatError: If the file can not be read or parsed

    """
    try:
        with open(path, "r") as document:
            return json.load(document)
    except (IOError, OSError) as e:
        raise InputFormatError("Unable to read <%s>: %s" % (path, str(e)))
    except ValueError as e:
        raise InputFormatError("The file <%s> is no valid JSON: %s" % (path, str(e)))


def parse_graph(document):
    vertices = _record_list(_require(document, "vertices", "graph document"), "vertex list")
    edges = _record_list(_require(document, "edges", "graph document"), "edge list")
    for edge in edges:
        if not isinstance(edge, list) or len(edge) != 2:
            raise InputFormatError("An edge must be a pair of vertex labels, got %s" % json.dumps(edge))
    try:
        return GraphSpec(vertices, edges)
    except NonlocalCoreError as e:
        raise InputFormatError(str(e))


def parse_scenario(parties):
    parties = _record_list(parties, "party list")
    result = []
    for party in parties:
        questions = _record_list(_require(party, "questions", "party"), "question list")
        answers = _record_list(_require(party, "answers", "party"), "answer list")
        result.append(Party(questions, answers, party.get("answer_constraint")))
    return Scenario(result)


def _parse_pi(records, scenario):
    pi = {}
    for record in _record_list(records, "pi list"):
        q = scenario.question_indices(_require(record, "q", "pi record"))
        w = _require(record, "w", "pi record")
        if isinstance(w, float):
            raise InputFormatError("The weight %s of question %s must be a rational string like \"1/4\""
                                   % (repr(w), str(record["q"])))
        try:
            weight = Fraction(str(w))
        except (ValueError, ZeroDivisionError):
            raise InputFormatError("The weight <%s> of question %s is no rational number"
                                   % (str(w), str(record["q"])))
        if weight < 0:
            raise InputFormatError("The weight <%s> of question %s is negative" % (str(w), str(record["q"])))
        if q in pi:
            raise InputFormatError("The question %s is weighted twice" % str(record["q"]))
        pi[q] = weight
    total = sum(pi.values())
    if total != 1:
        raise InputFormatError("The weights of pi sum to %s instead of 1" % str(total))
    return pi


def _parse_builtin(predicate, document, colors=None, graph=None):
    name = _require(predicate, "name", "builtin predicate")
    if name not in CATALOG:
        raise InputFormatError("Unknown builtin game <%s>, known are %s" % (str(name), str(sorted(CATALOG))))
    if name != "coloring":
        return CATALOG[name].build()
    if graph is None:
        graph = parse_graph(_require(predicate, "graph", "coloring predicate"))
    if colors is None:
        colors = _require(predicate, "colors", "coloring predicate")
    pi = None
    if "pi" in document:
        pi = dict((tuple(_require(r, "q", "pi record")), str(_require(r, "w", "pi record")))
                  for r in _record_list(document["pi"], "pi list"))
    return coloring_game(graph, colors, pi=pi)


def parse_game(document, colors=None, graph=None):
    """Convert a game document into a Game

    Args:
        document (dict): The game document
        colors (int): Overrides the colors of a builtin coloring game
        graph (GraphSpec): Overrides the graph of a builtin coloring game

    Raises:
        InputFormatError

    """
    predicate = _require(document, "predicate", "game document")
    kind = _require(predicate, "type", "predicate")
    name = document.get("name")
    try:
        if kind == "builtin":
            return _parse_builtin(predicate, document, colors=colors, graph=graph)
        if kind == "xor":
            f = _record_list(_require(predicate, "f", "xor predicate"), "truth table")
            pi = None
            if "pi" in document:
                scenario = Scenario([Party(range(len(f)), ["0", "1"]),
                                     Party(range(len(f[0]) if f else 0), ["0", "1"])])
                pi = _parse_pi(document["pi"], scenario)
            return xor_game(f, pi=pi, name=name or "xor")
        if kind == "table":
            scenario = parse_scenario(_require(document, "parties", "game document"))
            pi = _parse_pi(_require(document, "pi", "game document"), scenario)
            table = np.zeros(scenario.shape, dtype=bool)
            for record in _record_list(_require(predicate, "wins", "table predicate"), "win list"):
                q = scenario.question_indices(_require(record, "q", "win record"))
                a = scenario.answer_indices(_require(record, "a", "win record"))
                table[q + a] = True
            return Game(scenario, pi, table, name=name)
    except InputFormatError:
        raise
    except NonlocalCoreError as e:
        raise InputFormatError(str(e))
    raise InputFormatError("Unknown predicate type <%s>, supported are table, xor and builtin" % str(kind))


def _scenario_document(scenario):
    return [{"questions": list(p.questions), "answers": list(p.answers),
             "answer_constraint": p.answer_constraint} for p in scenario.parties]


def game_to_document(game):
    """The canonical table form of a game"""
    scenario = game.scenario
    wins = []
    for q in game.promise:
        for a in scenario.joint_answers():
            if game.predicate[q + a]:
                wins.append({"q": list(scenario.question_labels(q)), "a": list(scenario.answer_labels(a))})
    document = {"parties": _scenario_document(scenario),
                "pi": [{"q": list(scenario.question_labels(q)), "w": str(game.pi[q])} for q in game.promise],
                "predicate": {"type": "table", "wins": wins}}
    if game.name is not None:
        document["name"] = game.name
    return document


def game_hash(game):
    """SHA256 of the sorted key JSON of the canonical game document"""
    text = json.dumps(game_to_document(game), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_behavior(document, scenario=None):
    """Convert behavior records into a Behavior, missing records are zero

    Raises:
        InputFormatError

    """
    records = document
    if isinstance(document, dict):
        if "parties" in document:
            parsed = parse_scenario(document["parties"])
            if scenario is not None:
                scenario.check_same(parsed)
            scenario = parsed
        records = _require(document, "records", "behavior document")
    if scenario is None:
        raise InputFormatError("The behavior records need a scenario, give a game or a \"parties\" key")
    probs = np.zeros(scenario.shape)
    seen = set()
    for record in _record_list(records, "behavior record list"):
        q = scenario.question_indices(_require(record, "q", "behavior record"))
        a = scenario.answer_indices(_require(record, "a", "behavior record"))
        if q + a in seen:
            raise InputFormatError("The probability of question %s answer %s is given twice"
                                   % (str(record["q"]), str(record["a"])))
        seen.add(q + a)
        try:
            probs[q + a] = float(_require(record, "p", "behavior record"))
        except (TypeError, ValueError):
            raise InputFormatError("The probability <%s> is no number" % str(record["p"]))
    try:
        return Behavior(scenario, probs)
    except NonlocalCoreError as e:
        raise InputFormatError(str(e))


def behavior_to_document(behavior):
    scenario = behavior.scenario
    records = []
    for q in scenario.joint_questions():
        for a in scenario.joint_answers():
            records.append({"q": list(scenario.question_labels(q)), "a": list(scenario.answer_labels(a)),
                            "p": float(behavior.probs[q + a])})
    return {"parties": _scenario_document(scenario), "records": records}


def _complex(value):
    if isinstance(value, list):
        if len(value) != 2:
            raise InputFormatError("A complex number is a [re, im] pair, got %s" % json.dumps(value))
        parts = value
    else:
        parts = [value, 0.0]
    try:
        return complex(float(parts[0]), float(parts[1]))
    except (TypeError, ValueError):
        raise InputFormatError("The amplitude or matrix entry <%s> is no number" % json.dumps(value))


def _complex_matrix(rows):
    rows = _record_list(rows, "matrix")
    try:
        return np.array([[_complex(v) for v in _record_list(row, "matrix row")] for row in rows], dtype=complex)
    except (TypeError, ValueError):
        raise InputFormatError("A matrix entry is no number")


def parse_strategy(document):
    """Convert a strategy document into a QuantumStrategy

    The state is a list of [re, im] amplitudes, party 0 most significant.
    measurements[p][x] is either {"effects": [matrix, ...]} or
    {"observable": matrix} for a +-1 observable.
    """
    dims = _record_list(_require(document, "party_dims", "strategy document"), "party_dims")
    amplitudes = [_complex(v) for v in _record_list(_require(document, "state", "strategy document"),
                                                    "state")]
    families = []
    try:
        for family in _record_list(_require(document, "measurements", "strategy document"),
                                   "measurement list"):
            measurements = []
            for item in _record_list(family, "measurement family"):
                if isinstance(item, dict) and "observable" in item:
                    measurements.append(DichotomicObservable(_complex_matrix(item["observable"])).measurement())
                else:
                    effects = _record_list(_require(item, "effects", "measurement"), "effect list")
                    measurements.append(Measurement([_complex_matrix(e) for e in effects],
                                                    outcomes=item.get("outcomes"),
                                                    projective=item.get("projective", True)))
            families.append(measurements)
        return QuantumStrategy(StateVector(amplitudes, dims), families)
    except InputFormatError:
        raise
    except NonlocalCoreError as e:
        raise InputFormatError(str(e))


def parse_functional(document, scenario=None, game=None):
    """Convert a functional document into a BellFunctional

    Either "alpha" records {"q", "a", "c"} or a correlator block
    "beta" with records {"q", "c"} and an optional "constant".
    """
    if isinstance(document, dict) and "parties" in document:
        parsed = parse_scenario(document["parties"])
        if scenario is not None:
            scenario.check_same(parsed)
        scenario = parsed
    if scenario is None:
        raise InputFormatError("The functional needs a scenario, give a game or a \"parties\" key")
    name = document.get("name") if isinstance(document, dict) else None
    try:
        if isinstance(document, dict) and "beta" in document and "alpha" not in document:
            beta = np.zeros(scenario.question_shape)
            for record in _record_list(document["beta"], "beta list"):
                beta[scenario.question_indices(_require(record, "q", "beta record"))] = \
                    float(_require(record, "c", "beta record"))
            return correlator_functional(scenario, beta, constant=float(document.get("constant", 0.0)),
                                         game=game, name=name)
        alpha = np.zeros(scenario.shape)
        for record in _record_list(_require(document, "alpha", "functional document"), "alpha list"):
            q = scenario.question_indices(_require(record, "q", "alpha record"))
            a = scenario.answer_indices(_require(record, "a", "alpha record"))
            alpha[q + a] += float(_require(record, "c", "alpha record"))
        return BellFunctional(scenario, alpha, game=game, name=name)
    except InputFormatError:
        raise
    except (TypeError, ValueError):
        raise InputFormatError("A functional coefficient is no number")
    except NonlocalCoreError as e:
        raise InputFormatError(str(e))


def functional_to_document(f):
    scenario = f.scenario
    alpha = []
    for q in scenario.joint_questions():
        for a in scenario.joint_answers():
            c = float(f.alpha[q + a])
            if c != 0.0:
                alpha.append({"q": list(scenario.question_labels(q)), "a": list(scenario.answer_labels(a)),
                              "c": c})
    document = {"parties": _scenario_document(scenario), "alpha": alpha}
    if f.correlator_form is not None:
        form = f.correlator_form
        document["beta"] = [{"q": list(scenario.question_labels(q)), "c": float(form.beta[q])}
                            for q in scenario.joint_questions() if form.beta[q] != 0.0]
        document["constant"] = float(form.constant)
    return document
