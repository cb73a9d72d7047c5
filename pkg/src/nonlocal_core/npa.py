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
Moment matrix relaxations of the quantum value

Operators are words over symbols (party, question, answer). In the
projector basis a symbol is the projector of an answer, the last answer of
every question is eliminated through the normalization of the measurement.
In the dichotomic basis a symbol is the +-1 observable of a question of a
party with binary answers.
"""
import collections
import itertools
import json
import re
import numpy as np
from .common.config import global_config
from .common.exceptions import DomainError, UnsupportedScenarioError, TooLargeScenarioError, \
    InputFormatError, InvalidStrategyError
from .common.messages_logger import MessageLogger
from .linalg import embed
from .solvers import SemidefiniteProgram, sdp_solve

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

PROJECTOR = "projector"
DICHOTOMIC = "dichotomic"
BASES = (PROJECTOR, DICHOTOMIC)

Symbol = collections.namedtuple("Symbol", ["party", "question", "answer"])

IDENTITY = ()
ZERO = None

PARTY_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
SYMBOL_PATTERN = re.compile(r"^([A-Z])\((\d+)(?:\|(\d+))?\)$")


def canonicalize(word, basis=PROJECTOR):
    """The canonical form of a word

    Symbols of different parties commute and are stably sorted by party.
    Within a party, neighbours on the same question reduce: projectors are
    idempotent and orthogonal for different answers, observables square
    to the identity.

    Args:
        word (tuple): Symbols, or ZERO
        basis (str): "projector" or "dichotomic"

    Returns:
        tuple: The canonical word, IDENTITY for the empty word or ZERO

    """
    if word is ZERO:
        return ZERO
    ordered = sorted((Symbol(*s) for s in word), key=lambda s: s.party)
    result = []
    for party, symbols in itertools.groupby(ordered, key=lambda s: s.party):
        stack = []
        for s in symbols:
            if stack and stack[-1].question == s.question:
                if basis == DICHOTOMIC:
                    stack.pop()
                    continue
                if stack[-1].answer == s.answer:
                    continue
                return ZERO
            stack.append(s)
        result.extend(stack)
    return tuple(result)


def adjoint(word, basis=PROJECTOR):
    if word is ZERO:
        return ZERO
    return canonicalize(tuple(reversed(word)), basis)


def word_label(word, basis=PROJECTOR):
    """"A(a|x) B(b|y)" for projectors, "A(x) B(y)" for observables"""
    if word is ZERO:
        return "0"
    if len(word) == 0:
        return "I"
    if basis == DICHOTOMIC:
        return " ".join("%s(%i)" % (PARTY_NAMES[s.party], s.question) for s in word)
    return " ".join("%s(%i|%i)" % (PARTY_NAMES[s.party], s.answer, s.question) for s in word)


def parse_word(label):
    if label == "0":
        return ZERO
    if label == "I":
        return IDENTITY
    word = []
    for token in label.split():
        match = SYMBOL_PATTERN.match(token)
        if match is None:
            raise InputFormatError("Unable to parse the operator symbol <%s>" % token)
        party = PARTY_NAMES.index(match.group(1))
        if match.group(3) is None:
            word.append(Symbol(party, int(match.group(2)), 0))
        else:
            word.append(Symbol(party, int(match.group(3)), int(match.group(2))))
    return tuple(word)


def _word_order(word):
    return (len(word), word)


def generators(scenario, basis=PROJECTOR, eliminate=True):
    """The level one operators: one symbol per question and answer, without
    the last answer when eliminating; one observable per question in the
    dichotomic basis
    """
    symbols = []
    for p, party in enumerate(scenario.parties):
        for x in range(len(party.questions)):
            if basis == DICHOTOMIC:
                symbols.append(Symbol(p, x, 0))
                continue
            kept = len(party.answers) - 1 if eliminate else len(party.answers)
            for a in range(kept):
                symbols.append(Symbol(p, x, a))
    return symbols


def monomial_index(scenario, level, basis=PROJECTOR, eliminate=True):
    """All nonzero canonical words of length <= level, plus for more than
    two parties the products with one symbol of each party of a subset of
    the parties 2..n

    Returns:
        list: Words ordered by length, then lexicographically

    """
    gens = generators(scenario, basis, eliminate)
    words = {IDENTITY}
    frontier = {IDENTITY}
    for _ in range(level):
        grown = set()
        for w in frontier:
            for g in gens:
                c = canonicalize(w + (g,), basis)
                if c is not ZERO and c not in words:
                    grown.add(c)
        words |= grown
        frontier = grown

    n = scenario.n_parties
    if n > 2:
        by_party = [[g for g in gens if g.party == p] for p in range(n)]
        for size in range(2, n):
            for subset in itertools.combinations(range(1, n), size):
                for combination in itertools.product(*[by_party[p] for p in subset]):
                    words.add(tuple(combination))

    return sorted(words, key=_word_order)


class MomentProblem(object):
    """One level of the relaxation: the monomial index, the partition of the
    moment matrix cells into classes, fixed classes, linear relations
    between classes and the objective

    Class values stand for <S_i^dagger S_j>; in the real formulation a word
    and its adjoint share a class. Each class is represented by its least
    canonical word.
    """

    def __init__(self, index, class_words, cell_classes, objective, basis, level,
                 eliminated=True, is_complex=False, conjugate=None, equalities=None, scenario=None,
                 name=None):
        self.index = list(index)
        self.class_words = list(class_words)
        self.cell_classes = np.asarray(cell_classes, dtype=np.intp)
        self.objective = dict(objective)
        self.basis = basis
        self.level = level
        self.eliminated = eliminated
        self.is_complex = is_complex
        self.conjugate = None if conjugate is None else np.asarray(conjugate, dtype=bool)
        self.equalities = list(equalities or [])
        self.scenario = scenario
        self.name = name
        self._class_of = dict((w, k) for k, w in enumerate(self.class_words))

    @property
    def side(self):
        return len(self.index)

    @property
    def fixed(self):
        fixed = {}
        if IDENTITY in self._class_of:
            fixed[self._class_of[IDENTITY]] = 1.0
        if ZERO in self._class_of:
            fixed[self._class_of[ZERO]] = 0.0
        return fixed

    def class_of(self, word):
        return self._class_of.get(word)

    def program(self):
        return SemidefiniteProgram(self.cell_classes, self.objective, fixed=self.fixed,
                                   conjugate=self.conjugate if self.is_complex else None,
                                   equalities=self.equalities)


def _class_key(word, basis, is_complex):
    """The class representative and whether the word is its conjugate"""
    if word is ZERO:
        return ZERO, False
    partner = adjoint(word, basis)
    key = min(word, partner, key=_word_order)
    return key, is_complex and word != key


def _answer_expansion(p, x, a, answers, basis, eliminate):
    """The projector of answer a as (symbol or None, coefficient) terms"""
    if basis == DICHOTOMIC:
        return [(None, 0.5), (Symbol(p, x, 0), 0.5 * (-1) ** a)]
    if not eliminate or a < answers - 1:
        return [(Symbol(p, x, a), 1.0)]
    return [(None, 1.0)] + [(Symbol(p, x, b), -1.0) for b in range(answers - 1)]


def _objective_terms(scenario, table, basis, eliminate):
    """Expand sum table[q + a] <E^{q_1}_{a_1} ... E^{q_n}_{a_n}> into words"""
    terms = collections.defaultdict(float)
    n = scenario.n_parties
    for q in scenario.joint_questions():
        block = table[q]
        if not np.any(block):
            continue
        for a in scenario.joint_answers():
            c = float(block[a])
            if c == 0.0:
                continue
            factors = [_answer_expansion(p, q[p], a[p], scenario.answer_shape[p], basis, eliminate)
                       for p in range(n)]
            for combination in itertools.product(*factors):
                word = tuple(s for s, _ in combination if s is not None)
                coefficient = c
                for _, v in combination:
                    coefficient *= v
                terms[word] += coefficient
    return terms


def _normalization_relations(index, class_of_word, scenario, basis):
    """sum_a <S_i^dagger M^x_a S_j> = <S_i^dagger S_j> whenever every moment
    has a class
    """
    relations = set()
    for si in index:
        left = tuple(reversed(si))
        for sj in index:
            right = canonicalize(left + sj, basis)
            right_key = class_of_word(right)
            if right_key is None:
                continue
            for p, party in enumerate(scenario.parties):
                for x in range(len(party.questions)):
                    total = collections.defaultdict(float)
                    complete = True
                    for a in range(len(party.answers)):
                        w = canonicalize(left + (Symbol(p, x, a),) + sj, basis)
                        if w is ZERO:
                            continue
                        k = class_of_word(w)
                        if k is None:
                            complete = False
                            break
                        total[k] += 1.0
                    if not complete:
                        continue
                    total[right_key] -= 1.0
                    relation = tuple(sorted((k, v) for k, v in total.items() if v != 0.0))
                    if relation:
                        relations.add(relation)
    return [(dict(relation), 0.0) for relation in sorted(relations)]


def _build(scenario, table, level, basis, eliminate, force_complex, name, config):

    if config is None:
        config = global_config
    if basis not in BASES:
        raise DomainError("Unknown basis <%s>, supported are %s" % (str(basis), str(BASES)))
    if int(level) != level or level < 1:
        raise DomainError("The relaxation level must be an integer >= 1, got %s" % str(level))
    if basis == DICHOTOMIC and not scenario.is_binary:
        raise UnsupportedScenarioError("The dichotomic basis requires binary answers, got %s"
                                       % str(scenario.answer_shape))
    if basis == DICHOTOMIC:
        eliminate = True
    if force_complex is None:
        force_complex = config.NPA_FORCE_COMPLEX
    is_complex = bool(force_complex)

    index = monomial_index(scenario, level, basis, eliminate)
    side = len(index)
    if side > config.NPA_MAX_MATRIX_SIDE:
        raise TooLargeScenarioError("The moment matrix would have side %i, the configured maximum is %i"
                                    % (side, config.NPA_MAX_MATRIX_SIDE), count=side)

    keys = {}
    cells = [[None] * side for _ in range(side)]
    conjugate = np.zeros((side, side), dtype=bool)
    for i, si in enumerate(index):
        left = tuple(reversed(si))
        for j, sj in enumerate(index):
            key, conj = _class_key(canonicalize(left + sj, basis), basis, is_complex)
            cells[i][j] = key
            conjugate[i, j] = conj
            keys[key] = True

    class_words = sorted((k for k in keys if k is not ZERO), key=_word_order)
    if ZERO in keys:
        class_words.append(ZERO)
    class_of = dict((w, k) for k, w in enumerate(class_words))
    cell_classes = np.array([[class_of[w] for w in row] for row in cells], dtype=np.intp)

    def class_of_word(word):
        return class_of.get(_class_key(word, basis, is_complex)[0])

    objective = collections.defaultdict(float)
    for word, coefficient in _objective_terms(scenario, np.asarray(table, dtype=float), basis,
                                              eliminate).items():
        k = class_of_word(word)
        if k is None:
            raise TooLargeScenarioError("The moment %s of the objective has no cell in the matrix"
                                        % word_label(word, basis))
        objective[k] += coefficient

    equalities = None
    if not eliminate:
        equalities = _normalization_relations(index, class_of_word, scenario, basis)

    return MomentProblem(index, class_words, cell_classes, dict(objective), basis, level,
                         eliminated=eliminate, is_complex=is_complex,
                         conjugate=conjugate if is_complex else None, equalities=equalities,
                         scenario=scenario, name=name)


def build_problem(game, level, basis=None, eliminate=True, force_complex=None, config=None):
    """The moment problem of a game at an integer level

    Args:
        game (Game): The game, its objective is sum pi V P
        level (int): Maximum word length, >= 1
        basis (str): "projector" (default from the configuration) or
                     "dichotomic"
        eliminate (bool): Drop the last answer of every question, otherwise
                          keep all answers and add the normalization
                          relations explicitly
        force_complex (bool): Use the Hermitian formulation

    Returns:
        MomentProblem

    """
    if config is None:
        config = global_config
    if basis is None:
        basis = config.NPA_DEFAULT_BASIS
    return _build(game.scenario, game.weight_table(), level, basis, eliminate, force_complex,
                  game.name, config)


def build_functional_problem(f, level, basis=None, eliminate=True, force_complex=None, config=None):
    """The moment problem maximizing a Bell functional"""
    if config is None:
        config = global_config
    if basis is None:
        basis = config.NPA_DEFAULT_BASIS
    return _build(f.scenario, f.alpha, level, basis, eliminate, force_complex, f.name, config)


class NpaResult(object):
    """bound is the optimum plus the configured margin, gamma the moment
    matrix certificate
    """

    def __init__(self, bound, value, gamma, primal_residual, dual_residual, converged, iterations,
                 problem):
        self.bound = bound
        self.value = value
        self.gamma = gamma
        self.primal_residual = primal_residual
        self.dual_residual = dual_residual
        self.converged = converged
        self.iterations = iterations
        self.problem = problem

    def __repr__(self):
        return "NpaResult(bound=%.12g, converged=%s)" % (self.bound, self.converged)


def solve_problem(problem, config=None, tol=None, max_iterations=None):
    if config is None:
        config = global_config
    log = MessageLogger(config=config, component="npa")
    log.info("Solving the moment problem", level=problem.level, basis=problem.basis, side=problem.side,
             classes=len(problem.class_words))
    result = sdp_solve(problem.program(), config=config, tol=tol, max_iterations=max_iterations)
    return NpaResult(result.value + config.SDP_BOUND_MARGIN, result.value, result.gamma,
                     result.primal_residual, result.dual_residual, result.converged,
                     result.iterations, problem)


def npa_bound(game, level=None, basis=None, config=None, tol=None, max_iterations=None,
              eliminate=True, force_complex=None):
    """An upper bound on the quantum value of a game

    Returns:
        NpaResult

    """
    if config is None:
        config = global_config
    if level is None:
        level = config.NPA_DEFAULT_LEVEL
    problem = build_problem(game, level, basis, eliminate=eliminate, force_complex=force_complex,
                            config=config)
    return solve_problem(problem, config=config, tol=tol, max_iterations=max_iterations)


def npa_functional_bound(f, level=None, basis=None, config=None, tol=None, max_iterations=None,
                         eliminate=True, force_complex=None):
    """An upper bound on the quantum value of a Bell functional"""
    if config is None:
        config = global_config
    if level is None:
        level = config.NPA_DEFAULT_LEVEL
    problem = build_functional_problem(f, level, basis, eliminate=eliminate,
                                       force_complex=force_complex, config=config)
    return solve_problem(problem, config=config, tol=tol, max_iterations=max_iterations)


def _symbol_operator(strategy, s, basis):
    dims = strategy.state.party_dims
    effects = strategy.measurements[s.party][s.question].effects
    if basis == DICHOTOMIC:
        if len(effects) != 2:
            raise InvalidStrategyError("Observables require two outcome measurements")
        return embed(effects[0] - effects[1], s.party, dims)
    return embed(effects[s.answer], s.party, dims)


def moment_matrix(problem, strategy):
    """The moment matrix <psi| S_i^dagger S_j |psi> of an explicit strategy,
    a feasible point of the relaxation
    """
    psi = strategy.state.amplitudes
    dimension = psi.size
    vectors = []
    for word in problem.index:
        v = psi.copy()
        for s in reversed(word):
            v = _symbol_operator(strategy, s, problem.basis) @ v
        vectors.append(v)
    vectors = np.array(vectors).reshape(len(vectors), dimension)
    return vectors.conj() @ vectors.T


def dump_problem(problem):
    """A byte stable JSON document of the index, classes, fixed values,
    relations and the objective
    """
    cells = collections.defaultdict(list)
    for i in range(problem.side):
        for j in range(problem.side):
            cells[int(problem.cell_classes[i, j])].append([i, j])
    classes = []
    for k, word in enumerate(problem.class_words):
        entry = {"word": word_label(word, problem.basis), "cells": cells[k]}
        if problem.is_complex:
            entry["conjugate"] = [[i, j] for i, j in cells[k] if problem.conjugate[i, j]]
        classes.append(entry)
    document = {
        "level": problem.level,
        "basis": problem.basis,
        "eliminated": problem.eliminated,
        "complex": problem.is_complex,
        "name": problem.name,
        "monomials": [word_label(w, problem.basis) for w in problem.index],
        "classes": classes,
        "objective": [[k, round(v, 15)] for k, v in sorted(problem.objective.items())],
        "equalities": [{"coefficients": [[k, v] for k, v in sorted(c.items())], "rhs": rhs}
                       for c, rhs in problem.equalities],
    }
    return json.dumps(document, sort_keys=True)


def load_problem(text):
    """The inverse of dump_problem"""
    try:
        document = json.loads(text)
        basis = document["basis"]
        index = [parse_word(label) for label in document["monomials"]]
        side = len(index)
        cell_classes = np.zeros((side, side), dtype=np.intp)
        conjugate = np.zeros((side, side), dtype=bool)
        class_words = []
        for k, entry in enumerate(document["classes"]):
            class_words.append(parse_word(entry["word"]))
            for i, j in entry["cells"]:
                cell_classes[i, j] = k
            for i, j in entry.get("conjugate", []):
                conjugate[i, j] = True
        objective = dict((int(k), float(v)) for k, v in document["objective"])
        equalities = [(dict((int(k), float(v)) for k, v in e["coefficients"]), float(e["rhs"]))
                      for e in document["equalities"]]
        return MomentProblem(index, class_words, cell_classes, objective, basis, document["level"],
                             eliminated=document["eliminated"], is_complex=document["complex"],
                             conjugate=conjugate if document["complex"] else None,
                             equalities=equalities, name=document.get("name"))
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError("Unable to load the moment problem: %s" % str(e))
