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
The named games, their canonical strategies and graph colorings
"""
import itertools
from fractions import Fraction
import numpy as np
from .common.config import global_config
from .common.exceptions import InvalidGameError, InvalidScenarioError, DomainError
from .games import Party, Scenario, Game, bit_strings
from .linalg import phi_plus, ghz_state, PAULI_X, PAULI_Y, PAULI_Z
from .quantum import dichotomic_strategy, magic_square_strategy, winning_probability
from .classical import classical_value
from .npa import npa_bound

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

PERFECT_TOLERANCE = 1e-9
NPA_PERFECT_TOLERANCE = 1e-6


def _binary_party(questions):
    return Party([str(x) for x in range(questions)], ["0", "1"])


def _uniform(questions):
    questions = list(questions)
    return dict((q, Fraction(1, len(questions))) for q in questions)


def xor_game(f, pi=None, name="xor"):
    """The two party game won iff a + b = f(x, y) mod 2

    Args:
        f (list): Truth table f[x][y] with entries 0 or 1
        pi (dict): (x, y) -> weight, uniform if None

    """
    table = np.asarray(f)
    if table.ndim != 2 or table.size == 0:
        raise InvalidGameError("The XOR table must be a non empty matrix, got shape %s" % str(table.shape))
    if not np.all(np.isin(table, (0, 1))):
        raise InvalidGameError("The XOR table must only contain 0 and 1")
    table = table.astype(int)
    nx, ny = table.shape
    scenario = Scenario([_binary_party(nx), _binary_party(ny)])
    if pi is None:
        pi = _uniform(scenario.joint_questions())

    def predicate(q, a):
        return (a[0] + a[1]) % 2 == table[q]

    return Game(scenario, pi, predicate, name=name)


def chsh_game():
    """The XOR game of f(x, y) = x AND y with uniform questions"""
    return xor_game([[0, 0], [0, 1]], name="chsh")


def ghz_game():
    """Three players, promise x_1 + x_2 + x_3 even, uniform over the promise.
    The answers must have even parity on 000 and odd parity otherwise.
    """
    scenario = Scenario([_binary_party(2) for _ in range(3)])
    promise = [q for q in scenario.joint_questions() if sum(q) % 2 == 0]
    parity = {}
    for q in promise:
        parity[q] = 0 if q == (0, 0, 0) else 1
        if parity[q] != int(q[0] or q[1] or q[2]):
            raise InvalidGameError("The parity table disagrees with x1 OR x2 OR x3 at %s" % str(q))

    def predicate(q, a):
        return sum(a) % 2 == parity[q]

    return Game(scenario, _uniform(promise), predicate, name="ghz")


def magic_square_game():
    """Alice fills row x with an even parity bit string, Bob column y with an
    odd parity bit string; they win iff the shared cell agrees
    """
    alice = Party(["0", "1", "2"], bit_strings(3), answer_constraint="even_parity")
    bob = Party(["0", "1", "2"], bit_strings(3), answer_constraint="odd_parity")
    scenario = Scenario([alice, bob])

    def predicate(q, a):
        x, y = q
        return alice.answers[a[0]][y] == bob.answers[a[1]][x]

    return Game(scenario, _uniform(scenario.joint_questions()), predicate, name="magic_square")


class GraphSpec(object):
    """A simple undirected graph with string vertex labels"""

    def __init__(self, vertices, edges):
        vertices = [str(v) for v in vertices]
        if len(set(vertices)) != len(vertices):
            raise InvalidScenarioError("Duplicate vertex labels in %s" % str(vertices))
        known = set(vertices)
        seen = set()
        normalized = []
        for edge in edges:
            u, v = [str(w) for w in edge]
            if u == v:
                raise InvalidScenarioError("Self loop at vertex %s" % u)
            if u not in known or v not in known:
                raise InvalidScenarioError("The edge (%s, %s) references an unknown vertex" % (u, v))
            key = frozenset((u, v))
            if key in seen:
                raise InvalidScenarioError("Duplicate edge (%s, %s)" % (u, v))
            seen.add(key)
            normalized.append((u, v))
        self.vertices = tuple(vertices)
        self.edges = tuple(normalized)

    def has_edge(self, u, v):
        return (u, v) in self.edges or (v, u) in self.edges

    @classmethod
    def complete(cls, n):
        vertices = [str(v) for v in range(n)]
        return cls(vertices, itertools.combinations(vertices, 2))

    @classmethod
    def path(cls, n):
        vertices = [str(v) for v in range(n)]
        return cls(vertices, zip(vertices[:-1], vertices[1:]))

    @classmethod
    def cycle(cls, n):
        vertices = [str(v) for v in range(n)]
        return cls(vertices, list(zip(vertices[:-1], vertices[1:])) + [(vertices[-1], vertices[0])])


def coloring_support(graph):
    """The self pairs and both orientations of every edge"""
    index = dict((v, i) for i, v in enumerate(graph.vertices))
    pairs = [(index[v], index[v]) for v in graph.vertices]
    for u, v in graph.edges:
        pairs.append((index[u], index[v]))
        pairs.append((index[v], index[u]))
    return sorted(pairs)


def coloring_game(graph, colors, pi=None, name=None):
    """Both players get a vertex and answer a color; equal vertices need equal
    colors, adjacent vertices different colors

    Args:
        graph (GraphSpec): The graph
        colors (int): Number of colors, >= 1
        pi (dict): (u label, v label) -> weight, uniform over the self pairs
                   and ordered edges if None

    """
    if int(colors) != colors or colors < 1:
        raise DomainError("The number of colors must be a positive integer, got %s" % str(colors))
    if len(graph.vertices) == 0:
        raise InvalidGameError("The coloring game needs a graph with at least one vertex")
    party = Party(graph.vertices, [str(c) for c in range(int(colors))])
    scenario = Scenario([party, party])
    if pi is None:
        weights = _uniform(coloring_support(graph))
    else:
        weights = dict((scenario.question_indices(pair), w) for pair, w in dict(pi).items())

    def predicate(q, a):
        u, v = graph.vertices[q[0]], graph.vertices[q[1]]
        if u == v:
            return a[0] == a[1]
        if graph.has_edge(u, v):
            return a[0] != a[1]
        return True

    if name is None:
        name = "coloring(%i)" % int(colors)
    return Game(scenario, weights, predicate, name=name)


def coloring_proviso(game, graph):
    """True if every self pair and ordered edge has positive weight, the
    condition under which the classical value is 1 iff colors >= chi
    """
    return all(q in game.pi for q in coloring_support(graph))


class ChromaticNumbers(object):
    """chi is exact, chi_q_upper is the least number of colors whose level
    k relaxation admits value 1. It is no quantum chromatic number, only
    the candidates that pass level k.
    """

    def __init__(self, chi, chi_q_upper, level):
        self.chi = chi
        self.chi_q_upper = chi_q_upper
        self.level = level

    def __repr__(self):
        return "ChromaticNumbers(chi=%i, chi_q_upper=%i, level=%i)" % (self.chi, self.chi_q_upper,
                                                                       self.level)


def chromatic_numbers(graph, c_max=None, level=1, config=None):
    """The chromatic number by enumeration and the NPA level k candidate

    Raises:
        DomainError: If no c <= c_max colors the graph
        TooLargeScenarioError

    """
    if config is None:
        config = global_config
    if c_max is None:
        c_max = len(graph.vertices)

    chi = None
    for c in range(1, c_max + 1):
        value, _ = classical_value(coloring_game(graph, c), config=config)
        if value == 1:
            chi = c
            break
    if chi is None:
        raise DomainError("No coloring with at most %i colors exists" % c_max)

    chi_q_upper = chi
    for c in range(1, chi):
        result = npa_bound(coloring_game(graph, c), level=level, basis="projector", config=config)
        if result.bound >= 1.0 - NPA_PERFECT_TOLERANCE:
            chi_q_upper = c
            break
    return ChromaticNumbers(chi, chi_q_upper, level)


def chsh_strategy():
    """|Phi+>, A_0 = Z, A_1 = X, B_0 = (Z + X)/sqrt(2), B_1 = (Z - X)/sqrt(2)"""
    root = np.sqrt(2.0)
    return dichotomic_strategy(phi_plus(), [[PAULI_Z, PAULI_X],
                                            [(PAULI_Z + PAULI_X) / root, (PAULI_Z - PAULI_X) / root]])


def ghz_strategy():
    """The GHZ state, every player measures X on question 0 and Y on 1"""
    return dichotomic_strategy(ghz_state(3), [[PAULI_X, PAULI_Y] for _ in range(3)])


def parity_obstruction(grid):
    """Row parities and column parities of a 3 x 3 bit grid"""
    grid = np.asarray(grid, dtype=int).reshape(3, 3)
    return tuple(int(v) for v in grid.sum(axis=1) % 2), tuple(int(v) for v in grid.sum(axis=0) % 2)


def perfect_grids():
    """All 3 x 3 bit grids with even rows and odd columns (there are none)"""
    found = []
    for bits in itertools.product((0, 1), repeat=9):
        rows, columns = parity_obstruction(bits)
        if rows == (0, 0, 0) and columns == (1, 1, 1):
            found.append(bits)
    return found


class PseudoTelepathy(object):

    def __init__(self, classical, quantum):
        self.classical = classical
        self.quantum = quantum

    @property
    def is_pseudo_telepathic(self):
        return self.classical < 1 and self.quantum >= 1.0 - PERFECT_TOLERANCE


def pseudo_telepathy(game, strategy, config=None):
    classical, _ = classical_value(game, config=config)
    return PseudoTelepathy(classical, winning_probability(game, strategy))


class CatalogEntry(object):

    def __init__(self, name, description, build, strategy=None, parameters=None):
        self.name = name
        self.description = description
        self.build = build
        self.strategy = strategy
        self.parameters = parameters or []


CATALOG = dict((entry.name, entry) for entry in [
    CatalogEntry("chsh", "XOR game of x AND y, uniform questions", chsh_game, chsh_strategy),
    CatalogEntry("ghz", "Three player parity game on the promise x1 + x2 + x3 even", ghz_game,
                 ghz_strategy),
    CatalogEntry("magic_square", "Rows of even and columns of odd parity that agree on the shared cell",
                 magic_square_game, magic_square_strategy),
    CatalogEntry("coloring", "Graph coloring game, uniform over self pairs and ordered edges",
                 coloring_game, None, ["graph", "colors"]),
])
