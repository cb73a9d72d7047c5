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
Scenarios, games, behaviors and the value of a game on a behavior
"""
import itertools
import math
from fractions import Fraction
import numpy as np
from .common.config import global_config
from .common.exceptions import InvalidScenarioError, InvalidGameError, \
    InvalidBehaviorError, ScenarioMismatchError, UnsupportedScenarioError, \
    DomainError, TooLargeScenarioError, InputFormatError, DimensionMismatchError

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

ANSWER_CONSTRAINTS = (None, "even_parity", "odd_parity")
NORMALIZATION_TOLERANCE = 1e-12
NO_SIGNALING_TOLERANCE = 1e-9
CORRELATOR_TOLERANCE = 1e-12


def bit_strings(length, answer_constraint=None):
    """Return all bit strings of a given length in lexicographic order,
    optionally only the even or odd parity ones

    Args:
        length (int): The number of bits
        answer_constraint (str): None, "even_parity" or "odd_parity"

    Returns:
        list: The bit strings as str

    """
    strings = ["".join(bits) for bits in itertools.product("01", repeat=length)]
    if answer_constraint is None:
        return strings
    wanted = 0 if answer_constraint == "even_parity" else 1
    return [s for s in strings if s.count("1") % 2 == wanted]


class Party(object):
    """The question and answer alphabets of a single player

    Labels are strings, internally they are addressed by their position.
    A parity constraint removes all answers that are no bit strings of the
    requested parity, so that enumerations never visit them.
    """

    def __init__(self, questions, answers, answer_constraint=None):

        questions = [str(q) for q in questions]
        answers = [str(a) for a in answers]

        if len(questions) == 0:
            raise InvalidScenarioError("The question alphabet of a party is empty")
        if len(answers) == 0:
            raise InvalidScenarioError("The answer alphabet of a party is empty")
        if len(set(questions)) != len(questions):
            raise InvalidScenarioError("Duplicate question labels in %s" % str(questions))
        if len(set(answers)) != len(answers):
            raise InvalidScenarioError("Duplicate answer labels in %s" % str(answers))
        if answer_constraint not in ANSWER_CONSTRAINTS:
            raise InvalidScenarioError("Unknown answer constraint <%s>, supported are %s"
                                       % (str(answer_constraint), str(ANSWER_CONSTRAINTS[1:])))

        if answer_constraint is not None:
            for answer in answers:
                if len(answer) == 0 or set(answer) - set("01"):
                    raise InvalidScenarioError("The answer <%s> is not a bit string, "
                                               "required by the constraint %s" % (answer, answer_constraint))
            wanted = 0 if answer_constraint == "even_parity" else 1
            answers = [a for a in answers if a.count("1") % 2 == wanted]
            if len(answers) == 0:
                raise InvalidScenarioError("No answer satisfies the constraint %s" % answer_constraint)

        self.questions = tuple(questions)
        self.answers = tuple(answers)
        self.answer_constraint = answer_constraint
        self._question_index = dict((q, i) for i, q in enumerate(self.questions))
        self._answer_index = dict((a, i) for i, a in enumerate(self.answers))

    def question_index(self, label):
        try:
            return self._question_index[str(label)]
        except KeyError:
            raise InputFormatError("Unknown question label <%s>, known are %s"
                                   % (str(label), str(list(self.questions))))

    def answer_index(self, label):
        try:
            return self._answer_index[str(label)]
        except KeyError:
            raise InputFormatError("Unknown answer label <%s>, known are %s"
                                   % (str(label), str(list(self.answers))))

    def __eq__(self, other):
        return isinstance(other, Party) and \
            self.questions == other.questions and \
            self.answers == other.answers and \
            self.answer_constraint == other.answer_constraint

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.questions, self.answers, self.answer_constraint))

    def __repr__(self):
        return "Party(questions=%s, answers=%s, answer_constraint=%s)" % \
               (str(list(self.questions)), str(list(self.answers)), str(self.answer_constraint))


class Scenario(object):
    """An ordered list of at least two parties
    """

    def __init__(self, parties):

        parties = tuple(parties)
        if len(parties) < 2:
            raise InvalidScenarioError("A scenario requires at least two parties, got %i" % len(parties))
        for party in parties:
            if not isinstance(party, Party):
                raise InvalidScenarioError("Scenario members must be Party objects, got %s" % str(type(party)))

        self.parties = parties
        self.n_parties = len(parties)
        self.question_shape = tuple(len(p.questions) for p in parties)
        self.answer_shape = tuple(len(p.answers) for p in parties)
        self.shape = self.question_shape + self.answer_shape

    @property
    def joint_question_count(self):
        return int(np.prod(self.question_shape))

    @property
    def is_binary(self):
        return all(size == 2 for size in self.answer_shape)

    def joint_questions(self):
        return itertools.product(*[range(size) for size in self.question_shape])

    def joint_answers(self):
        return itertools.product(*[range(size) for size in self.answer_shape])

    def question_labels(self, q):
        return tuple(p.questions[i] for p, i in zip(self.parties, q))

    def answer_labels(self, a):
        return tuple(p.answers[i] for p, i in zip(self.parties, a))

    def question_indices(self, labels):
        labels = list(labels)
        if len(labels) != self.n_parties:
            raise InputFormatError("A joint question needs %i labels, got %s" % (self.n_parties, str(labels)))
        return tuple(p.question_index(label) for p, label in zip(self.parties, labels))

    def answer_indices(self, labels):
        labels = list(labels)
        if len(labels) != self.n_parties:
            raise InputFormatError("A joint answer needs %i labels, got %s" % (self.n_parties, str(labels)))
        return tuple(p.answer_index(label) for p, label in zip(self.parties, labels))

    def check_same(self, other):
        """Raise a ScenarioMismatchError naming the first differing party
        and alphabet

        Args:
            other (Scenario): The scenario to compare with

        Raises:
            ScenarioMismatchError

        """
        if self.n_parties != other.n_parties:
            raise ScenarioMismatchError("The party count differs: %i != %i" % (self.n_parties, other.n_parties))
        for index, (mine, theirs) in enumerate(zip(self.parties, other.parties)):
            if mine.questions != theirs.questions:
                raise ScenarioMismatchError("Party %i differs in its question alphabet: %s != %s"
                                            % (index, str(list(mine.questions)), str(list(theirs.questions))))
            if mine.answers != theirs.answers or mine.answer_constraint != theirs.answer_constraint:
                raise ScenarioMismatchError("Party %i differs in its answer alphabet: %s != %s"
                                            % (index, str(list(mine.answers)), str(list(theirs.answers))))

    def __eq__(self, other):
        return isinstance(other, Scenario) and self.parties == other.parties

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.parties)

    def __repr__(self):
        return "Scenario(%s)" % ", ".join(repr(p) for p in self.parties)


def answer_sign_tensor(n_parties):
    """The tensor (-1)^(a_1 + ... + a_n) over binary answers"""
    sign = np.ones((2,) * n_parties)
    for a in itertools.product((0, 1), repeat=n_parties):
        sign[a] = (-1) ** sum(a)
    return sign


def expand_question_axes(array, n_parties):
    """Append n trailing singleton axes so that a question indexed array
    broadcasts against a question + answer indexed array
    """
    return array.reshape(array.shape + (1,) * n_parties)


class Game(object):
    """A nonlocal game: a scenario, a rational input distribution pi and a
    winning predicate

    Args:
        scenario (Scenario): The alphabets
        pi (dict): Maps joint question index tuples to weights
                   (Fraction, int or rational strings like "1/4")
        predicate: Either a callable predicate(q, a) -> bool over index
                   tuples or a boolean array with shape scenario.shape
        name (str): An optional identifier

    The predicate is only evaluated on the promise set, the joint questions
    with positive weight. It is stored as a read-only boolean array that is
    False outside the promise.
    """

    def __init__(self, scenario, pi, predicate, name=None):

        self.scenario = scenario
        self.name = name

        weights = {}
        total = Fraction(0)
        for q, w in dict(pi).items():
            q = tuple(int(i) for i in q)
            if len(q) != scenario.n_parties or \
                    any(i < 0 or i >= size for i, size in zip(q, scenario.question_shape)):
                raise InvalidGameError("The joint question %s is not part of the scenario" % str(q))
            try:
                weight = Fraction(w)
            except (ValueError, TypeError, ZeroDivisionError):
                raise InvalidGameError("The weight <%s> of question %s is not a rational number"
                                       % (str(w), str(scenario.question_labels(q))))
            if weight < 0:
                raise InvalidGameError("The weight %s of question %s is negative"
                                       % (str(weight), str(scenario.question_labels(q))))
            total += weight
            if weight > 0:
                weights[q] = weight

        if total != 1:
            raise InvalidGameError("The question weights sum to %s instead of 1" % str(total))

        self.pi = weights
        self.promise = tuple(sorted(weights))

        table = np.zeros(scenario.shape, dtype=bool)
        if callable(predicate):
            for q in self.promise:
                for a in scenario.joint_answers():
                    table[q + a] = bool(predicate(q, a))
        else:
            given = np.asarray(predicate, dtype=bool)
            if given.shape != scenario.shape:
                raise InvalidGameError("The predicate table has shape %s, expected %s"
                                       % (str(given.shape), str(scenario.shape)))
            for q in self.promise:
                table[q] = given[q]
        table.setflags(write=False)
        self.predicate = table

    def pi_array(self):
        """The input distribution as float array indexed by joint questions"""
        array = np.zeros(self.scenario.question_shape)
        for q, w in self.pi.items():
            array[q] = float(w)
        return array

    def weight_table(self):
        """The float coefficients pi(q) V(a, q) with shape scenario.shape"""
        pi = expand_question_axes(self.pi_array(), self.scenario.n_parties)
        return pi * self.predicate

    def integer_weight_table(self):
        """Exact integer coefficients of pi(q) V(a, q) on a common denominator

        Returns:
            tuple: (numpy int64 array, int denominator)

        """
        denominator = 1
        for w in self.pi.values():
            denominator = denominator * w.denominator // math.gcd(denominator, w.denominator)
        pi = np.zeros(self.scenario.question_shape, dtype=np.int64)
        for q, w in self.pi.items():
            pi[q] = int(w * denominator)
        pi = expand_question_axes(pi, self.scenario.n_parties)
        return pi * self.predicate.astype(np.int64), denominator

    def is_full_support(self):
        """True if every joint question has positive weight"""
        return len(self.promise) == self.scenario.joint_question_count

    def __repr__(self):
        return "Game(name=%s, parties=%i, promise=%i)" % (str(self.name), self.scenario.n_parties,
                                                          len(self.promise))


class Behavior(object):
    """A conditional probability table P(a|q) over a scenario

    The table is stored as float array with shape question_shape +
    answer_shape. Entries down to -1e-12 are clamped to zero, every joint
    question must be normalized within 1e-12.
    """

    def __init__(self, scenario, probs, require_no_signaling=False):

        probs = np.array(probs, dtype=float)
        if probs.shape != scenario.shape:
            raise InvalidBehaviorError("The probability table has shape %s, expected %s"
                                       % (str(probs.shape), str(scenario.shape)))
        if not np.all(np.isfinite(probs)):
            raise InvalidBehaviorError("The probability table contains non finite entries")

        if probs.size and probs.min() < -NORMALIZATION_TOLERANCE:
            index = np.unravel_index(np.argmin(probs), probs.shape)
            n = scenario.n_parties
            raise InvalidBehaviorError("Negative probability %g for question %s answer %s"
                                       % (probs[index], str(scenario.question_labels(index[:n])),
                                          str(scenario.answer_labels(index[n:]))))
        probs[probs < 0.0] = 0.0

        n = scenario.n_parties
        sums = probs.sum(axis=tuple(range(n, 2 * n)))
        deviation = np.abs(sums - 1.0)
        if deviation.max() > NORMALIZATION_TOLERANCE:
            q = np.unravel_index(np.argmax(deviation), deviation.shape)
            raise InvalidBehaviorError("The probabilities of question %s sum to %.15g"
                                       % (str(scenario.question_labels(q)), sums[q]))

        probs.setflags(write=False)
        self.scenario = scenario
        self.probs = probs

        if require_no_signaling:
            violation = signaling_violation(self)
            if violation > NO_SIGNALING_TOLERANCE:
                raise InvalidBehaviorError("The behavior is signaling, maximum marginal deviation %g"
                                           % violation)

    def __call__(self, q, a):
        return float(self.probs[tuple(q) + tuple(a)])

    def __repr__(self):
        return "Behavior(shape=%s)" % str(self.probs.shape)


def signaling_violation(behavior):
    """Return the largest deviation of a marginal from its value at the first
    question of the summed out party

    For every party p the answer of p is summed out; the remaining table
    must not depend on the question of p.
    """
    scenario = behavior.scenario
    n = scenario.n_parties
    violation = 0.0
    for p in range(n):
        marginal = behavior.probs.sum(axis=n + p)
        reference = np.take(marginal, [0], axis=p)
        violation = max(violation, float(np.abs(marginal - reference).max()))
    return violation


def is_no_signaling(behavior, tol=NO_SIGNALING_TOLERANCE):
    return signaling_violation(behavior) <= tol


def uniform_behavior(scenario):
    """Every joint answer equally likely for every joint question"""
    count = int(np.prod(scenario.answer_shape))
    return Behavior(scenario, np.full(scenario.shape, 1.0 / count))


def mix(p, q, t):
    """The convex combination t P + (1 - t) Q of two behaviors"""
    p.scenario.check_same(q.scenario)
    if not 0.0 <= t <= 1.0:
        raise DomainError("The mixing weight must be in [0, 1], got %g" % t)
    return Behavior(p.scenario, t * p.probs + (1.0 - t) * q.probs)


class DeterministicStrategy(object):
    """A tuple of response functions, one per party

    responses[p][x] is the answer index party p returns on question x.
    """

    def __init__(self, responses):
        self.responses = tuple(tuple(int(a) for a in party) for party in responses)

    def validate(self, scenario):
        if len(self.responses) != scenario.n_parties:
            raise InvalidScenarioError("The strategy covers %i parties, the scenario %i"
                                       % (len(self.responses), scenario.n_parties))
        for index, (party, response) in enumerate(zip(scenario.parties, self.responses)):
            if len(response) != len(party.questions):
                raise InvalidScenarioError("The response of party %i is not total over its %i questions"
                                           % (index, len(party.questions)))
            for a in response:
                if a < 0 or a >= len(party.answers):
                    raise InvalidScenarioError("Party %i answers with index %i outside of its alphabet"
                                               % (index, a))

    def answer(self, q):
        return tuple(response[x] for response, x in zip(self.responses, q))

    def to_labels(self, scenario):
        """A list with one {question: answer} dict per party"""
        return [dict((party.questions[x], party.answers[a]) for x, a in enumerate(response))
                for party, response in zip(scenario.parties, self.responses)]

    def __eq__(self, other):
        return isinstance(other, DeterministicStrategy) and self.responses == other.responses

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.responses)

    def __repr__(self):
        return "DeterministicStrategy(%s)" % str(self.responses)


def behavior_of_deterministic(strategy, scenario):
    """The behavior with P(a|q) = 1 iff a is the answer of the strategy"""
    strategy.validate(scenario)
    probs = np.zeros(scenario.shape)
    for q in scenario.joint_questions():
        probs[q + strategy.answer(q)] = 1.0
    return Behavior(scenario, probs)


class LocalModel(object):
    """A finite mixture of deterministic strategies

    Args:
        components (list): (weight, DeterministicStrategy) tuples, weights
                           are Fractions or floats

    Float weights that sum to one within 1e-9 are renormalized.
    """

    def __init__(self, components):

        components = [(w, s) for w, s in components]
        if len(components) == 0:
            raise DomainError("A local model requires at least one component")
        for w, s in components:
            if w < 0:
                raise DomainError("Negative mixture weight %s" % str(w))
        total = sum(w for w, s in components)
        if all(isinstance(w, (int, Fraction)) for w, s in components):
            if total != 1:
                raise DomainError("The mixture weights sum to %s instead of 1" % str(total))
        else:
            if abs(float(total) - 1.0) > 1e-9:
                raise DomainError("The mixture weights sum to %.12g instead of 1" % float(total))
            components = [(float(w) / float(total), s) for w, s in components]
        self.components = tuple(components)

    def behavior(self, scenario):
        probs = np.zeros(scenario.shape)
        for w, s in self.components:
            probs += float(w) * behavior_of_deterministic(s, scenario).probs
        return Behavior(scenario, probs)


class CorrelatorTable(object):
    """The correlators E_q of a scenario with binary answers"""

    def __init__(self, scenario, values):
        if not scenario.is_binary:
            raise UnsupportedScenarioError("Correlators require binary answer alphabets, got %s"
                                           % str(scenario.answer_shape))
        values = np.array(values, dtype=float)
        if values.shape != scenario.question_shape:
            raise InvalidBehaviorError("The correlator table has shape %s, expected %s"
                                       % (str(values.shape), str(scenario.question_shape)))
        if np.abs(values).max() > 1.0 + CORRELATOR_TOLERANCE:
            raise DomainError("Correlators must lie in [-1, 1], got %.15g" % np.abs(values).max())
        values = np.clip(values, -1.0, 1.0)
        values.setflags(write=False)
        self.scenario = scenario
        self.values = values

    def __getitem__(self, q):
        return float(self.values[tuple(q)])


def correlators(behavior):
    """E_q = sum_a (-1)^(a_1 + ... + a_n) P(a|q)"""
    scenario = behavior.scenario
    if not scenario.is_binary:
        raise UnsupportedScenarioError("Correlators require binary answer alphabets, got %s"
                                       % str(scenario.answer_shape))
    n = scenario.n_parties
    values = np.tensordot(behavior.probs, answer_sign_tensor(n), axes=n)
    return CorrelatorTable(scenario, values)


def behavior_from_correlators(table):
    """The behavior with uniform marginals and the given full correlators,
    P(a|q) = (1 + (-1)^(a_1 + ... + a_n) E_q) / 2^n
    """
    scenario = table.scenario
    n = scenario.n_parties
    expanded = expand_question_axes(table.values, n)
    probs = (1.0 + expanded * answer_sign_tensor(n)) / 2 ** n
    return Behavior(scenario, probs)


def game_value(game, behavior):
    """The winning probability sum_q pi(q) sum_a V(a, q) P(a|q)"""
    game.scenario.check_same(behavior.scenario)
    value = float(np.sum(game.weight_table() * behavior.probs))
    return min(max(value, 0.0), 1.0)


def strategy_count(scenario):
    """The number of deterministic strategy tuples"""
    count = 1
    for party in scenario.parties:
        count *= len(party.answers) ** len(party.questions)
    return count


def iter_deterministic_strategies(scenario):
    """All deterministic strategies in lexicographic order"""
    per_party = [list(itertools.product(range(len(p.answers)), repeat=len(p.questions)))
                 for p in scenario.parties]
    for responses in itertools.product(*per_party):
        yield DeterministicStrategy(responses)


def check_strategy_count(scenario, cap):
    count = strategy_count(scenario)
    if count > cap:
        raise TooLargeScenarioError("The scenario has %i deterministic strategy tuples, "
                                    "the configured cap is %i" % (count, cap), count=count)
    return count


def maximize_over_deterministic(table, scenario, config=None):
    """Maximize sum_{q,a} table[q + a] P_s(a|q) over deterministic strategies s

    The first n - 1 parties are enumerated in lexicographic order, in
    chunks; the last party answers every question with its best response
    (first maximal answer). The result equals a full lexicographic search
    with first-found tie breaking among the prefixes.

    Args:
        table (numpy.ndarray): Coefficients with shape scenario.shape,
                               integer tables are scored exactly
        scenario (Scenario): The alphabets
        config (Configuration): Cap and chunk size

    Returns:
        tuple: (best score, DeterministicStrategy)

    Raises:
        TooLargeScenarioError

    """
    if config is None:
        config = global_config
    table = np.asarray(table)
    if table.shape != scenario.shape:
        raise DimensionMismatchError("The coefficient table has shape %s, expected %s"
                                     % (str(table.shape), str(scenario.shape)))
    check_strategy_count(scenario, config.MAX_STRATEGY_COUNT)

    n = scenario.n_parties
    prefix = range(n - 1)
    last_q = scenario.question_shape[-1]
    last_a = scenario.answer_shape[-1]

    options = [np.array(list(itertools.product(range(scenario.answer_shape[p]),
                                               repeat=scenario.question_shape[p])),
                        dtype=np.intp).reshape(-1, scenario.question_shape[p])
               for p in prefix]

    prefix_questions = [qp for qp in itertools.product(*[range(scenario.question_shape[p]) for p in prefix])
                        if np.any(table[qp])]

    dtype = np.int64 if np.issubdtype(table.dtype, np.integer) else float
    chunk = max(1, min(int(config.ENUMERATION_CHUNK), 2 ** 22 // max(1, last_q * last_a)))

    best_score = None
    best_responses = None
    all_prefixes = itertools.product(*[range(len(o)) for o in options])
    while True:
        block = list(itertools.islice(all_prefixes, chunk))
        if not block:
            break
        block = np.array(block, dtype=np.intp).reshape(len(block), n - 1)
        answers = [options[p][block[:, p]] for p in prefix]
        scores = np.zeros((len(block), last_q, last_a), dtype=dtype)
        for qp in prefix_questions:
            index = (slice(None),) + tuple(answers[p][:, qp[p]] for p in prefix) + (slice(None),)
            scores += table[qp][index].transpose(1, 0, 2)
        best_last = scores.argmax(axis=2)
        totals = scores.max(axis=2).sum(axis=1)
        i = int(np.argmax(totals))
        if best_score is None or totals[i] > best_score:
            best_score = totals[i]
            best_responses = tuple(tuple(int(v) for v in answers[p][i]) for p in prefix) + \
                (tuple(int(v) for v in best_last[i]),)

    if dtype is np.int64:
        best_score = int(best_score)
    else:
        best_score = float(best_score)
    return best_score, DeterministicStrategy(best_responses)


def random_behavior(scenario, rng=None):
    """A behavior with independent uniformly drawn rows, in general signaling"""
    if rng is None:
        rng = np.random.default_rng()
    n = scenario.n_parties
    probs = rng.random(scenario.shape)
    probs /= expand_question_axes(probs.sum(axis=tuple(range(n, 2 * n))), n)
    return Behavior(scenario, probs)
