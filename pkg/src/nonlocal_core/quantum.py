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
Explicit quantum strategies: Born rule behaviors, game and Bell operators,
the magic square strategy and seesaw refinement
"""
import itertools
import numpy as np
from .common.config import global_config
from .common.exceptions import InvalidStrategyError, DimensionMismatchError, UnsupportedScenarioError
from .common.messages_logger import MessageLogger
from .games import Behavior, game_value, expand_question_axes, bit_strings
from .linalg import StateVector, as_matrix, is_hermitian, kron, tensor, max_eigenvalue, \
    IDENTITY, PAULI_X, PAULI_Y, PAULI_Z
from .bell import correlator_form
from .solvers import SemidefiniteProgram, sdp_solve

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

EFFECT_TOLERANCE = 1e-9


class Measurement(object):
    """A measurement given by its effects, one per outcome

    Args:
        effects (list): Square matrices, positive and summing to identity
        outcomes (list): Optional outcome labels
        projective (bool): Also require orthogonal projectors

    """

    def __init__(self, effects, outcomes=None, projective=True):

        effects = [as_matrix(e) for e in effects]
        if len(effects) == 0:
            raise InvalidStrategyError("A measurement needs at least one effect")
        d = effects[0].shape[0]
        for e in effects:
            if e.shape != (d, d):
                raise DimensionMismatchError("All effects must have shape (%i, %i), got %s" % (d, d, str(e.shape)))
            if not is_hermitian(e, EFFECT_TOLERANCE):
                raise InvalidStrategyError("An effect is not Hermitian")
            if np.linalg.eigvalsh((e + e.conj().T) / 2.0).min() < -EFFECT_TOLERANCE:
                raise InvalidStrategyError("An effect is not positive semidefinite")
        total = sum(effects)
        if np.abs(total - np.eye(d)).max() > EFFECT_TOLERANCE:
            raise InvalidStrategyError("The effects sum to the identity only within %g"
                                       % float(np.abs(total - np.eye(d)).max()))
        if projective:
            for i, e in enumerate(effects):
                if np.abs(e @ e - e).max() > EFFECT_TOLERANCE:
                    raise InvalidStrategyError("Effect %i is not a projector" % i)
                for j in range(i + 1, len(effects)):
                    if np.abs(e @ effects[j]).max() > EFFECT_TOLERANCE:
                        raise InvalidStrategyError("Effects %i and %i are not orthogonal" % (i, j))

        self.effects = tuple(effects)
        self.outcomes = None if outcomes is None else tuple(str(o) for o in outcomes)
        if self.outcomes is not None and len(self.outcomes) != len(effects):
            raise InvalidStrategyError("%i outcome labels for %i effects" % (len(self.outcomes), len(effects)))
        self.projective = projective
        self.dimension = d


class DichotomicObservable(object):
    """A Hermitian matrix that squares to the identity"""

    def __init__(self, matrix):
        matrix = as_matrix(matrix)
        if not is_hermitian(matrix, EFFECT_TOLERANCE):
            raise InvalidStrategyError("A dichotomic observable must be Hermitian")
        if np.abs(matrix @ matrix - np.eye(matrix.shape[0])).max() > EFFECT_TOLERANCE:
            raise InvalidStrategyError("A dichotomic observable must square to the identity")
        self.matrix = matrix

    def measurement(self):
        """Outcome 0 is the +1 eigenspace, outcome 1 the -1 eigenspace"""
        identity = np.eye(self.matrix.shape[0])
        return Measurement([(identity + self.matrix) / 2.0, (identity - self.matrix) / 2.0])


class QuantumStrategy(object):
    """A shared pure state and per party, per question measurements

    Args:
        state (StateVector): The shared state, one factor per party
        measurements (list): measurements[p][x] is the Measurement of
                             party p on question x

    """

    def __init__(self, state, measurements):

        measurements = [[m for m in party] for party in measurements]
        if len(measurements) != len(state.party_dims):
            raise InvalidStrategyError("%i measurement families for %i state factors"
                                       % (len(measurements), len(state.party_dims)))
        for p, (family, d) in enumerate(zip(measurements, state.party_dims)):
            for x, m in enumerate(family):
                if not isinstance(m, Measurement):
                    raise InvalidStrategyError("Party %i question %i is no Measurement" % (p, x))
                if m.dimension != d:
                    raise DimensionMismatchError("Party %i question %i measures dimension %i, "
                                                 "the state factor has %i" % (p, x, m.dimension, d))
        self.state = state
        self.measurements = tuple(tuple(family) for family in measurements)

    def validate(self, scenario):
        if scenario.n_parties != len(self.measurements):
            raise InvalidStrategyError("The strategy has %i parties, the scenario %i"
                                       % (len(self.measurements), scenario.n_parties))
        for p, (party, family) in enumerate(zip(scenario.parties, self.measurements)):
            if len(family) != len(party.questions):
                raise InvalidStrategyError("Party %i has %i measurements for %i questions"
                                           % (p, len(family), len(party.questions)))
            for x, m in enumerate(family):
                if len(m.effects) != len(party.answers):
                    raise InvalidStrategyError("Party %i question %s has %i outcomes for %i answers"
                                               % (p, party.questions[x], len(m.effects), len(party.answers)))
                if m.outcomes is not None and m.outcomes != party.answers:
                    raise InvalidStrategyError("Party %i question %s has outcome labels %s, expected %s"
                                               % (p, party.questions[x], str(list(m.outcomes)),
                                                  str(list(party.answers))))

    def effect_array(self, p):
        """The effects of party p stacked to shape (questions, answers, d, d)"""
        return np.array([[e for e in m.effects] for m in self.measurements[p]], dtype=complex)

    def with_state(self, state):
        return QuantumStrategy(state, self.measurements)

    def with_measurements(self, p, family):
        measurements = list(self.measurements)
        measurements[p] = tuple(family)
        return QuantumStrategy(self.state, measurements)


def dichotomic_strategy(state, observables):
    """A strategy from +-1 observables, observables[p][x] is a matrix"""
    return QuantumStrategy(state, [[DichotomicObservable(o).measurement() for o in party]
                                   for party in observables])


def strategy_behavior(strategy, scenario):
    """P(a|q) = <psi| E^{q_1}_{a_1} (x) ... (x) E^{q_n}_{a_n} |psi>

    The effects are applied factor by factor to the state tensor. Rows are
    renormalized to absorb the tolerance the effects are validated with.
    """
    strategy.validate(scenario)
    n = scenario.n_parties
    psi = strategy.state.tensor()
    t = psi
    for p in range(n):
        t = np.tensordot(strategy.effect_array(p), t, axes=([3], [p]))
        t = np.moveaxis(t, 2, 2 + p)
        t = np.moveaxis(t, [0, 1], [-2, -1])
    probs = np.tensordot(psi.conj(), t, axes=(list(range(n)), list(range(n)))).real
    order = [2 * p for p in range(n)] + [2 * p + 1 for p in range(n)]
    probs = np.transpose(probs, order)
    probs = np.clip(probs, 0.0, None)
    sums = probs.sum(axis=tuple(range(n, 2 * n)))
    probs = probs / expand_question_axes(sums, n)
    return Behavior(scenario, probs)


def winning_probability(game, strategy):
    return game_value(game, strategy_behavior(strategy, game.scenario))


def _joint_effect(strategy, q, a):
    return tensor(*[strategy.measurements[p][x].effects[b] for p, (x, b) in enumerate(zip(q, a))])


def game_operator(game, strategy):
    """sum_q pi(q) sum_a V(a, q) E^{q_1}_{a_1} (x) ... (x) E^{q_n}_{a_n}"""
    scenario = game.scenario
    strategy.validate(scenario)
    dimension = strategy.state.dimension
    operator = np.zeros((dimension, dimension), dtype=complex)
    for q in game.promise:
        weight = float(game.pi[q])
        for a in scenario.joint_answers():
            if game.predicate[q + a]:
                operator += weight * _joint_effect(strategy, q, a)
    return (operator + operator.conj().T) / 2.0


def bell_operator(f, observables):
    """constant I + sum_q beta_q A_{q_1} (x) ... (x) A_{q_n} for a functional
    with correlator form and +-1 observables observables[p][x]
    """
    form = correlator_form(f)
    mats = [[DichotomicObservable(o).matrix for o in party] for party in observables]
    dimension = int(np.prod([party[0].shape[0] for party in mats]))
    operator = form.constant * np.eye(dimension, dtype=complex)
    for q in itertools.product(*[range(s) for s in form.beta.shape]):
        if form.beta[q] != 0.0:
            operator += form.beta[q] * tensor(*[mats[p][x] for p, x in enumerate(q)])
    return operator


# Mermin-Peres square, row x column y, two qubits per player
MAGIC_SQUARE_OBSERVABLES = (
    (kron(PAULI_Z, IDENTITY), kron(IDENTITY, PAULI_Z), kron(PAULI_Z, PAULI_Z)),
    (kron(IDENTITY, PAULI_X), kron(PAULI_X, IDENTITY), kron(PAULI_X, PAULI_X)),
    (-kron(PAULI_Z, PAULI_X), -kron(PAULI_X, PAULI_Z), kron(PAULI_Y, PAULI_Y)),
)


def joint_measurement(observables, answer_constraint):
    """The joint measurement of commuting +-1 observables, outcome bit k is
    0 for eigenvalue +1 of observable k

    Only outcomes of the requested parity are kept, the projectors of the
    others must vanish.
    """
    d = observables[0].shape[0]
    identity = np.eye(d)
    effects = []
    outcomes = []
    for bits in bit_strings(len(observables)):
        projector = identity.astype(complex)
        for bit, o in zip(bits, observables):
            projector = projector @ ((identity + (-1) ** int(bit) * o) / 2.0)
        if bits in bit_strings(len(observables), answer_constraint):
            effects.append(projector)
            outcomes.append(bits)
        elif np.abs(projector).max() > 1e-12:
            raise InvalidStrategyError("The observables do not fix the parity %s, outcome %s occurs"
                                       % (answer_constraint, bits))
    return Measurement(effects, outcomes=outcomes)


def magic_square_strategy():
    """Two EPR pairs and the row and column measurements of the square

    The state |Phi+>_{12} |Phi+>_{34} is regrouped so that Alice holds the
    qubits 1 and 3, Bob 2 and 4. Row products must be +I and column
    products -I, otherwise the joint measurements refuse to build.
    """
    epr = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    amplitudes = np.kron(epr, epr).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3)
    state = StateVector(amplitudes.ravel(), (4, 4))

    rows = [joint_measurement(MAGIC_SQUARE_OBSERVABLES[x], "even_parity") for x in range(3)]
    columns = [joint_measurement([MAGIC_SQUARE_OBSERVABLES[x][y] for x in range(3)], "odd_parity")
               for y in range(3)]
    return QuantumStrategy(state, [rows, columns])


def _random_projective(d, outcomes, rng):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    effects = [np.zeros((d, d), dtype=complex) for _ in range(outcomes)]
    for column in range(d):
        v = q[:, column:column + 1]
        effects[column % outcomes] += v @ v.conj().T
    return Measurement(effects)


def random_strategy(scenario, dims, seed=None):
    """A seeded random pure state and random projective measurements,
    basis vectors are dealt round robin to the outcomes
    """
    rng = np.random.default_rng(seed)
    dims = tuple(int(d) for d in dims)
    if len(dims) != scenario.n_parties:
        raise DimensionMismatchError("%i dimensions for %i parties" % (len(dims), scenario.n_parties))
    total = int(np.prod(dims))
    amplitudes = rng.normal(size=total) + 1j * rng.normal(size=total)
    state = StateVector.normalized(amplitudes, dims)
    measurements = [[_random_projective(d, len(party.answers), rng) for _ in party.questions]
                    for d, party in zip(dims, scenario.parties)]
    return QuantumStrategy(state, measurements)


class SeesawResult(object):

    def __init__(self, strategy, value, history, converged, iterations):
        self.strategy = strategy
        self.value = value
        self.history = history
        self.converged = converged
        self.iterations = iterations

    def __repr__(self):
        return "SeesawResult(value=%.12g, converged=%s, iterations=%i)" % (self.value, self.converged,
                                                                           self.iterations)


def _partial_operators(game, strategy, p):
    """K[x][a] with value = sum_{x,a} tr(E^x_a K[x][a]) for the effects of
    party p, all other parties and the state fixed
    """
    scenario = game.scenario
    n = scenario.n_parties
    dims = strategy.state.party_dims
    psi = np.moveaxis(strategy.state.tensor(), p, 0).reshape(dims[p], -1)
    others = [o for o in range(n) if o != p]
    operators = [[np.zeros((dims[p], dims[p]), dtype=complex) for _ in scenario.parties[p].answers]
                 for _ in scenario.parties[p].questions]
    for q in game.promise:
        weight = float(game.pi[q])
        for a in scenario.joint_answers():
            if not game.predicate[q + a]:
                continue
            rest = tensor(*[strategy.measurements[o][q[o]].effects[a[o]] for o in others])
            operators[q[p]][a[p]] += weight * (psi @ rest.T @ psi.conj().T)
    return operators


def _measurement_value(effects, operators):
    return float(sum(np.trace(e @ k).real for e, k in zip(effects, operators)))


def _best_measurement(current, operators):
    """The best projective update for one question

    Two outcomes: the projector onto the positive part of K_0 - K_1.
    More outcomes: eigenbases of the K_a are tried, every eigenvector goes
    to its best outcome; the current measurement is kept unless beaten.
    """
    d = current.dimension
    if len(operators) == 2:
        values, vectors = np.linalg.eigh(operators[0] - operators[1])
        positive = vectors[:, values > 0]
        e0 = positive @ positive.conj().T
        candidate = [e0, np.eye(d) - e0]
        candidates = [candidate]
    else:
        candidates = []
        for k in list(operators) + [sum(operators)]:
            _, vectors = np.linalg.eigh((k + k.conj().T) / 2.0)
            effects = [np.zeros((d, d), dtype=complex) for _ in operators]
            for column in range(d):
                v = vectors[:, column:column + 1]
                scores = [float((v.conj().T @ o @ v).real[0, 0]) for o in operators]
                effects[int(np.argmax(scores))] += v @ v.conj().T
            candidates.append(effects)

    best = current
    best_value = _measurement_value(current.effects, operators)
    for effects in candidates:
        value = _measurement_value(effects, operators)
        if value > best_value + 1e-14:
            best = Measurement(effects, outcomes=current.outcomes)
            best_value = value
    return best


def seesaw_refine(game, strategy, iterations=None, tol=None, config=None):
    """Alternate the state (top eigenvector of the game operator) and the
    measurements of every party (best response to the rest)

    Every step is nondecreasing in value. Stops when a round changes the
    value less than tol or after the given number of rounds; the latter is
    reported through the converged flag.

    Returns:
        SeesawResult

    """
    if config is None:
        config = global_config
    if iterations is None:
        iterations = config.SEESAW_ITERATIONS
    if tol is None:
        tol = config.SEESAW_TOLERANCE
    log = MessageLogger(config=config, component="seesaw_refine")

    strategy.validate(game.scenario)
    value = winning_probability(game, strategy)
    history = [value]
    converged = False
    rounds = 0
    change = 0.0

    for rounds in range(1, iterations + 1):
        top, vector = max_eigenvalue(game_operator(game, strategy))
        if top > value:
            strategy = strategy.with_state(StateVector.normalized(vector, strategy.state.party_dims))

        for p in range(game.scenario.n_parties):
            operators = _partial_operators(game, strategy, p)
            family = [_best_measurement(m, k) for m, k in zip(strategy.measurements[p], operators)]
            strategy = strategy.with_measurements(p, family)

        new_value = winning_probability(game, strategy)
        history.append(new_value)
        change = new_value - value
        value = max(value, new_value)
        log.progress(rounds, value=new_value, change=change)
        if abs(change) < tol:
            converged = True
            break

    log.outcome(converged, rounds, value, change=change)
    return SeesawResult(strategy, value, history, converged, rounds)


def xor_structure(game):
    """The table f of a two party XOR game, V(a, b, x, y) = [a + b = f(x, y) mod 2]

    Raises:
        UnsupportedScenarioError

    """
    scenario = game.scenario
    if scenario.n_parties != 2 or not scenario.is_binary:
        raise UnsupportedScenarioError("XOR games have two parties with binary answers")
    f = np.zeros(scenario.question_shape, dtype=int)
    for q in game.promise:
        v = game.predicate[q]
        if v[0, 0] == v[1, 1] and v[0, 1] == v[1, 0] and v[0, 0] != v[0, 1]:
            f[q] = 0 if v[0, 0] else 1
        else:
            raise UnsupportedScenarioError("The predicate of question %s is no XOR condition"
                                           % str(scenario.question_labels(q)))
    return f


def xor_quantum_value(game, config=None):
    """The entangled value of a XOR game from the Gram matrix program

    max sum pi(x, y) (1 + (-1)^f(x, y) <u_x, v_y>) / 2 over unit vectors,
    solved as a semidefinite program over the Gram matrix of the u_x, v_y.

    Returns:
        tuple: (value, SdpResult)

    """
    if config is None:
        config = global_config
    f = xor_structure(game)
    nx, ny = game.scenario.question_shape
    side = nx + ny
    classes = np.zeros((side, side), dtype=np.intp)
    next_class = 1
    for i in range(side):
        for j in range(i + 1, side):
            classes[i, j] = classes[j, i] = next_class
            next_class += 1
    objective = {}
    constant = 0.0
    for (x, y), w in game.pi.items():
        objective[int(classes[x, nx + y])] = objective.get(int(classes[x, nx + y]), 0.0) + \
            float(w) * (-1) ** int(f[x, y]) / 2.0
        constant += float(w) / 2.0
    result = sdp_solve(SemidefiniteProgram(classes, objective, fixed={0: 1.0}), config=config)
    return constant + result.value, result
