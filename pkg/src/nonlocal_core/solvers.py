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
Dense linear and semidefinite program solvers

The linear programs are solved with a two phase tableau simplex that uses
Bland's rule, the semidefinite programs with an over-relaxed ADMM that
alternates between the affine set of structured matrices and the cone of
positive semidefinite matrices.
"""
import numpy as np
from .common.config import global_config
from .common.exceptions import SolverError, DimensionMismatchError, NonHermitianError
from .common.messages_logger import MessageLogger

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

HERMITIAN_TOLERANCE = 1e-10
# Relative singular value cutoff of the relation projector
RELATION_RCOND = 1e-10
# ADMM iterations between progress records
PROGRESS_INTERVAL = 1000


class LinearProgram(object):
    """maximize c x subject to A x = b and x >= lower

    Args:
        objective (array): The vector c
        a_eq (array): The m x n constraint matrix A
        b_eq (array): The right hand side b
        lower (array): Variable lower bounds, zero by default

    """

    def __init__(self, objective, a_eq, b_eq, lower=None):

        self.objective = np.asarray(objective, dtype=float).ravel()
        n = self.objective.size
        self.a_eq = np.asarray(a_eq, dtype=float).reshape(-1, n)
        self.b_eq = np.asarray(b_eq, dtype=float).ravel()
        if self.a_eq.shape[0] != self.b_eq.size:
            raise DimensionMismatchError("The constraint matrix has %i rows, the right hand side %i entries"
                                         % (self.a_eq.shape[0], self.b_eq.size))
        if not np.all(np.isfinite(self.b_eq)):
            raise DimensionMismatchError("The right hand side is not finite")
        if lower is None:
            lower = np.zeros(n)
        self.lower = np.asarray(lower, dtype=float).ravel()
        if self.lower.size != n:
            raise DimensionMismatchError("%i lower bounds for %i variables" % (self.lower.size, n))


class LpResult(object):
    """status, value, primal solution and the equality duals y with
    A^T y >= c at optimality
    """

    def __init__(self, status, value=None, primal=None, dual=None, iterations=0):
        self.status = status
        self.value = value
        self.primal = primal
        self.dual = dual
        self.iterations = iterations

    def __repr__(self):
        return "LpResult(status=%s, value=%s)" % (self.status, str(self.value))


class _Tableau(object):
    """Constraint rows [A | I | b] of a standard form problem with a
    basis of one column per row
    """

    def __init__(self, a, b, tol):
        m, n = a.shape
        self.n = n
        self.m = m
        self.tol = tol
        self.table = np.hstack([a, np.eye(m), b.reshape(-1, 1)])
        self.basis = list(range(n, n + m))
        self.iterations = 0

    @property
    def rhs(self):
        return self.table[:, -1]

    def pivot(self, row, col):
        self.table[row] /= self.table[row, col]
        column = self.table[:, col].copy()
        column[row] = 0.0
        self.table -= np.outer(column, self.table[row])
        self.basis[row] = col
        self.iterations += 1

    def optimize(self, cost, allowed, max_iterations):
        """Maximize cost over the columns in allowed with Bland's rule

        Returns:
            bool: False if the problem is unbounded

        """
        allowed = np.asarray(allowed)
        while True:
            if self.iterations > max_iterations:
                raise SolverError("The simplex did not terminate within %i pivots" % max_iterations,
                                  status="iteration_limit")
            body = self.table[:, :-1]
            reduced = cost[allowed] - cost[self.basis] @ body[:, allowed]
            candidates = np.nonzero(reduced > self.tol)[0]
            if candidates.size == 0:
                return True
            col = int(allowed[candidates[0]])

            entries = body[:, col]
            rows = np.nonzero(entries > self.tol)[0]
            if rows.size == 0:
                return False
            ratios = self.rhs[rows] / entries[rows]
            best = ratios.min()
            ties = rows[ratios <= best + self.tol * max(1.0, abs(best))]
            row = int(min(ties, key=lambda r: self.basis[r]))
            self.pivot(row, col)

    def drive_out_artificials(self):
        """Pivot basic artificial columns out, drop rows that are redundant"""
        row = 0
        while row < self.m:
            if self.basis[row] >= self.n:
                entries = np.abs(self.table[row, :self.n])
                cols = np.nonzero(entries > self.tol)[0]
                if cols.size:
                    self.pivot(row, int(cols[0]))
                else:
                    self.table = np.delete(self.table, row, axis=0)
                    del self.basis[row]
                    self.m -= 1
                    continue
            row += 1


def lp_solve(problem, config=None):
    """Solve a LinearProgram

    Args:
        problem (LinearProgram): The program
        config (Configuration): Tolerance source

    Returns:
        LpResult: optimal, infeasible or unbounded

    """
    if config is None:
        config = global_config
    tol = config.LP_TOLERANCE
    log = MessageLogger(config=config, component="lp_solve")

    c = problem.objective
    a = problem.a_eq.copy()
    b = problem.b_eq - a @ problem.lower
    m, n = a.shape

    signs = np.where(b < 0, -1.0, 1.0)
    a *= signs[:, None]
    b = b * signs

    tableau = _Tableau(a, b, tol)
    max_iterations = 50 * (m + n) + 1000

    phase_one = np.concatenate([np.zeros(n), -np.ones(m)])
    tableau.optimize(phase_one, np.arange(n + m), max_iterations)
    infeasibility = float(sum(tableau.rhs[i] for i, j in enumerate(tableau.basis) if j >= n))
    if infeasibility > tol * max(1.0, float(np.abs(b).max()) if m else 1.0):
        log.info("Linear program with %i variables and %i rows is infeasible (%g)" % (n, m, infeasibility))
        return LpResult(INFEASIBLE, iterations=tableau.iterations)

    tableau.drive_out_artificials()

    cost = np.concatenate([c, np.zeros(m)])
    if not tableau.optimize(cost, np.arange(n), max_iterations):
        log.info("Linear program with %i variables and %i rows is unbounded" % (n, m))
        return LpResult(UNBOUNDED, iterations=tableau.iterations)

    x = np.zeros(n)
    for row, col in enumerate(tableau.basis):
        x[col] = tableau.rhs[row]
    x = np.maximum(x, 0.0) + problem.lower

    basic_cost = cost[tableau.basis]
    dual = (basic_cost @ tableau.table[:, n:n + m]) * signs
    value = float(c @ x)

    log.debug("Simplex finished after %i pivots, value %.12g, dual value %.12g"
              % (tableau.iterations, value, float(problem.b_eq @ dual)))
    return LpResult(OPTIMAL, value=value, primal=x, dual=dual,
                    iterations=tableau.iterations)


def check_hermitian(a, tol=HERMITIAN_TOLERANCE):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("A square matrix is required, got shape %s" % str(a.shape))
    deviation = float(np.abs(a - a.conj().T).max()) if a.size else 0.0
    if deviation > tol:
        raise NonHermitianError("The matrix deviates from its adjoint by %g" % deviation)
    return a


def psd_project(a):
    """The Frobenius nearest positive semidefinite matrix, obtained by
    clipping the negative eigenvalues
    """
    a = check_hermitian(a)
    a = (a + a.conj().T) / 2.0
    values, vectors = np.linalg.eigh(a)
    values = np.clip(values, 0.0, None)
    result = (vectors * values) @ vectors.conj().T
    return (result + result.conj().T) / 2.0


class SemidefiniteProgram(object):
    """maximize sum_k c_k x_k over matrices Gamma whose cells are tied to
    class values x_k, subject to Gamma >= 0

    Args:
        cell_classes (array): side x side integer array with the class of
                              every cell
        objective (dict): class -> real coefficient
        fixed (dict): class -> fixed value, e.g. the normalization and
                      the zero class
        conjugate (array): Optional boolean side x side array, True where
                           the cell holds the complex conjugate of its
                           class value. Its presence switches to the
                           Hermitian formulation.
        equalities (list): Optional (dict class -> coefficient, rhs)
                           relations between class values

    """

    def __init__(self, cell_classes, objective, fixed=None, conjugate=None, equalities=None):

        self.cell_classes = np.asarray(cell_classes, dtype=np.intp)
        side = self.cell_classes.shape[0]
        if self.cell_classes.shape != (side, side):
            raise DimensionMismatchError("The class layout must be square, got %s"
                                         % str(self.cell_classes.shape))
        self.side = side
        self.class_count = int(self.cell_classes.max()) + 1 if side else 0
        self.objective = dict((int(k), float(v)) for k, v in dict(objective).items())
        self.fixed = dict((int(k), complex(v)) for k, v in dict(fixed or {}).items())
        self.is_complex = conjugate is not None
        if conjugate is None:
            conjugate = np.zeros((side, side), dtype=bool)
        self.conjugate = np.asarray(conjugate, dtype=bool)
        self.equalities = [(dict((int(k), float(v)) for k, v in coefficients.items()), float(rhs))
                           for coefficients, rhs in (equalities or [])]

        for k in list(self.objective) + list(self.fixed):
            if k < 0 or k >= self.class_count:
                raise DimensionMismatchError("Class %i does not occur in the layout" % k)


class SdpResult(object):

    def __init__(self, value, gamma, class_values, primal_residual, dual_residual, iterations, converged,
                 residual_history=None):
        self.value = value
        self.gamma = gamma
        self.class_values = class_values
        self.primal_residual = primal_residual
        self.dual_residual = dual_residual
        self.iterations = iterations
        self.converged = converged
        # max(primal, dual) of every iteration
        self.residual_history = residual_history or []

    def __repr__(self):
        return "SdpResult(value=%.12g, converged=%s, iterations=%i)" % (self.value, self.converged,
                                                                        self.iterations)


class _AffineProjector(object):
    """Frobenius projection onto the matrices that respect the class layout,
    the fixed values and the class equalities
    """

    def __init__(self, program):

        self.program = program
        self.classes = program.cell_classes.ravel()
        self.conjugate = program.conjugate.ravel()
        self.counts = np.bincount(self.classes, minlength=program.class_count).astype(float)

        self.fixed_index = np.array(sorted(program.fixed), dtype=np.intp)
        self.fixed_values = np.array([program.fixed[k] for k in sorted(program.fixed)], dtype=complex)
        free = np.ones(program.class_count, dtype=bool)
        free[self.fixed_index] = False
        self.free = free

        self.relation = None
        if program.equalities:
            e = np.zeros((len(program.equalities), program.class_count))
            f = np.zeros(len(program.equalities))
            for row, (coefficients, rhs) in enumerate(program.equalities):
                for k, v in coefficients.items():
                    e[row, k] = v
                f[row] = rhs
            f = f - e[:, self.fixed_index] @ self.fixed_values.real
            e[:, ~free] = 0.0
            weights = np.where(self.counts > 0, 1.0 / np.maximum(self.counts, 1.0), 0.0)
            weights[~free] = 0.0
            scaled = e * weights
            gram = scaled @ e.T
            self.relation = (e, f, scaled.T @ np.linalg.pinv(gram, rcond=RELATION_RCOND, hermitian=True))

    def class_values(self, matrix):
        flat = matrix.ravel()
        values = np.where(self.conjugate, np.conj(flat), flat)
        sums = np.bincount(self.classes, weights=values.real, minlength=len(self.counts))
        if self.program.is_complex:
            sums = sums + 1j * np.bincount(self.classes, weights=values.imag, minlength=len(self.counts))
        x = sums / np.maximum(self.counts, 1.0)
        if self.relation is not None:
            e, f, correction = self.relation
            x = x - correction @ (e @ x.real - f)
            if self.program.is_complex:
                x = x - 1j * (correction @ (e @ x.imag))
        x[self.fixed_index] = self.fixed_values if self.program.is_complex else self.fixed_values.real
        return x

    def assemble(self, x):
        flat = x[self.classes]
        if self.program.is_complex:
            flat = np.where(self.conjugate, np.conj(flat), flat)
        return flat.reshape(self.program.side, self.program.side)

    def __call__(self, matrix):
        return self.assemble(self.class_values(matrix))


def sdp_solve(program, config=None, tol=None, max_iterations=None):
    """Solve a SemidefiniteProgram with scaled ADMM

    The iteration alternates X = P_affine(Z - U + C / rho),
    Z = P_psd(alpha X + (1 - alpha) Z + U) and the dual update; rho is
    rebalanced when the residuals drift apart. Non-convergence is reported
    through the converged flag of the result.

    Args:
        program (SemidefiniteProgram): The program
        config (Configuration): Default tolerance, iteration cap and
                                over-relaxation
        tol (float): Residual tolerance override
        max_iterations (int): Iteration cap override

    Returns:
        SdpResult

    """
    if config is None:
        config = global_config
    if tol is None:
        tol = config.SDP_TOLERANCE
    if max_iterations is None:
        max_iterations = config.SDP_MAX_ITERATIONS
    alpha = config.SDP_OVER_RELAXATION
    log = MessageLogger(config=config, component="sdp_solve")

    side = program.side
    if side > config.NPA_MAX_MATRIX_SIDE:
        raise SolverError("The matrix side %i exceeds the configured maximum %i"
                          % (side, config.NPA_MAX_MATRIX_SIDE), status="too_large")

    dtype = complex if program.is_complex else float
    project = _AffineProjector(program)

    c_matrix = np.zeros((side, side), dtype=dtype)
    coefficients = np.zeros(program.class_count)
    for k, v in program.objective.items():
        coefficients[k] = v
    c_matrix += (coefficients / np.maximum(project.counts, 1.0))[program.cell_classes]

    z = project(np.eye(side, dtype=dtype))
    z = psd_project(z)
    u = np.zeros((side, side), dtype=dtype)
    rho = 1.0
    primal = dual = np.inf
    converged = False
    iteration = 0
    history = []

    for iteration in range(1, max_iterations + 1):
        x = project(z - u + c_matrix / rho)
        relaxed = alpha * x + (1.0 - alpha) * z
        z_old = z
        z = psd_project(relaxed + u)
        u = u + relaxed - z

        scale = max(1.0, np.linalg.norm(x), np.linalg.norm(z))
        primal = float(np.linalg.norm(x - z)) / scale
        dual = float(rho * np.linalg.norm(z - z_old)) / max(1.0, rho * float(np.linalg.norm(u)))
        history.append(max(primal, dual))

        if primal < tol and dual < tol:
            converged = True
            break

        if iteration % 10 == 0:
            if primal > 10.0 * dual:
                rho *= 2.0
                u /= 2.0
            elif dual > 10.0 * primal:
                rho /= 2.0
                u *= 2.0
        if iteration % PROGRESS_INTERVAL == 0:
            log.progress(iteration, primal=primal, dual=dual, rho=rho)

    class_values = project.class_values(z)
    gamma = project.assemble(class_values)
    value = float(sum(v * class_values[k].real for k, v in program.objective.items()))

    log.outcome(converged, iteration, value, primal=primal, dual=dual)

    return SdpResult(value, gamma, class_values, primal, dual, iteration, converged, history)
