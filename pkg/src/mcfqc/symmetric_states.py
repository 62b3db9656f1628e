"""States with diagonal-unitary and permutation symmetry.

Two parameterized families live here. The first is invariant under
U (x) U-conjugate for every diagonal unitary U and is described by a pair of
d x d tables: nonnegative weights on |ij><ij| and a Hermitian coherence
block on |ii><jj|. The second is the family of mixtures of symmetric-pair
(Dicke) projectors, described by an upper-triangular weight table. The
partial transpose of the second family lands inside the first, with both
tables equal to the pair-weight matrix (diagonal p_ii, off-diagonal p_ij/2),
which is what connects fibre channels to these states: a channel whose
Choi operator realizes that matrix outputs the partial transpose of a
Dicke-diagonal state.

Both specialized entanglement tests exploit structure. The partial
transpose decomposes into 2 x 2 blocks, so positivity reduces to
A_ij * A_ji >= |B_ij|^2. The realigned matrix decomposes exactly into the
weight table (on the index pairs (i,i)) plus a diagonal of coherences (on
the pairs (i,j), i != j), so its trace norm is
||A||_tr + sum_{i != j} |B_ij|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChoiOperator, McfChannel
from .linalg import DEFAULT_TOL, Tolerance, as_matrix, entrywise_one_norm, is_psd, trace_norm
from .states import Conclusion, CriterionVerdict, DensityMatrix


@dataclass(frozen=True)
class CldulState:
    """Pair (weights, coherences) of d x d tables defining an invariant state.

    Validity requires entrywise nonnegative weights summing to 1, a PSD
    coherence block, and matching diagonals. As with DensityMatrix, a
    non-empty ``warnings`` tuple waives the positivity requirement on the
    coherence block so that unphysical-parameter evaluations stay
    representable.
    """

    weights: np.ndarray
    coherences: np.ndarray
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        a = as_matrix(self.weights)
        d = a.shape[0]
        if a.shape[1] != d:
            raise ValueError("weight table must be square")
        if np.abs(a.imag).max() > 0.0:
            raise ValueError("weight table must be real")
        a = a.real.copy()
        if a.min() < -DEFAULT_TOL.eq_tol:
            raise ValueError("weight table entries must be nonnegative")
        if abs(a.sum() - 1.0) > DEFAULT_TOL.eq_tol:
            raise ValueError(f"weight table must sum to 1, got {a.sum()}")
        b = as_matrix(self.coherences)
        if b.shape != (d, d):
            raise ValueError("coherence block must match the weight table shape")
        if np.abs(b - b.conj().T).max() / 2 > DEFAULT_TOL.eq_tol:
            raise ValueError("coherence block must be Hermitian")
        b = (b + b.conj().T) / 2
        if np.abs(np.diag(a) - np.diag(b).real).max() > DEFAULT_TOL.eq_tol:
            raise ValueError("diagonals of the weight and coherence tables must agree")
        object.__setattr__(self, "warnings", tuple(self.warnings))
        if not self.warnings:
            ok, lo = is_psd(b)
            if not ok:
                raise ValueError(f"coherence block not PSD (min eigenvalue {lo:.3e})")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "weights", a)
        object.__setattr__(self, "coherences", b)

    @property
    def d(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class DsState:
    """Dicke-diagonal state given by an upper-triangular weight table.

    weights[i, j] with i <= j is the probability of the symmetric pair
    projector on (i, j); the strict lower triangle must be zero.
    """

    d: int
    weights: np.ndarray

    def __post_init__(self):
        w = as_matrix(self.weights)
        if w.shape != (self.d, self.d):
            raise ValueError(f"weight table must be {self.d} x {self.d}")
        if np.abs(w.imag).max() > 0.0:
            raise ValueError("weights must be real")
        w = w.real.copy()
        if np.abs(np.tril(w, -1)).max() > 0.0:
            raise ValueError("weights must be upper triangular (use index i <= j)")
        if w.min() < -DEFAULT_TOL.eq_tol:
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > DEFAULT_TOL.eq_tol:
            raise ValueError(f"weights must sum to 1, got {w.sum()}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


def dicke_basis(d: int) -> list[np.ndarray]:
    """Orthonormal basis of the symmetric subspace, ordered by (i, j), i <= j."""
    if d < 2:
        raise ValueError("Dicke basis needs d >= 2")
    basis = []
    for i in range(d):
        for j in range(i, d):
            v = np.zeros(d * d, dtype=complex)
            if i == j:
                v[i * d + i] = 1.0
            else:
                v[i * d + j] = v[j * d + i] = 1.0 / np.sqrt(2.0)
            basis.append(v)
    return basis


def cldui_to_density(s: CldulState) -> DensityMatrix:
    """Expand the (weights, coherences) pair into a (d^2) x (d^2) state."""
    d = s.d
    mat = np.zeros((d * d, d * d), dtype=complex)
    idx = np.arange(d * d)
    mat[idx, idx] = s.weights.reshape(-1)
    diag_pairs = np.arange(d) * (d + 1)
    mat[np.ix_(diag_pairs, diag_pairs)] = s.coherences
    return DensityMatrix(mat, factors=(d, d), warnings=s.warnings)


def cldui_from_choi(j: ChoiOperator, tol: Tolerance = DEFAULT_TOL) -> CldulState:
    """Read the (weights, coherences) pair off a fibre-channel Choi operator.

    The weights are the crosstalk probabilities over d; the coherence block
    is the Choi hat block.
    """
    dm = j.dm
    if dm.factors is None or dm.factors[0] != dm.factors[1]:
        raise ValueError("Choi operator must carry square bipartite factors")
    d = dm.factors[0]
    weights = np.diag(dm.mat).real.reshape(d, d)
    coherences = as_matrix(j.hat_block)
    if np.abs(np.diag(weights) - np.diag(coherences).real).max() > tol.eq_tol:
        raise ValueError("malformed Choi operator: hat-block diagonal disagrees with the state")
    return CldulState(weights, coherences, warnings=dm.warnings)


def cldui_is_ppt(s: CldulState, tol: Tolerance = DEFAULT_TOL) -> CriterionVerdict:
    """Closed-form PPT test: min over pairs of A_ij * A_ji - |B_ij|^2."""
    a, b = s.weights, s.coherences
    off = ~np.eye(s.d, dtype=bool)
    # a single-core state has no pairs and is trivially PPT
    value = float((a * a.T - np.abs(b) ** 2)[off].min()) if off.any() else 0.0
    flag = Conclusion.ENTANGLED if value < -tol.eq_tol else Conclusion.INCONCLUSIVE
    return CriterionVerdict("cldui-ppt", value, flag)


def cldui_realignment_test(s: CldulState, tol: Tolerance = DEFAULT_TOL) -> CriterionVerdict:
    """Realignment trace norm via the exact block decomposition.

    The realigned matrix is the weight table direct-summed with the
    off-diagonal coherences, so the trace norm is ||weights||_tr plus the
    absolute off-diagonal coherence mass. The one-norm gaps of both tables
    are reported as diagnostics alongside the decision statistic.
    """
    a, b = s.weights, s.coherences
    off = ~np.eye(s.d, dtype=bool)
    value = trace_norm(a) + float(np.abs(b[off]).sum())
    flag = Conclusion.ENTANGLED if value > 1.0 + tol.eq_tol else Conclusion.INCONCLUSIVE
    details = {
        "weights_one_norm_gap": entrywise_one_norm(a) - trace_norm(a),
        "coherences_one_norm_gap": entrywise_one_norm(b) - trace_norm(b),
    }
    return CriterionVerdict("cldui-realignment", value, flag, details)


def ds_to_density(s: DsState) -> DensityMatrix:
    """Mixture of symmetric-pair projectors with the given weights."""
    d = s.d
    mat = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(i, d):
            p = s.weights[i, j]
            if i == j:
                mat[i * d + i, i * d + i] += p
            else:
                for r in (i * d + j, j * d + i):
                    for c in (i * d + j, j * d + i):
                        mat[r, c] += p / 2
    return DensityMatrix(mat, factors=(d, d))


def m_matrix(s: DsState) -> np.ndarray:
    """Pair-weight matrix: diagonal p_ii, off-diagonal p_ij / 2."""
    w = s.weights
    m = (w + w.T) / 2
    np.fill_diagonal(m, np.diag(w))
    return m


def ds_from_m_matrix(m) -> DsState:
    """Inverse of m_matrix: p_ii from the diagonal, p_ij = 2 m_ij for i < j."""
    a = as_matrix(m)
    if np.abs(a.imag).max() > 0.0:
        raise ValueError("pair-weight matrix must be real")
    a = a.real
    d = a.shape[0]
    if np.abs(a - a.T).max() > DEFAULT_TOL.eq_tol:
        raise ValueError("pair-weight matrix must be symmetric")
    w = np.triu(2 * a, 1)
    np.fill_diagonal(w, np.diag(a))
    return DsState(d, w)


def ds_partial_transpose(s: DsState) -> tuple[np.ndarray, np.ndarray]:
    """Partial transpose of the expanded state together with its pair-weight matrix.

    The spectrum of the partial transpose is the spectrum of the pair-weight
    matrix joined with the off-diagonal weights p_ij / 2 (each twice).
    """
    d = s.d
    m = m_matrix(s)
    g = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            if i != j:
                g[i * d + j, i * d + j] = m[i, j]
    diag_pairs = np.arange(d) * (d + 1)
    g[np.ix_(diag_pairs, diag_pairs)] = m
    return g, m


def channel_from_ds(m, tol: Tolerance = DEFAULT_TOL) -> McfChannel:
    """Design the fibre channel whose Choi operator realizes a pair-weight matrix.

    The crosstalk probabilities are d * m_ij and the (real) dephasing
    coefficients are d * m_ij - 1. Trace preservation forces every row and
    column of m to sum to 1/d; the requirement |1 + alpha_ij| <= 1 forces
    d * m_ij <= 1 off the diagonal. Asymmetric tables are rejected rather
    than symmetrized: they describe valid channels but not this family.
    """
    a = as_matrix(m)
    if np.abs(a.imag).max() > 0.0:
        raise ValueError("pair-weight matrix must be real")
    a = a.real
    d = a.shape[0]
    if a.shape[1] != d:
        raise ValueError("pair-weight matrix must be square")
    if np.abs(a - a.T).max() > tol.eq_tol:
        raise ValueError("pair-weight matrix is not symmetric")
    if a.min() < 0.0:
        raise ValueError("pair-weight matrix entries must be nonnegative")
    sums = np.concatenate([a.sum(axis=0), a.sum(axis=1)])
    if np.abs(sums - 1.0 / d).max() > tol.eq_tol:
        raise ValueError(
            "trace-preservation constraint violated: every row and column must sum to 1/d"
        )
    off = ~np.eye(d, dtype=bool)
    if (d * a[off]).max() > 1.0 + tol.eq_tol:
        raise ValueError("dephasing out of range: d * m_ij must be <= 1 off the diagonal")
    alpha = (d * a - 1.0).astype(complex)
    np.fill_diagonal(alpha, 0.0)
    return McfChannel(d * a, alpha)
