"""Multicore-fibre channel model: crosstalk plus dephasing in the core basis.

A d-core fibre acts on a state written in the core basis by scrambling its
populations with a crosstalk table P (P[i, j] is the probability that light
entering core i exits core j) and damping each coherence rho_ij by a factor
1 + alpha_ij. With P the identity the map fixes every |i><i|, which is the
maximal fixed-point set a nontrivial channel can have.

The Choi operator of such a channel has a closed form: diagonal entries
P[i, j] / d plus a single d x d coherence block on the span of |ii> (the
"hat block"). Complete positivity of the channel is equivalent to positive
semidefiniteness of that block, which keeps all physicality checks at d x d
scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, as_matrix, matrix_from_literal, matrix_to_literal
from .states import DensityMatrix, partial_trace


@dataclass(frozen=True)
class McfChannel:
    """Channel parameters: real crosstalk table and Hermitian dephasing table.

    The diagonal of ``dephasing`` is stored but never used by the map. The
    off-diagonal entries must satisfy |1 + alpha_ij| <= 1 (coherences can
    only shrink) and alpha_ji = conj(alpha_ij), without which Hermitian
    inputs would not map to Hermitian outputs.
    """

    crosstalk: np.ndarray
    dephasing: np.ndarray

    def __post_init__(self):
        p = as_matrix(self.crosstalk)
        if p.shape[0] != p.shape[1]:
            raise ValueError("crosstalk table must be square")
        if np.abs(p.imag).max() > 0.0:
            raise ValueError("crosstalk table must be real")
        p = p.real.copy()
        if p.min() < 0.0:
            raise ValueError("crosstalk probabilities must be nonnegative")
        a = as_matrix(self.dephasing)
        if a.shape != p.shape:
            raise ValueError("dephasing table must match the crosstalk table shape")
        if np.abs(a - a.conj().T).max() / 2 > DEFAULT_TOL.eq_tol:
            raise ValueError("dephasing table must be Hermitian (alpha_ji = conj(alpha_ij))")
        a = (a + a.conj().T) / 2
        off = ~np.eye(a.shape[0], dtype=bool)
        if off.any() and np.abs(1.0 + a[off]).max() > 1.0 + DEFAULT_TOL.eq_tol:
            raise ValueError("dephasing out of range: |1 + alpha_ij| must be <= 1")
        p.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "crosstalk", p)
        object.__setattr__(self, "dephasing", a)

    @property
    def d(self) -> int:
        return self.crosstalk.shape[0]

    @classmethod
    def with_uniform_dephasing(cls, crosstalk, alpha: float) -> "McfChannel":
        """Broadcast a single real alpha to every off-diagonal entry."""
        p = as_matrix(crosstalk)
        d = p.shape[0]
        a = np.full((d, d), float(alpha), dtype=complex)
        np.fill_diagonal(a, 0.0)
        return cls(p, a)


@dataclass(frozen=True)
class ChoiOperator:
    """Choi state of a fibre channel plus its d x d coherence block."""

    dm: DensityMatrix
    hat_block: np.ndarray


@dataclass(frozen=True)
class CptpReport:
    """Physicality summary: trace preservation and complete positivity."""

    tp_ok: bool
    cp_ok: bool
    row_sum_residuals: tuple[float, ...]
    choi_min_eig: float

    def to_json_dict(self) -> dict:
        return {
            "tp_ok": self.tp_ok,
            "cp_ok": self.cp_ok,
            "row_sum_residuals": list(self.row_sum_residuals),
            "choi_min_eig": self.choi_min_eig,
        }


def hat_block(ch: McfChannel) -> np.ndarray:
    """The d x d coherence block of the Choi operator."""
    d = ch.d
    h = (1.0 + ch.dephasing) / d
    np.fill_diagonal(h, np.diag(ch.crosstalk) / d)
    return h


def verify_cptp(ch: McfChannel, tol: Tolerance = DEFAULT_TOL) -> CptpReport:
    """Trace preservation = unit row sums of P; complete positivity = PSD hat block."""
    residuals = np.abs(ch.crosstalk.sum(axis=1) - 1.0)
    tp_ok = bool(residuals.max() <= tol.eq_tol)
    h = hat_block(ch)
    lo = float(np.linalg.eigvalsh((h + h.conj().T) / 2)[0])
    return CptpReport(tp_ok, lo >= -tol.psd_floor, tuple(float(r) for r in residuals), lo)


def _physicality_warnings(ch: McfChannel, tol: Tolerance, force: bool) -> tuple[str, ...]:
    report = verify_cptp(ch, tol)
    warnings = []
    if not report.tp_ok:
        if not force:
            raise ValueError(
                "channel is not trace-preserving (crosstalk rows must sum to 1); "
                "pass force to evaluate the map anyway"
            )
        warnings.append("not trace-preserving")
    if not report.cp_ok:
        warnings.append("not completely positive")
    return tuple(warnings)


def _act(ch: McfChannel, x: np.ndarray) -> np.ndarray:
    # Linear action on an arbitrary d x d matrix: populations are scrambled
    # by P, coherences are damped entrywise by 1 + alpha.
    out = x * (1.0 + ch.dephasing)
    np.fill_diagonal(out, ch.crosstalk.T @ np.diag(x))
    return out


def apply(
    ch: McfChannel,
    rho: DensityMatrix,
    *,
    force: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> DensityMatrix:
    """Propagate a d-dimensional state through the fibre.

    Evaluation on trace-preserving but not completely positive parameter
    sets is permitted; the result then carries a warning marker instead of
    pretending to be a physical state.
    """
    if rho.dim != ch.d:
        raise ValueError(f"dimension mismatch: channel has {ch.d} cores, state has {rho.dim}")
    warnings = _physicality_warnings(ch, tol, force) + rho.warnings
    return DensityMatrix(_act(ch, rho.mat), factors=rho.factors, warnings=warnings)


def choi(ch: McfChannel, tol: Tolerance = DEFAULT_TOL) -> ChoiOperator:
    """Closed-form Choi operator (equals feeding half of |Psi+> through the fibre)."""
    d = ch.d
    j = np.zeros((d * d, d * d), dtype=complex)
    idx = np.arange(d * d)
    j[idx, idx] = (ch.crosstalk / d).reshape(-1)
    h = hat_block(ch)
    diag_pairs = np.arange(d) * (d + 1)
    j[np.ix_(diag_pairs, diag_pairs)] = h
    report = verify_cptp(ch, tol)
    warnings = []
    if not report.tp_ok:
        warnings.append("not trace-preserving")
    if not report.cp_ok:
        warnings.append("not completely positive")
    dm = DensityMatrix(j, factors=(d, d), warnings=tuple(warnings))
    return ChoiOperator(dm, h)


def extend_one_side(
    ch: McfChannel,
    rho: DensityMatrix,
    *,
    force: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> DensityMatrix:
    """Send the second party of a bipartite state through the fibre.

    On the maximally entangled input this reproduces the Choi operator; on a
    product input it acts on the second factor alone.
    """
    d = ch.d
    if rho.factors != (d, d):
        raise ValueError(f"state must carry factors ({d}, {d}) to extend one side")
    warnings = _physicality_warnings(ch, tol, force) + rho.warnings
    t = rho.mat.reshape(d, d, d, d)
    out = np.empty_like(t)
    for i in range(d):
        for j in range(d):
            out[i, :, j, :] = _act(ch, t[i, :, j, :])
    return DensityMatrix(out.reshape(d * d, d * d), factors=(d, d), warnings=warnings)


def channel_from_choi(j, tol: Tolerance = DEFAULT_TOL):
    """Reconstruct the channel action E(rho) = d * Tr_A[J (rho^T (x) 1)].

    Accepts a ChoiOperator or a bare bipartite DensityMatrix. The factor d
    compensates for the unit normalization of the maximally entangled state
    used to define J, so that the round trip channel -> Choi -> channel
    closes exactly. Requires Tr_B(J) = 1/d (a trace-preserving Choi).
    """
    dm = j.dm if isinstance(j, ChoiOperator) else j
    if dm.factors is None:
        raise ValueError("Choi operator must carry bipartite factors")
    da, db = dm.factors
    if da != db:
        raise ValueError("only square (d -> d) channels are supported")
    d = da
    reduced = partial_trace(dm.mat, (d, d), traced="B")
    if np.abs(reduced - np.eye(d) / d).max() > tol.eq_tol:
        raise ValueError("not trace-preserving Choi: Tr_B(J) != 1/d")
    j4 = dm.mat.reshape(d, d, d, d)

    def action(rho) -> np.ndarray:
        r = as_matrix(rho)
        if r.shape != (d, d):
            raise ValueError(f"dimension mismatch: expected {d} x {d} input")
        return d * np.einsum("ikjl,ij->kl", j4, r)

    return action


def cp_boundary_uniform_alpha(
    crosstalk,
    *,
    tol: Tolerance = DEFAULT_TOL,
    precision: float = 1e-12,
) -> float:
    """Most negative uniform real alpha keeping the channel completely positive.

    Located by bisection on the hat-block spectrum over alpha in [-2, a_hi],
    where a_hi is a point known to be completely positive (alpha = -1 always
    is, since the hat block is then diagonal).
    """
    def cp_ok(alpha: float) -> bool:
        ch = McfChannel.with_uniform_dephasing(crosstalk, alpha)
        return verify_cptp(ch, tol).cp_ok

    lo = -2.0
    if cp_ok(lo):
        return lo
    hi = -1.0
    if not cp_ok(hi):
        raise ValueError("channel is not completely positive even at alpha = -1")
    while hi - lo > precision:
        mid = 0.5 * (lo + hi)
        if cp_ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def channel_to_config(ch: McfChannel) -> dict:
    """Serialize to the channel config schema (lossless matrix form)."""
    return {
        "d": ch.d,
        "P": matrix_to_literal(ch.crosstalk),
        "alpha": {"matrix": matrix_to_literal(ch.dephasing)},
    }


def channel_from_config(obj: dict) -> McfChannel:
    """Parse {"d": int, "P": [[...]], "alpha": {"uniform": x} | {"matrix": [[...]]}}."""
    d = int(obj["d"])
    p = matrix_from_literal(obj["P"])
    if p.shape != (d, d):
        raise ValueError(f"crosstalk table must be {d} x {d}, got {p.shape}")
    alpha = obj["alpha"]
    if not isinstance(alpha, dict) or not ({"uniform", "matrix"} & alpha.keys()):
        raise ValueError('alpha must be {"uniform": real} or {"matrix": [[...]]}')
    if "uniform" in alpha:
        return McfChannel.with_uniform_dephasing(p, float(alpha["uniform"]))
    a = matrix_from_literal(alpha["matrix"])
    if a.shape != (d, d):
        raise ValueError(f"dephasing table must be {d} x {d}, got {a.shape}")
    return McfChannel(p, a)
