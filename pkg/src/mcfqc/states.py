"""Density matrices and the generic bipartite entanglement criteria.

The two criteria implemented here (positivity of the partial transpose and
the realigned-matrix trace norm) are one-sided: they can certify
entanglement but never separability, which is why verdicts carry a tri-state
flag rather than a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    hermitian_part,
    is_psd,
    matrix_from_literal,
    matrix_to_literal,
    trace_norm,
)


class Conclusion(str, Enum):
    """Tri-state outcome of a one-sided entanglement test."""

    ENTANGLED = "entangled"
    INCONCLUSIVE = "inconclusive"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CriterionVerdict:
    """A named criterion statistic together with its conclusion."""

    name: str
    value: float
    flag: Conclusion
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix with optional bipartite factors.

    A non-empty ``warnings`` tuple marks the output of a map evaluated
    outside its physical parameter range (e.g. a trace-preserving but not
    completely positive channel). Such matrices keep their Hermiticity
    guarantee but skip the trace and positivity checks, so that formal
    evaluations remain representable without pretending they are states.
    """

    mat: np.ndarray
    factors: tuple[int, int] | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        a = as_matrix(self.mat)
        n = a.shape[0]
        if a.shape[1] != n:
            raise ValueError("density matrix must be square")
        if np.abs(a - a.conj().T).max() / 2 > DEFAULT_TOL.eq_tol:
            raise ValueError("not Hermitian")
        a = hermitian_part(a)
        if self.factors is not None:
            da, db = self.factors
            if da < 1 or db < 1 or da * db != n:
                raise ValueError(f"factors {self.factors} incompatible with dimension {n}")
            object.__setattr__(self, "factors", (int(da), int(db)))
        object.__setattr__(self, "warnings", tuple(self.warnings))
        if not self.warnings:
            tr = complex(np.trace(a))
            if abs(tr - 1.0) > DEFAULT_TOL.eq_tol:
                raise ValueError(f"trace must be 1, got {tr}")
            ok, lo = is_psd(a)
            if not ok:
                raise ValueError(f"not positive semidefinite (min eigenvalue {lo:.3e})")
        a.setflags(write=False)
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def max_entangled(d: int) -> DensityMatrix:
    """Projector onto (1/sqrt(d)) sum_i |ii>, tagged with factors (d, d)."""
    if d < 2:
        raise ValueError("maximally entangled state needs d >= 2")
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return DensityMatrix(np.outer(v, v.conj()), factors=(d, d))


def max_coherent(d: int) -> DensityMatrix:
    """Rank-1 single-system state with every entry equal to 1/d."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return DensityMatrix(np.full((d, d), 1.0 / d, dtype=complex))


def partial_trace(mat, factors: tuple[int, int], traced: str = "A") -> np.ndarray:
    """Trace out one tensor factor of a (d_a*d_b) x (d_a*d_b) matrix."""
    da, db = factors
    t = as_matrix(mat).reshape(da, db, da, db)
    if traced == "A":
        return np.einsum("ikil->kl", t)
    if traced == "B":
        return np.einsum("ikjk->ij", t)
    raise ValueError("traced side must be 'A' or 'B'")


def partial_transpose(rho: DensityMatrix, side: str = "B") -> np.ndarray:
    """Transpose one tensor factor; applying it twice is the identity."""
    if rho.factors is None:
        raise ValueError("not bipartite: factors unset")
    da, db = rho.factors
    t = rho.mat.reshape(da, db, da, db)
    if side == "B":
        out = t.transpose(0, 3, 2, 1)
    elif side == "A":
        out = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError("side must be 'A' or 'B'")
    return out.reshape(da * db, da * db)


def is_ppt(rho: DensityMatrix, tol: Tolerance = DEFAULT_TOL) -> CriterionVerdict:
    """Peres criterion: a negative partial-transpose eigenvalue certifies entanglement."""
    _, lo = is_psd(partial_transpose(rho, "B"), tol)
    flag = Conclusion.ENTANGLED if lo < -tol.psd_floor else Conclusion.INCONCLUSIVE
    return CriterionVerdict("ppt", lo, flag)


def realign(mat, da: int, db: int) -> np.ndarray:
    """Reshuffle a bipartite matrix: out[(i,j),(k,l)] = in[(i,k),(j,l)].

    With this grouping the realignment of a product X (x) Y is the rank-1
    matrix vec(X) vec(Y)^T, so its trace norm is ||X||_F * ||Y||_F, and the
    realignment of the maximally entangled projector has trace norm d. For
    da == db the map is an involution.
    """
    return as_matrix(mat).reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)


def realignment_trace_norm(rho: DensityMatrix, tol: Tolerance = DEFAULT_TOL) -> CriterionVerdict:
    """Realignment criterion: separable states have realigned trace norm <= 1."""
    if rho.factors is None:
        raise ValueError("not bipartite: factors unset")
    da, db = rho.factors
    if da != db:
        raise ValueError("realignment test requires equal factor dimensions")
    value = trace_norm(realign(rho.mat, da, db))
    flag = Conclusion.ENTANGLED if value > 1.0 + tol.eq_tol else Conclusion.INCONCLUSIVE
    return CriterionVerdict("realignment", value, flag)


def state_to_json(rho: DensityMatrix) -> dict:
    """Serialize with the factor annotation; warnings are kept when present."""
    obj: dict = {}
    if rho.factors is not None:
        obj["d_a"], obj["d_b"] = rho.factors
    obj["mat"] = matrix_to_literal(rho.mat)
    if rho.warnings:
        obj["warnings"] = list(rho.warnings)
    return obj


def state_from_json(obj: dict) -> DensityMatrix:
    mat = matrix_from_literal(obj["mat"])
    factors = None
    if obj.get("d_a") is not None and obj.get("d_b") is not None:
        factors = (int(obj["d_a"]), int(obj["d_b"]))
    return DensityMatrix(mat, factors=factors, warnings=tuple(obj.get("warnings", ())))
