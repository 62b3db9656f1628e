"""Dense complex linear algebra kernels shared by every other module.

Everything operates on plain numpy arrays (complex128, row-major). All
objects in this package are small (at most a few dozen rows per tensor
factor), so decompositions go straight through LAPACK with no sparsity or
blocking concerns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tensor products are refused beyond this output dimension (64 per factor).
MAX_KRON_DIM = 4096


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used throughout.

    psd_floor bounds how negative an eigenvalue may be while still counting
    as nonnegative; eq_tol bounds entrywise comparisons. Both assume
    O(1)-scaled matrices, where double precision leaves ample headroom.
    """

    psd_floor: float = 1e-10
    eq_tol: float = 1e-10

    def __post_init__(self):
        for name in ("psd_floor", "eq_tol"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-6:
                raise ValueError(f"{name} must lie in (0, 1e-6], got {value}")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting empty or non-finite input."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("empty matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def trace_norm(m) -> float:
    """Sum of singular values (invariant under unitaries on either side)."""
    return float(np.linalg.svd(as_matrix(m), compute_uv=False).sum())


def entrywise_one_norm(m) -> float:
    """Sum of the absolute values of all entries."""
    return float(np.abs(as_matrix(m)).sum())


def hermitian_part(m) -> np.ndarray:
    """(M + M†)/2."""
    a = as_matrix(m)
    return (a + a.conj().T) / 2


def is_psd(m, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Decide positive semidefiniteness and report the minimum eigenvalue.

    The matrix is symmetrized before the eigensolve, which guards against
    accumulation error in composed operations; an anti-Hermitian part larger
    than eq_tol is rejected outright.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("not a square matrix")
    if np.abs(a - a.conj().T).max() / 2 > tol.eq_tol:
        raise ValueError("not Hermitian")
    lo = float(np.linalg.eigvalsh(hermitian_part(a))[0])
    return lo >= -tol.psd_floor, lo


def kron(a, b, max_dim: int = MAX_KRON_DIM) -> np.ndarray:
    """Tensor product with a guard against runaway output dimensions."""
    ma, mb = as_matrix(a), as_matrix(b)
    rows = ma.shape[0] * mb.shape[0]
    cols = ma.shape[1] * mb.shape[1]
    if rows > max_dim or cols > max_dim:
        raise ValueError(
            f"tensor product dimension {rows} x {cols} exceeds the limit {max_dim}"
        )
    return np.kron(ma, mb)


def diagonal_unitary(phases) -> np.ndarray:
    """diag(e^{i theta_0}, ..., e^{i theta_{d-1}}) for real phases."""
    theta = np.asarray(phases, dtype=float)
    if theta.ndim != 1 or theta.size < 1:
        raise ValueError("phases must be a non-empty 1-D sequence of reals")
    return np.diag(np.exp(1j * theta))


def matrix_to_literal(m) -> list:
    """Row-major JSON literal: bare floats if real, [re, im] pairs otherwise."""
    a = as_matrix(m)
    if np.all(a.imag == 0.0):
        return [[float(x) for x in row.real] for row in a]
    return [[[float(x.real), float(x.imag)] for x in row] for row in a]


def matrix_from_literal(rows) -> np.ndarray:
    """Parse the row-major literal format written by matrix_to_literal.

    Each entry is either a bare number or a [re, im] pair; the two styles may
    be mixed freely within one matrix.
    """

    def entry(e):
        if isinstance(e, (list, tuple)):
            if len(e) != 2:
                raise ValueError(f"matrix entry must be a number or [re, im] pair, got {e!r}")
            return complex(float(e[0]), float(e[1]))
        return complex(float(e), 0.0)

    if not isinstance(rows, (list, tuple)) or not rows:
        raise ValueError("matrix literal must be a non-empty list of rows")
    return as_matrix([[entry(e) for e in row] for row in rows])
