"""Dense complex linear-algebra backend.

Everything downstream (frame operators, duals, Schatten norms) funnels
through the handful of routines in this module so that numerical
conventions are fixed in exactly one place:

* scalars are complex doubles,
* the inner product ``inner(f, g)`` is linear in ``f`` and
  conjugate-linear in ``g``,
* eigenvalues are reported ascending, singular values descending.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

DEFAULT_TOL = 1e-9


class PreconditionError(ValueError):
    """Input violates a documented precondition (shape, symmetry, ...)."""


class ConditioningError(ValueError):
    """Matrix too close to singular/indefinite for the requested solve."""

    def __init__(self, message: str, smallest_eigenvalue: float):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue


def as_matrix(M) -> np.ndarray:
    """Coerce to a 2-D complex array and reject non-finite entries."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise PreconditionError(f"expected a 2-D matrix, got ndim={A.ndim}")
    if not (np.all(np.isfinite(A.real)) and np.all(np.isfinite(A.imag))):
        raise PreconditionError("matrix contains NaN or Inf entries")
    return A


def as_vector(f) -> np.ndarray:
    A = np.asarray(f, dtype=complex)
    if A.ndim != 1:
        raise PreconditionError(f"expected a 1-D vector, got ndim={A.ndim}")
    if not (np.all(np.isfinite(A.real)) and np.all(np.isfinite(A.imag))):
        raise PreconditionError("vector contains NaN or Inf entries")
    return A


def inner(f, g) -> complex:
    """Inner product, linear in ``f``, conjugate-linear in ``g``."""
    return complex(np.vdot(g, f))


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition result: ``values`` ascending, optional
    orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray | None = None


def _spectral_scale(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2)) if M.size else 0.0


def hermitian_eig(M, hermitian_tol: float = 1e-10) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Raises
    ------
    PreconditionError
        If ``M`` is not square or deviates from Hermitian symmetry by
        more than ``hermitian_tol`` times its spectral scale.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise PreconditionError(f"matrix is {A.shape}, not square")
    scale = max(_spectral_scale(A), 1e-300)
    asym = np.max(np.abs(A - A.conj().T))
    if asym > hermitian_tol * scale:
        raise PreconditionError(
            f"matrix is not Hermitian: asymmetry {asym:.3e} exceeds "
            f"{hermitian_tol:.1e} * scale"
        )
    values, vectors = np.linalg.eigh(A)
    return Spectrum(values=values, vectors=vectors)


def svd_values(M) -> np.ndarray:
    """Singular values, descending; ``min(rows, cols)`` of them."""
    A = as_matrix(M)
    return np.linalg.svd(A, compute_uv=False)


def solve_posdef(M, B, definiteness_tol: float = 1e-12) -> np.ndarray:
    """Solve ``M X = B`` for Hermitian positive definite ``M``.

    The smallest eigenvalue must exceed ``definiteness_tol`` times the
    spectral scale of ``M``; otherwise a :class:`ConditioningError`
    carrying that eigenvalue is raised.  ``B`` may be a vector or a
    matrix of right-hand sides.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise PreconditionError(f"matrix is {A.shape}, not square")
    rhs = np.asarray(B, dtype=complex)
    if not (np.all(np.isfinite(rhs.real)) and np.all(np.isfinite(rhs.imag))):
        raise PreconditionError("right-hand side contains NaN or Inf")
    eigs = np.linalg.eigvalsh(A)
    scale = max(float(eigs[-1]), 1e-300)
    if eigs[0] <= definiteness_tol * scale:
        raise ConditioningError(
            f"matrix is not safely positive definite "
            f"(smallest eigenvalue {eigs[0]:.3e}, scale {scale:.3e})",
            smallest_eigenvalue=float(eigs[0]),
        )
    c, low = sla.cho_factor(A, lower=True)
    return sla.cho_solve((c, low), rhs)


# ---------------------------------------------------------------------------
# serialization: {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major


def matrix_to_json(M) -> dict:
    A = as_matrix(M)
    entries = [[float(z.real), float(z.imag)] for z in A.ravel()]
    return {"rows": A.shape[0], "cols": A.shape[1], "entries": entries}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed matrix object: {exc}") from exc
    if len(entries) != rows * cols:
        raise PreconditionError(
            f"matrix claims {rows}x{cols} but has {len(entries)} entries"
        )
    flat = np.array(
        [complex(re, im) for re, im in entries], dtype=complex
    )
    return as_matrix(flat.reshape(rows, cols))


def matrix_to_csv(M) -> str:
    """CSV export with ``re+imi`` cells.  Export only; no parser."""
    A = as_matrix(M)
    def cell(z: complex) -> str:
        sign = "+" if z.imag >= 0 else "-"
        return f"{float(z.real)!r}{sign}{abs(float(z.imag))!r}i"
    return "\n".join(",".join(cell(z) for z in row) for row in A) + "\n"


def save_matrix(path, M) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(M), fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
