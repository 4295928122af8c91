"""Localisation diagnostics: polynomial off-diagonal decay and weighted
Schur bounds.

The abstract matrix-algebra picture is replaced by two checkable
surrogates at finite size: the smallest constant ``C`` with
``|M[i,i']| <= C (1 + rho(i,i'))^-s`` (a polynomial-decay norm) and the
classical Schur row/column bound certifying boundedness on weighted
``l^p`` spaces.  Inverse-closedness is not certified here; the report
only measures decay.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import FramePair, IndexSet, cross_gram
from .numeric import PreconditionError, as_matrix


@dataclass(frozen=True)
class JaffardParams:
    """Decay exponent ``s >= 0`` together with the index set whose
    metric measures off-diagonal distance."""

    exponent: float
    index_set: IndexSet

    def __post_init__(self):
        s = float(self.exponent)
        if not np.isfinite(s) or s < 0:
            raise PreconditionError(f"decay exponent must be finite and >= 0, got {s}")
        object.__setattr__(self, "exponent", s)


def as_weight(w, n: int | None = None) -> np.ndarray:
    """Validate a positive finite weight vector."""
    v = np.asarray(w, dtype=float)
    if v.ndim != 1:
        raise PreconditionError("weights must form a 1-D sequence")
    if n is not None and v.shape[0] != n:
        raise PreconditionError(f"{v.shape[0]} weights for {n} indices")
    if not np.all(np.isfinite(v)) or np.any(v <= 0):
        raise PreconditionError("weights must be positive and finite")
    return v


def jaffard_norm(M, params: JaffardParams) -> float:
    """Smallest ``C`` with ``|M[i,i']| <= C (1 + rho(i,i'))^-s``,
    computed as ``sup |M[i,i']| (1 + rho(i,i'))^s``."""
    A = as_matrix(M)
    n = len(params.index_set)
    if A.shape != (n, n):
        raise PreconditionError(
            f"matrix shape {A.shape} does not match index set of size {n}"
        )
    rho = params.index_set.distance_matrix()
    return float(np.max(np.abs(A) * (1.0 + rho) ** params.exponent, initial=0.0))


def schur_weighted_bound(M, w, p, w_out=None) -> float:
    """Schur interpolation bound for ``||M||`` on ``l^p_w``.

    Returns ``C_row^(1-1/p) * C_col^(1/p)`` where ``C_row`` and
    ``C_col`` are the weighted row and column sups of ``|M[i,i']|
    w_out[i] / w[i']``.  ``w_out`` defaults to ``w`` (square case); pass
    it explicitly for rectangular cross-Gram matrices whose axes carry
    different index sets.  The returned value dominates the true
    operator norm for every ``p`` in ``[1, inf]``.
    """
    A = np.abs(as_matrix(M))
    p = float(p)
    if not (1.0 <= p):
        raise PreconditionError(f"exponent p={p} outside [1, inf]")
    w_in = as_weight(w, A.shape[1])
    w_o = w_in if w_out is None else as_weight(w_out, A.shape[0])
    if A.shape[0] != w_o.shape[0]:
        raise PreconditionError("row weights do not match matrix shape")
    scaled = A * w_o[:, None] / w_in[None, :]
    c_row = float(np.max(scaled.sum(axis=1), initial=0.0))
    c_col = float(np.max(scaled.sum(axis=0), initial=0.0))
    if np.isinf(p):
        return c_row
    theta = 1.0 / p
    return c_row ** (1.0 - theta) * c_col**theta


def poly_weight(index_set: IndexSet, t: float) -> np.ndarray:
    """Polynomial weight ``w_i = (1 + rho(i, origin))^t`` with the first
    label as origin."""
    if not np.isfinite(t):
        raise PreconditionError("weight exponent must be finite")
    return (1.0 + index_set.distances_from_origin()) ** float(t)


@dataclass(frozen=True)
class LocalisationReport:
    """Decay constants of the Gram, dual Gram and primal-dual cross Gram
    at a common exponent, plus a threshold verdict."""

    jaffard_gram: float
    jaffard_dual_gram: float
    jaffard_cross: float
    exponent: float
    threshold: float
    verdict: bool

    def to_json(self) -> dict:
        return {
            "jaffard_gram": self.jaffard_gram,
            "jaffard_dual_gram": self.jaffard_dual_gram,
            "jaffard_cross": self.jaffard_cross,
            "exponent": self.exponent,
            "verdict": self.verdict,
            "threshold": self.threshold,
        }


def localisation_report(
    pair: FramePair, params: JaffardParams, threshold: float = 1e6
) -> LocalisationReport:
    """Evaluate decay constants for ``G``, ``G_dual`` and the cross Gram
    of dual against primal; verdict is true when all stay below the
    threshold."""
    g = jaffard_norm(cross_gram(pair.frame, pair.frame), params)
    g_dual = jaffard_norm(cross_gram(pair.dual, pair.dual), params)
    g_cross = jaffard_norm(cross_gram(pair.dual, pair.frame), params)
    verdict = bool(max(g, g_dual, g_cross) <= threshold)
    return LocalisationReport(
        jaffard_gram=g,
        jaffard_dual_gram=g_dual,
        jaffard_cross=g_cross,
        exponent=params.exponent,
        threshold=threshold,
        verdict=verdict,
    )
