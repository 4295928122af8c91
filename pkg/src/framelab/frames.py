"""Frames in finite-dimensional complex Hilbert spaces.

A frame is a spanning family ``{psi_i}`` indexed by an :class:`IndexSet`
with a metric; the module provides analysis/synthesis, Gram and cross
Gram matrices, frame bounds, canonical duals and reconstruction
diagnostics.

Conventions (fixed once, tested everywhere):

* ``analysis(frame, f)[i] = <f, psi_i>``,
* ``synthesis(frame, c) = sum_i c_i psi_i``,
* ``cross_gram(A, B)[i, i'] = <a_{i'}, b_i>`` so that the matrix acts as
  ``analysis(B, synthesis(A, c))`` on coefficient vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .numeric import (
    PreconditionError,
    ConditioningError,
    as_matrix,
    as_vector,
    solve_posdef,
)

# smallest/largest frame-operator eigenvalue ratio below which a vector
# family is rejected as "not a frame"
SPAN_RTOL = 1e-12


class NotAFrameError(ValueError):
    """Vector family does not span the space (or barely does)."""


# ---------------------------------------------------------------------------
# index sets


def _cyclic_dist(delta: np.ndarray, n: int) -> np.ndarray:
    d = np.abs(delta) % n
    return np.minimum(d, n - d)


@dataclass(frozen=True)
class IndexSet:
    """Finite index set with a metric.

    kind
        ``"linear"`` (grid ``0..N-1``, absolute-difference metric),
        ``"cyclic"`` (``Z_N``, cyclic distance), or
        ``"product_cyclic"`` (``Z_{N1} x Z_{N2}``, coordinatewise cyclic
        distances combined by ``max`` or ``sum``).
    size
        ``N`` or ``(N1, N2)``.
    metric
        ``"abs"`` | ``"cyclic"`` | ``"max"`` | ``"sum"``.
    """

    kind: str
    size: int | tuple[int, int]
    metric: str = ""

    def __post_init__(self):
        if self.kind in ("linear", "cyclic"):
            n = int(self.size)
            if n < 1:
                raise PreconditionError("index set must be non-empty")
            object.__setattr__(self, "size", n)
            default = "abs" if self.kind == "linear" else "cyclic"
            object.__setattr__(self, "metric", self.metric or default)
            if self.metric not in ("abs", "cyclic"):
                raise PreconditionError(f"bad metric {self.metric!r} for {self.kind}")
        elif self.kind == "product_cyclic":
            n1, n2 = (int(s) for s in self.size)
            if n1 < 1 or n2 < 1:
                raise PreconditionError("index set must be non-empty")
            object.__setattr__(self, "size", (n1, n2))
            object.__setattr__(self, "metric", self.metric or "max")
            if self.metric not in ("max", "sum"):
                raise PreconditionError(f"bad metric {self.metric!r} for product grid")
        else:
            raise PreconditionError(f"unknown index set kind {self.kind!r}")

    def __len__(self) -> int:
        if self.kind == "product_cyclic":
            return self.size[0] * self.size[1]
        return self.size

    def labels(self) -> list:
        """Ordered labels; product grids are row-major, first coordinate
        slowest."""
        if self.kind == "product_cyclic":
            n1, n2 = self.size
            return [(c1, c2) for c1 in range(n1) for c2 in range(n2)]
        return list(range(self.size))

    def distance_matrix(self) -> np.ndarray:
        n = len(self)
        if self.kind == "linear":
            idx = np.arange(n)
            return np.abs(idx[:, None] - idx[None, :]).astype(float)
        if self.kind == "cyclic":
            idx = np.arange(n)
            return _cyclic_dist(idx[:, None] - idx[None, :], self.size).astype(float)
        n1, n2 = self.size
        c1 = np.repeat(np.arange(n1), n2)
        c2 = np.tile(np.arange(n2), n1)
        d1 = _cyclic_dist(c1[:, None] - c1[None, :], n1)
        d2 = _cyclic_dist(c2[:, None] - c2[None, :], n2)
        if self.metric == "max":
            return np.maximum(d1, d2).astype(float)
        return (d1 + d2).astype(float)

    def distances_from_origin(self) -> np.ndarray:
        """Distances to the first label (used by polynomial weights)."""
        return self.distance_matrix()[0]

    def to_json(self) -> dict:
        size = list(self.size) if self.kind == "product_cyclic" else self.size
        return {"kind": self.kind, "size": size, "metric": self.metric}

    @staticmethod
    def from_json(obj: dict) -> "IndexSet":
        size = obj["size"]
        if isinstance(size, list):
            size = tuple(size)
        return IndexSet(kind=obj["kind"], size=size, metric=obj.get("metric", ""))


def linear_index_set(n: int) -> IndexSet:
    return IndexSet(kind="linear", size=n)


def cyclic_index_set(n: int) -> IndexSet:
    return IndexSet(kind="cyclic", size=n)


def product_cyclic_index_set(n1: int, n2: int, metric: str = "max") -> IndexSet:
    return IndexSet(kind="product_cyclic", size=(n1, n2), metric=metric)


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class Frame:
    """Immutable indexed family of vectors spanning ``C^d``.

    ``vectors`` has one row per index.  Construction fails with
    :class:`NotAFrameError` when the family does not (numerically) span
    the space.
    """

    space_dim: int
    index_set: IndexSet
    vectors: np.ndarray

    def __post_init__(self):
        V = as_matrix(self.vectors)
        if V.shape != (len(self.index_set), self.space_dim):
            raise PreconditionError(
                f"vectors have shape {V.shape}, expected "
                f"({len(self.index_set)}, {self.space_dim})"
            )
        if V.shape[0] < V.shape[1]:
            raise NotAFrameError(
                f"{V.shape[0]} vectors cannot span a {V.shape[1]}-dim space"
            )
        S = V.T @ V.conj()
        eigs = np.linalg.eigvalsh(S)
        if eigs[0] <= SPAN_RTOL * max(eigs[-1], 1e-300):
            raise NotAFrameError(
                f"vectors do not span the space: frame-operator eigenvalues "
                f"range [{eigs[0]:.3e}, {eigs[-1]:.3e}]"
            )
        V.flags.writeable = False
        object.__setattr__(self, "vectors", V)

    @staticmethod
    def from_vectors(vectors, index_set: IndexSet | None = None) -> "Frame":
        V = as_matrix(vectors)
        if index_set is None:
            index_set = linear_index_set(V.shape[0])
        return Frame(space_dim=V.shape[1], index_set=index_set, vectors=V)

    @property
    def cardinality(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class FramePair:
    """A frame bundled with its canonical dual and optimal bounds."""

    frame: Frame
    dual: Frame
    bounds: tuple[float, float]


def analysis(frame: Frame, f) -> np.ndarray:
    """Coefficients ``<f, psi_i>`` in index order."""
    v = as_vector(f)
    if v.shape[0] != frame.space_dim:
        raise PreconditionError(
            f"vector has dim {v.shape[0]}, frame space is {frame.space_dim}"
        )
    return frame.vectors.conj() @ v


def synthesis(frame: Frame, c) -> np.ndarray:
    """``sum_i c_i psi_i``."""
    coef = as_vector(c)
    if coef.shape[0] != frame.cardinality:
        raise PreconditionError(
            f"{coef.shape[0]} coefficients for {frame.cardinality} frame vectors"
        )
    return frame.vectors.T @ coef


def cross_gram(frame_a: Frame, frame_b: Frame) -> np.ndarray:
    """Matrix with entries ``<a_{i'}, b_i>``; equals the composition
    ``analysis(frame_b, .) o synthesis(frame_a, .)`` on coefficients."""
    if frame_a.space_dim != frame_b.space_dim:
        raise PreconditionError("frames live in different spaces")
    return frame_b.vectors.conj() @ frame_a.vectors.T


def gram(frame: Frame) -> np.ndarray:
    return cross_gram(frame, frame)


def frame_operator(frame: Frame) -> np.ndarray:
    """``sum_i psi_i psi_i^H``, Hermitian positive definite."""
    V = frame.vectors
    return V.T @ V.conj()


def frame_bounds(frame: Frame) -> tuple[float, float]:
    """Optimal bounds: extreme eigenvalues of the frame operator."""
    eigs = np.linalg.eigvalsh(frame_operator(frame))
    if eigs[0] <= SPAN_RTOL * max(eigs[-1], 1e-300):
        raise NotAFrameError("rank-deficient family has no lower frame bound")
    return float(eigs[0]), float(eigs[-1])


def canonical_dual(frame: Frame, condition_rtol: float = 1e-10) -> FramePair:
    """Pair the frame with ``{S^-1 psi_i}`` and its optimal bounds."""
    S = frame_operator(frame)
    a, b = frame_bounds(frame)
    if a < condition_rtol * b:
        raise ConditioningError(
            f"frame too ill-conditioned for a stable dual (A/B = {a / b:.3e})",
            smallest_eigenvalue=a,
        )
    dual_vectors = solve_posdef(S, frame.vectors.T).T
    dual = Frame(
        space_dim=frame.space_dim, index_set=frame.index_set, vectors=dual_vectors
    )
    return FramePair(frame=frame, dual=dual, bounds=(a, b))


def dual_pair(pair: FramePair) -> FramePair:
    """The pair seen from the dual side: the canonical dual of the dual
    frame is the original frame and the bounds invert."""
    a, b = pair.bounds
    return FramePair(frame=pair.dual, dual=pair.frame, bounds=(1.0 / b, 1.0 / a))


def is_orthonormal_basis(pair: FramePair, tol: float = 1e-12) -> bool:
    """Whether the primal frame is an orthonormal basis (Gram equals the
    identity and the cardinality matches the dimension)."""
    frame = pair.frame
    if frame.cardinality != frame.space_dim:
        return False
    G = frame.vectors.conj() @ frame.vectors.T
    return float(np.max(np.abs(G - np.eye(frame.space_dim)))) <= tol


def reconstruction_residual(pair: FramePair, f) -> float:
    """``|| D_dual C_frame f - f || / max(||f||, 1)``."""
    v = as_vector(f)
    rebuilt = synthesis(pair.dual, analysis(pair.frame, v))
    return float(np.linalg.norm(rebuilt - v) / max(np.linalg.norm(v), 1.0))


# ---------------------------------------------------------------------------
# serialization


def frame_to_json(frame: Frame) -> dict:
    vectors = [
        [[float(z.real), float(z.imag)] for z in row] for row in frame.vectors
    ]
    return {
        "space_dim": frame.space_dim,
        "index_set": frame.index_set.to_json(),
        "vectors": vectors,
    }


def frame_from_json(obj: dict) -> Frame:
    try:
        d = int(obj["space_dim"])
        index_set = IndexSet.from_json(obj["index_set"])
        rows = obj["vectors"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed frame object: {exc}") from exc
    V = np.array(
        [[complex(re, im) for re, im in row] for row in rows], dtype=complex
    )
    if V.ndim != 2:
        raise PreconditionError("frame vectors must form a rectangular table")
    return Frame(space_dim=d, index_set=index_set, vectors=V)


def save_frame(path, frame: Frame) -> None:
    with open(path, "w") as fh:
        json.dump(frame_to_json(frame), fh)


def load_frame(path) -> Frame:
    with open(path) as fh:
        return frame_from_json(json.load(fh))
