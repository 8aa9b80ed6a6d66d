"""Matrices patterned on a digraph and the constructive null-vector witnesses.

Convention: for ``i != j`` the entry ``X[i, j]`` (1-based) is nonzero exactly
when ``(j, i)`` is an arc, so column ``j`` carries the out-neighbours of
``j``. Diagonal entries are free. Arrays are 0-based internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .forcing import _closure_mask, _from_mask, _to_mask, _validated
from .graphs import Digraph, GraphError

NUMERIC_TOL = 1e-9

SubclassKind = Literal["full", "symmetric", "symmetric_same_sign"]


@dataclass(frozen=True)
class SubclassSpec:
    kind: SubclassKind = "full"
    sign: int = 1

    def __post_init__(self):
        if self.kind not in ("full", "symmetric", "symmetric_same_sign"):
            raise ValueError(f"unknown subclass {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def symmetric(self) -> bool:
        return self.kind != "full"


FULL = SubclassSpec("full")
SYMMETRIC = SubclassSpec("symmetric")


@dataclass(frozen=True, eq=False)
class PatternMatrix:
    entries: np.ndarray
    graph: Digraph

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.shape != (self.graph.n, self.graph.n):
            raise ValueError(f"expected {self.graph.n}x{self.graph.n} matrix, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def to_json(self) -> dict:
        return matrix_to_json(self.entries)


def matrix_to_json(X: np.ndarray) -> dict:
    rows = [[int(v) if float(v).is_integer() else float(v) for v in row] for row in np.asarray(X)]
    return {"n": len(rows), "rows": rows}


def matrix_from_json(data: dict) -> np.ndarray:
    X = np.array(data["rows"], dtype=float)
    n = int(data.get("n", len(X)))
    if X.shape != (n, n):
        raise ValueError(f"matrix rows do not form a {n}x{n} array")
    return X


def _pattern(G: Digraph) -> np.ndarray:
    return G.adjacency().astype(bool)


def _require_symmetric(G: Digraph) -> None:
    if not G.is_symmetric():
        raise GraphError("symmetric subclass requires a symmetric arc set")


def sample_matrix(G: Digraph, spec: SubclassSpec = FULL, seed=None) -> PatternMatrix:
    """Draw a random member of the class.

    Off-diagonal nonzeros have magnitude uniform on [0.2, 2] and a random sign
    (the spec's sign for ``symmetric_same_sign``); diagonals are uniform on
    [-2, 2].
    """
    if spec.symmetric:
        _require_symmetric(G)
    rng = np.random.default_rng(seed)
    n = G.n
    mags = rng.uniform(0.2, 2.0, size=(n, n))
    if spec.kind == "symmetric_same_sign":
        signs = np.full((n, n), float(spec.sign))
    else:
        signs = np.where(rng.random((n, n)) < 0.5, -1.0, 1.0)
    X = np.where(_pattern(G), mags * signs, 0.0)
    if spec.symmetric:
        upper = np.triu(X, 1)
        X = upper + upper.T
    np.fill_diagonal(X, rng.uniform(-2.0, 2.0, size=n))
    return PatternMatrix(X, G)


def conforms(G: Digraph, X, spec: SubclassSpec = FULL) -> bool:
    X = X.entries if isinstance(X, PatternMatrix) else np.asarray(X, dtype=float)
    if X.shape != (G.n, G.n):
        raise ValueError(f"expected {G.n}x{G.n} matrix, got {X.shape}")
    off = ~np.eye(G.n, dtype=bool)
    pattern = _pattern(G)
    if np.any(X[off & ~pattern] != 0) or np.any(X[pattern] == 0):
        return False
    if spec.symmetric:
        if not G.is_symmetric() or not np.array_equal(X, X.T):
            return False
        if spec.kind == "symmetric_same_sign" and np.any(np.sign(X[pattern]) != spec.sign):
            return False
    return True


def _balanced(m: int) -> list[int]:
    """``m - 1`` ones followed by ``-(m - 1)``; sums to zero for ``m >= 2``."""
    return [1] * (m - 1) + [-(m - 1)]


def uncontrollable_witness(G: Digraph, leaders) -> tuple[PatternMatrix, np.ndarray] | None:
    """Integer ``X`` in the class and ``z`` with ``z^T [X U] = 0``, or None.

    None means ``leaders`` is a zero forcing set. Otherwise ``z`` indicates the
    vertices left white by the derived set. A stalled closure leaves every
    black vertex with zero or at least two white out-neighbours, so each such
    column is balanced to sum to zero over the white rows; white columns are
    balanced through their diagonal entry.
    """
    leaders = _validated(G, leaders)
    black = _from_mask(_closure_mask(G.out_masks, _to_mask(leaders)))
    if len(black) == G.n:
        return None
    X = np.zeros((G.n, G.n))
    for u in G.vertices:
        outs = G.out_neighbors(u)
        white_out = [w for w in outs if w not in black]
        for w in outs:
            X[w - 1, u - 1] = 1.0
        if u in black:
            if len(white_out) == 1:
                raise AssertionError("closure stalled with an applicable force")
            if white_out:
                for w, val in zip(white_out, _balanced(len(white_out))):
                    X[w - 1, u - 1] = val
        else:
            X[u - 1, u - 1] = -float(len(white_out))
    z = np.array([0.0 if v in black else 1.0 for v in G.vertices])
    return PatternMatrix(X, G), z


def realify_pbh_null(z, lam, X: PatternMatrix, U, tol: float = NUMERIC_TOL) -> tuple[np.ndarray, PatternMatrix]:
    """Turn a complex left null vector of ``[X - lam I, U]`` into a real one of ``[Xhat, U]``.

    ``x = Re z + alpha Im z`` with ``alpha`` kept off every ratio
    ``-Re z_i / Im z_i``, so ``x`` has the zero pattern of ``z``. ``Xhat``
    differs from ``X`` only on the diagonal.
    """
    z = np.asarray(z, dtype=complex)
    A = X.entries
    U = np.asarray(U, dtype=float).reshape(A.shape[0], -1)
    n = A.shape[0]
    if not np.any(z):
        raise ValueError("z must be nonzero")
    scale = max(1.0, np.abs(z).max()) * max(1.0, np.abs(A).max(), abs(lam))
    residual = np.conj(z) @ np.hstack([A - lam * np.eye(n), U])
    if np.abs(residual).max() > tol * scale:
        raise ValueError(f"z is not a left null vector (residual {np.abs(residual).max():.3g})")

    zero = np.abs(z) <= tol * np.abs(z).max()
    p, q = z.real.copy(), z.imag.copy()
    p[zero] = 0.0
    q[zero] = 0.0
    nz = q != 0
    forbidden = -p[nz] / q[nz]
    alpha = 1.0 + (np.abs(forbidden).max() if forbidden.size else 0.0)
    x = p + alpha * q

    xX = x @ A
    d = np.zeros(n)
    d[~zero] = xX[~zero] / x[~zero]
    Xhat = A - np.diag(d)
    res = max(np.abs(x @ Xhat).max(), np.abs(x @ U).max() if U.size else 0.0)
    if res > tol * max(1.0, np.abs(x).max()) * max(1.0, np.abs(Xhat).max()):
        raise ValueError(f"realified vector fails the null check (residual {res:.3g})")
    return x, PatternMatrix(Xhat, X.graph)


def _is_integral(a: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(a)) and np.all(a == np.round(a)))


def symmetric_rich_witness(G1: Digraph, z, X) -> PatternMatrix:
    """Symmetric ``X'`` in the class with ``z^T X' = 0``, given any ``X`` with ``z^T X = 0``.

    On the support of ``z`` a diagonal correction zeroes ``z^T X'``; the
    block coupling support and zeros is copied from ``X`` and mirrored.
    Integer inputs are handled in rational arithmetic and the result is
    rescaled to integers, so the null relation holds exactly.
    """
    _require_symmetric(G1)
    z = np.asarray(z, dtype=float)
    A = X.entries if isinstance(X, PatternMatrix) else np.asarray(X, dtype=float)
    if not conforms(G1, A):
        raise ValueError("X does not conform to the graph")
    if np.abs(z @ A).max(initial=0.0) > 1e-12 * max(1.0, np.abs(z).max() * np.abs(A).max()):
        raise ValueError("z^T X is not zero")
    n = G1.n
    S = np.flatnonzero(z != 0)
    base = G1.adjacency()  # a symmetric member with zero diagonal

    if _is_integral(z) and _is_integral(A):
        zf = [Fraction(int(v)) for v in z]
        out = [[Fraction(int(v)) for v in row] for row in base]
        support = set(S.tolist())
        for i in support:
            for j in range(n):
                if j not in support:
                    out[i][j] = Fraction(int(A[i, j]))
                    out[j][i] = Fraction(int(A[i, j]))
        for i in S:
            col = sum(zf[r] * out[r][i] for r in S)
            out[i][i] = -col / zf[i]
        denom = math.lcm(*(e.denominator for row in out for e in row))
        Xp = np.array([[float(e * denom) for e in row] for row in out])
    else:
        Xp = base.copy()
        Z = np.setdiff1d(np.arange(n), S)
        Xp[np.ix_(S, Z)] = A[np.ix_(S, Z)]
        Xp[np.ix_(Z, S)] = A[np.ix_(S, Z)].T
        col = z[S] @ Xp[np.ix_(S, S)]
        Xp[S, S] -= col / z[S]
        if np.abs(z @ Xp).max(initial=0.0) > NUMERIC_TOL * max(1.0, np.abs(z).max() * np.abs(Xp).max()):
            raise ArithmeticError("symmetric witness lost the null relation to rounding")
    return PatternMatrix(Xp, G1)


def qss_insufficiency_witness(G1: Digraph) -> tuple[int, np.ndarray, PatternMatrix] | None:
    """Null pair ``(z, X)`` that no same-sign symmetric matrix can share.

    ``k`` is the smallest vertex with at least two out-neighbours and ``z`` is
    all ones except ``z_k = 0``. Returns None when no such vertex exists.
    """
    _require_symmetric(G1)
    ks = [v for v in G1.vertices if len(G1.out_neighbors(v)) >= 2]
    if not ks:
        return None
    k = ks[0]
    X = np.zeros((G1.n, G1.n))
    for u in G1.vertices:
        outs = G1.out_neighbors(u)
        if u == k:
            for w, val in zip(outs, _balanced(len(outs))):
                X[w - 1, u - 1] = val
        else:
            for w in outs:
                X[w - 1, u - 1] = 1.0
            X[u - 1, u - 1] = -float(sum(w != k for w in outs))
    z = np.ones(G1.n)
    z[k - 1] = 0.0
    return k, z, PatternMatrix(X, G1)
