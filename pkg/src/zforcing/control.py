"""Controllability of concrete pairs and the strong structural check.

Numeric verdicts run two independent rank tests, PBH at every eigenvalue
and the Kalman reachability matrix, and refuse to answer when they
disagree. The exact route computes the Kalman rank in rational arithmetic,
which is sound for any float input since floats are rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Literal

import numpy as np

from .forcing import Force, derived_set, is_zfs, zero_forcing_number
from .graphs import Digraph, GraphError
from .qualitative import (
    FULL,
    PatternMatrix,
    SubclassSpec,
    sample_matrix,
    symmetric_rich_witness,
    uncontrollable_witness,
)

DEFAULT_TOL = 1e-10

Method = Literal["numeric", "exact"]


class NumericalAmbiguityError(ArithmeticError):
    """PBH and Kalman rank tests disagree; the pair is too ill-conditioned to call."""


def leader_matrix(n: int, leaders: Iterable[int]) -> np.ndarray:
    """``n x m`` 0/1 matrix whose ``j``-th column is the unit vector at the ``j``-th leader."""
    vs = sorted(set(int(v) for v in leaders))
    for v in vs:
        if not 1 <= v <= n:
            raise GraphError(f"leader {v} out of range 1..{n}")
    U = np.zeros((n, len(vs)))
    for j, v in enumerate(vs):
        U[v - 1, j] = 1.0
    return U


def rational_rank(M) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    rows = [[Fraction(v) if not isinstance(v, Fraction) else v for v in row] for row in M]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            f = rows[r][c]
            if f:
                f = f / p[c]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _exact_kalman_rank(X: np.ndarray, U: np.ndarray) -> int:
    n, m = U.shape
    A = [[Fraction(float(v)) for v in row] for row in X]
    block = [[Fraction(float(v)) for v in row] for row in U]
    cols = [list(r) for r in block]
    for _ in range(n - 1):
        block = [[sum(A[i][k] * block[k][j] for k in range(n)) for j in range(m)] for i in range(n)]
        for i in range(n):
            cols[i].extend(block[i])
    return rational_rank(cols)


def _numeric_ranks(Xs: np.ndarray, U: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised PBH and Kalman full-rank flags for a stack ``Xs`` of shape ``(S, n, n)``."""
    S, n, _ = Xs.shape
    m = U.shape[1]
    eye = np.eye(n)

    eig = np.linalg.eigvals(Xs)
    shifted = Xs[:, None, :, :] - eig[:, :, None, None] * eye
    Ub = np.broadcast_to(U.astype(complex), (S, n, n, m))
    sv = np.linalg.svd(np.concatenate([shifted, Ub], axis=-1), compute_uv=False)
    thresh = tol * sv[..., :1] * max(n, n + m)
    pbh = np.all((sv > thresh).sum(axis=-1) == n, axis=1)

    # Rank is invariant under scaling X; unit spectral norm keeps powers bounded.
    norms = np.linalg.norm(Xs, ord=2, axis=(1, 2))
    Xn = Xs / np.where(norms > 0, norms, 1.0)[:, None, None]
    blocks = [np.broadcast_to(U, (S, n, m))]
    for _ in range(n - 1):
        blocks.append(Xn @ blocks[-1])
    K = np.concatenate(blocks, axis=-1)
    ks = np.linalg.svd(K, compute_uv=False)
    kalman = (ks > tol * ks[:, :1] * max(n, n * m)).sum(axis=-1) == n
    return pbh, kalman


def is_controllable_pair(X, U, tol: float = DEFAULT_TOL, method: Method = "numeric") -> bool:
    """Decide controllability of ``(X, U)``.

    ``method="numeric"`` requires the PBH and Kalman tests to agree and raises
    :class:`NumericalAmbiguityError` otherwise. ``method="exact"`` uses the
    rational Kalman rank.
    """
    X = X.entries if isinstance(X, PatternMatrix) else np.asarray(X, dtype=float)
    U = np.asarray(U, dtype=float)
    n = X.shape[0]
    if X.shape != (n, n) or U.ndim != 2 or U.shape[0] != n:
        raise ValueError(f"shape mismatch: X {X.shape}, U {U.shape}")
    if U.shape[1] == 0:
        return False
    if method == "exact":
        return _exact_kalman_rank(X, U) == n
    if method != "numeric":
        raise ValueError(f"unknown method {method!r}")
    pbh, kalman = _numeric_ranks(X[None], U, tol)
    if pbh[0] != kalman[0]:
        raise NumericalAmbiguityError(f"PBH says {bool(pbh[0])}, Kalman says {bool(kalman[0])}")
    return bool(pbh[0])


def lmin_matrix(X, tol: float = DEFAULT_TOL, method: Method = "numeric") -> tuple[int, frozenset[int]]:
    """Fewest leaders rendering ``(X; V_L)`` controllable, by exhaustive search."""
    X = X.entries if isinstance(X, PatternMatrix) else np.asarray(X, dtype=float)
    n = X.shape[0]
    for k in range(1, n + 1):
        for leaders in combinations(range(1, n + 1), k):
            if is_controllable_pair(X, leader_matrix(n, leaders), tol, method):
                return k, frozenset(leaders)
    raise AssertionError("U = I is always controllable")


def lmin_graph(G: Digraph, budget: int | None = None) -> tuple[int, frozenset[int]]:
    """Fewest leaders controlling every matrix of the class; equals the zero forcing number."""
    res = zero_forcing_number(G, budget)
    return res.zfn, res.witness


@dataclass
class Verdict:
    controllable: bool | str
    leaders: frozenset[int]
    chronicle: list[Force] | None = None
    witness: tuple[PatternMatrix, np.ndarray] | None = None
    symmetric_witness: PatternMatrix | None = None
    samples: int = 0
    samples_checked: int = 0
    numeric_passes: int = 0
    diagnostics: list[str] = field(default_factory=list)
    seed: int | None = None
    tolerance: float = DEFAULT_TOL
    subclass: SubclassSpec = FULL

    def to_json(self) -> dict:
        out = {
            "controllable": self.controllable,
            "leaders": sorted(self.leaders),
            "subclass": self.subclass.kind if self.subclass.kind != "symmetric_same_sign"
            else f"symmetric_same_sign{'+' if self.subclass.sign > 0 else '-'}",
            "certificate": None,
            "witness": None,
            "samples": self.samples,
            "samples_checked": self.samples_checked,
            "numeric_passes": self.numeric_passes,
            "diagnostics": list(self.diagnostics),
            "seed": self.seed,
            "tolerance": self.tolerance,
        }
        if self.chronicle is not None:
            out["certificate"] = {"forces": [list(f) for f in self.chronicle]}
        if self.witness is not None:
            X, z = self.witness
            out["witness"] = {"X": X.to_json(), "z": [int(v) for v in z]}
            if self.symmetric_witness is not None:
                out["witness"]["X_symmetric"] = self.symmetric_witness.to_json()
        return out


def check_strong_structural(
    G: Digraph,
    leaders: Iterable[int],
    num_samples: int = 200,
    seed: int = 0,
    spec: SubclassSpec = FULL,
    tol: float = DEFAULT_TOL,
) -> Verdict:
    """Decide whether ``leaders`` control every matrix of the (sub)class.

    A zero forcing leader set is certified by its forcing chronicle; sampled
    matrices are then checked numerically as a diagnostic only. Otherwise an
    exact integer witness ``(X, z)`` with ``z^T [X U] = 0`` is attached. For the
    same-sign symmetric subclass a non-forcing set gives ``"unknown"``, since
    that subclass is not rich enough for the converse.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    if spec.symmetric and not G.is_symmetric():
        raise GraphError("symmetric subclass requires a symmetric arc set")
    leaders = frozenset(int(v) for v in leaders)
    verdict = Verdict(False, leaders, samples=num_samples, seed=seed, tolerance=tol, subclass=spec)

    if is_zfs(G, leaders):
        verdict.controllable = True
        verdict.chronicle = derived_set(G, leaders)[1]
        U = leader_matrix(G.n, leaders)
        Xs = np.stack([sample_matrix(G, spec, (seed, i)).entries for i in range(num_samples)])
        pbh, kalman = _numeric_ranks(Xs, U, tol)
        verdict.samples_checked = num_samples
        verdict.numeric_passes = int(np.sum(pbh & kalman))
        for i in np.flatnonzero(~(pbh & kalman)):
            kind = "ambiguous" if pbh[i] != kalman[i] else "rank-deficient"
            verdict.diagnostics.append(f"sample {i}: numerically {kind} at tol {tol:g}")
        return verdict

    X, z = uncontrollable_witness(G, leaders)
    verdict.witness = (X, z)
    if spec.kind == "symmetric":
        verdict.symmetric_witness = symmetric_rich_witness(G, z, X)
    elif spec.kind == "symmetric_same_sign":
        verdict.controllable = "unknown"
        verdict.diagnostics.append("same-sign symmetric subclass is not sufficiently rich")
    return verdict
