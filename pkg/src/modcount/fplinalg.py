"""Dense linear algebra over a prime field and color compatibility matrices.

Assignments of colors ``1..q`` to an ordered vertex sequence ``(u_1..u_k)``
are indexed in mixed-radix order, ``sum((c(u_j) - 1) * q**(k - j))``, so the
first vertex is the most significant digit.  Every module that keys tables by
assignments uses :func:`encode_assignment` / :func:`decode_assignment`.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import CapacityError, PreconditionError, SingularMatrixError

# Compatibility matrices are a verification device; refuse anything bigger.
MAX_SIDE_ASSIGNMENTS = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A prime ``p``; construction fails for composite or tiny values."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise PreconditionError(f"modulus must be prime, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def __int__(self):
        return self.p

    def __str__(self):
        return str(self.p)


def as_modulus(p: int | PrimeModulus) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(p)


def _dtype(p: int):
    # int64 keeps row operations and moderate dot products exact
    return np.int64 if p <= 2**20 else object


# -- assignments ------------------------------------------------------------

def encode_assignment(colors: Sequence[int], q: int) -> int:
    key = 0
    for c in colors:
        key = key * q + (c - 1)
    return key


def decode_assignment(key: int, k: int, q: int) -> tuple[int, ...]:
    out = [0] * k
    for j in range(k - 1, -1, -1):
        key, r = divmod(key, q)
        out[j] = r + 1
    return tuple(out)


def iter_assignments(k: int, q: int,
                     lists: Sequence[Iterable[int]] | None = None) -> Iterable[tuple[int, ...]]:
    """Yield color tuples in mixed-radix order, optionally list-restricted."""
    if lists is None:
        return itertools.product(range(1, q + 1), repeat=k)
    return itertools.product(*(sorted(lst) for lst in lists))


def assignment_array(k: int, q: int,
                     lists: Sequence[Iterable[int]] | None = None) -> np.ndarray:
    """All assignments as an ``(N, k)`` integer array in mixed-radix order."""
    if lists is None:
        total = q**k
    else:
        lists = [sorted(lst) for lst in lists]
        if any(not lst for lst in lists):
            raise PreconditionError("vertex with empty color list")
        total = int(np.prod([len(lst) for lst in lists], dtype=object)) if lists else 1
    if total > MAX_SIDE_ASSIGNMENTS:
        raise CapacityError(f"{total} assignments exceed the dense limit {MAX_SIDE_ASSIGNMENTS}")
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = [np.arange(1, q + 1)] * k if lists is None else [np.asarray(l) for l in lists]
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.reshape(-1) for g in grid], axis=1).astype(np.int64)


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Immutable dense matrix with entries in ``[0, p)``."""

    entries: np.ndarray
    modulus: PrimeModulus

    def __post_init__(self):
        mod = as_modulus(self.modulus)
        arr = np.array(self.entries, dtype=_dtype(mod.p), copy=True)
        if arr.ndim != 2:
            raise PreconditionError("FpMatrix entries must be two-dimensional")
        arr = arr % mod.p
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "modulus", mod)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @classmethod
    def identity(cls, n: int, p: int | PrimeModulus) -> FpMatrix:
        return cls(np.eye(n, dtype=np.int64), as_modulus(p))

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (self.p == other.p and self.shape == other.shape
                and bool(np.array_equal(self.entries, other.entries)))

    def __hash__(self):
        return hash((self.p, self.shape, self.entries.tobytes()))

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        _check_same_modulus(self, other)
        if self.cols != other.rows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        return FpMatrix((self.entries @ other.entries) % self.p, self.modulus)

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.tolist()})"


def _check_same_modulus(a: FpMatrix, b: FpMatrix) -> None:
    if a.p != b.p:
        raise PreconditionError(f"modulus mismatch: {a.p} vs {b.p}")


def _row_reduce(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p using first-nonzero pivots.

    Only the first ``ncols`` columns are searched for pivots; row operations
    touch the full width (so an augmented block rides along).
    """
    a = a.copy()
    m, n = a.shape
    if ncols is None:
        ncols = n
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == m:
            break
        nz = np.flatnonzero(a[row:, col] % p)
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), -1, p)
        a[row] = (a[row] * inv) % p
        factors = a[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            a[hit] = (a[hit] - np.outer(factors[hit], a[row])) % p
        pivots.append(col)
        row += 1
    return a, pivots


def fp_rank(m: FpMatrix) -> int:
    """Row rank of ``m`` over F_p.  The input is left untouched."""
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _row_reduce(np.array(m.entries), m.p)
    return len(pivots)


def kronecker(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    _check_same_modulus(a, b)
    return FpMatrix(np.kron(a.entries, b.entries) % a.p, a.modulus)


def fp_inverse(m: FpMatrix) -> FpMatrix:
    """Inverse over F_p; raises :class:`SingularMatrixError` when rank-deficient."""
    if m.rows != m.cols:
        raise PreconditionError(f"inverse of non-square {m.shape} matrix")
    n = m.rows
    aug = np.concatenate([np.array(m.entries), np.eye(n, dtype=m.entries.dtype)], axis=1)
    red, pivots = _row_reduce(aug, m.p, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError(
            f"matrix is singular over F_{m.p} (rank {len(pivots)} < {n})")
    return FpMatrix(red[:, n:], m.modulus)


def lift_representative(m: FpMatrix) -> np.ndarray:
    """Integer matrix with entries in ``{1..p}`` congruent to ``m`` (0 lifts to p)."""
    return (np.array(m.entries, dtype=np.int64) - 1) % m.p + 1


# -- compatibility matrices -------------------------------------------------

@dataclass(frozen=True)
class BipartiteCutGraph:
    """Bipartite graph ``H`` with ordered sides and crossing edges ``(x, y)``."""

    left: tuple
    right: tuple
    edges: frozenset = field(default_factory=frozenset)
    q: int = 3

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        edges = [tuple(e) for e in self.edges]
        left, right = set(self.left), set(self.right)
        if left & right:
            raise PreconditionError("bipartite sides must be disjoint")
        for x, y in edges:
            if x not in left or y not in right:
                raise PreconditionError(f"edge ({x}, {y}) does not go from left to right")
        if len(set(edges)) != len(edges):
            raise PreconditionError("duplicate crossing edge")
        object.__setattr__(self, "edges", frozenset(edges))

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    @classmethod
    def matching(cls, t: int, q: int) -> BipartiteCutGraph:
        """Perfect matching ``x_i y_i`` on ``t`` pairs."""
        left = tuple(f"x{i}" for i in range(1, t + 1))
        right = tuple(f"y{i}" for i in range(1, t + 1))
        return cls(left, right, frozenset(zip(left, right)), q)


def compatibility_mask(h: BipartiteCutGraph,
                       lists: Mapping | None = None) -> np.ndarray:
    """Boolean compatibility matrix; rows/cols are (list-valid) assignments in mixed-radix order."""
    if h.q < 1:
        raise PreconditionError("q must be at least 1")
    left_lists = None if lists is None else [lists[v] for v in h.left]
    right_lists = None if lists is None else [lists[v] for v in h.right]
    rows = assignment_array(len(h.left), h.q, left_lists)
    cols = assignment_array(len(h.right), h.q, right_lists)
    lpos = {v: i for i, v in enumerate(h.left)}
    rpos = {v: i for i, v in enumerate(h.right)}
    mask = np.ones((rows.shape[0], cols.shape[0]), dtype=bool)
    for x, y in sorted(h.edges, key=lambda e: (lpos[e[0]], rpos[e[1]])):
        mask &= rows[:, lpos[x]][:, None] != cols[:, rpos[y]][None, :]
    return mask


def compatibility_matrix(h: BipartiteCutGraph, p: int | PrimeModulus,
                         lists: Mapping | None = None) -> FpMatrix:
    """The q-th color compatibility matrix of ``h`` as an F_p matrix.

    Entry ``[x, y]`` is 1 iff ``x(u) != y(w)`` for every crossing edge ``uw``.
    When ``lists`` (vertex -> allowed colors) is supplied, rows and columns
    are restricted to list-valid assignments.
    """
    return FpMatrix(compatibility_mask(h, lists).astype(np.int64), as_modulus(p))


def edge_matrix(q: int, p: int | PrimeModulus) -> FpMatrix:
    """``J_1``: the ``q x q`` compatibility matrix of a single edge (zero diagonal)."""
    return FpMatrix(np.ones((q, q), dtype=np.int64) - np.eye(q, dtype=np.int64), as_modulus(p))


def matching_rank_bound(q: int, p: int, t: int) -> int:
    """Rank of the matching compatibility matrix on ``t`` pairs."""
    return (q - 1) ** t if (q - 1) % p == 0 else q**t


def kronecker_power(m: FpMatrix, t: int) -> FpMatrix:
    if t < 1:
        raise PreconditionError("Kronecker power needs t >= 1")
    return reduce(kronecker, [m] * t)
