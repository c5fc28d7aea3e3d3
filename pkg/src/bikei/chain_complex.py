"""Birack chain complex of a finite bikei and its degenerate subgroups.

``C_n`` has basis ``X^n`` in lexicographic order.  Matrices act on column
coordinates, so ``boundary_matrix(X, n)`` has ``|X|^(n-1)`` rows and
``|X|^n`` columns.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import _accel
from .errors import DomainError, GuardExceeded
from .intlinalg import as_int_matrix, zeros

__all__ = [
    "ChainBasis",
    "DegenerateGenerators",
    "boundary_matrix",
    "degenerate_generators",
    "render_matrix",
]

MAX_DEGREE = 5
MAX_BASIS = 10**6


@dataclass(frozen=True)
class ChainBasis:
    """Lexicographically ordered tuples of ``X^n`` (elements 1-indexed)."""

    order: int
    degree: int

    @property
    def size(self):
        return self.order**self.degree if self.degree >= 0 else 0

    def index(self, t):
        if len(t) != self.degree:
            raise ValueError(f"expected a {self.degree}-tuple, got {t}")
        i = 0
        for x in t:
            if not 1 <= x <= self.order:
                raise ValueError(f"{x} is not an element of 1..{self.order}")
            i = i * self.order + (x - 1)
        return i

    def tuple(self, i):
        if not 0 <= i < self.size:
            raise IndexError(i)
        out = []
        for _ in range(self.degree):
            i, r = divmod(i, self.order)
            out.append(r + 1)
        return tuple(reversed(out))

    def __iter__(self):
        return iter(product(range(1, self.order + 1), repeat=self.degree))

    def __len__(self):
        return self.size


def _guard(bikei, degree, max_degree):
    if degree < 1:
        raise DomainError(f"degree must be >= 1, got {degree}")
    if degree > max_degree:
        raise GuardExceeded(f"degree {degree} exceeds the guard {max_degree}")
    if bikei.n**degree > MAX_BASIS:
        raise GuardExceeded(f"|X|^n = {bikei.n ** degree} exceeds {MAX_BASIS}")


def boundary_matrix(bikei, n, max_degree=MAX_DEGREE, dense=False):
    """Matrix of the birack boundary ``C_n -> C_{n-1}``.

    Column ``t`` is ``sum_k (-1)^(k-1) (d1_k(t) - d2_k(t))`` where ``d1_k``
    deletes entry k and ``d2_k`` also acts on the earlier entries by
    ``*_ x_k`` and on the later ones by ``*^ x_k``.  ``C_0 = 0``, so the
    degree-1 matrix has no rows.  With ``dense=True`` an ``int64`` array is
    returned instead of exact ``object`` ints.
    """
    _guard(bikei, n, max_degree)
    if n == 1:
        out = np.zeros((0, bikei.n), dtype=np.int64)
    else:
        out = _accel.boundary_dense(bikei.under0, bikei.over0, n)
    return out if dense else as_int_matrix(out)


@dataclass(frozen=True)
class DegenerateGenerators:
    degree: int
    kind: str
    matrix: np.ndarray

    @property
    def count(self):
        return self.matrix.shape[1]


def degenerate_generators(bikei, n, kind="bikei", max_degree=MAX_DEGREE):
    """Generating chains of the degenerate subgroup of ``C_n`` as columns.

    ``kind="bikei"`` gives the bikei degeneracies; ``kind="biquandle"`` keeps
    only the adjacent-repeat tuples (and nothing in degree 1).  Columns are
    emitted in family order without deduplication.
    """
    _guard(bikei, n, max_degree)
    if kind not in ("bikei", "biquandle"):
        raise ValueError(f"unknown degeneracy kind {kind!r}")
    basis = ChainBasis(bikei.n, n)
    X = bikei.elements
    U, O = bikei.under_op, bikei.over_op
    cols = []

    def vec(*terms):
        v = [0] * basis.size
        for coeff, t in terms:
            v[basis.index(t)] += coeff
        return v

    if kind == "bikei" and n == 1:
        for x, y in product(X, X):
            cols.append(vec((1, (x,)), (-1, (U(x, y),))))
            cols.append(vec((1, (x,)), (-1, (O(x, y),))))
    elif kind == "bikei" and n == 2:
        for x in X:
            cols.append(vec((1, (x, x))))
        for x, y in product(X, X):
            cols.append(vec((1, (x, y)), (-1, (U(x, y), O(y, x)))))
        for x, y in product(X, X):
            cols.append(vec((1, (x, y)), (1, (x, O(y, x)))))
        for x, y in product(X, X):
            cols.append(vec((1, (x, y)), (1, (U(x, y), y))))
    elif n >= 2:
        for i, t in enumerate(basis):
            if any(t[j] == t[j + 1] for j in range(n - 1)):
                v = [0] * basis.size
                v[i] = 1
                cols.append(v)
    if not cols:
        return DegenerateGenerators(n, kind, zeros(basis.size, 0))
    return DegenerateGenerators(n, kind, as_int_matrix([list(c) for c in zip(*cols)]))


def render_matrix(M):
    """Plain-text dump: ``rows cols`` then one line per row."""
    rows, cols = M.shape
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in M.tolist())
    return "\n".join(lines) + "\n"
