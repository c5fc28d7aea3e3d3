"""Exact integer linear algebra on ``object``-dtype numpy arrays.

Entries are Python ints, so nothing overflows.  Matrices may have zero rows
or zero columns.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "AbelianGroupShape",
    "ModKernel",
    "as_int_matrix",
    "image_basis",
    "in_lattice",
    "kernel_basis",
    "lattice_quotient",
    "preimage_lattice",
    "quotient_generators",
    "rank",
    "row_echelon",
    "smith_normal_form",
    "solve_mod",
]


def as_int_matrix(a, rows=None, cols=None):
    """Copy ``a`` into a 2-d object array of Python ints.

    ``rows``/``cols`` give the shape for empty input.
    """
    if isinstance(a, np.ndarray) and a.ndim == 2:
        out = np.empty(a.shape, dtype=object)
        for i, row in enumerate(a.tolist()):
            out[i, :] = [int(v) for v in row]
        return out
    data = [list(r) for r in a]
    if not data:
        return np.empty((rows or 0, cols or 0), dtype=object)
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise ValueError("ragged matrix")
    out = np.empty((len(data), width), dtype=object)
    for i, r in enumerate(data):
        for j, v in enumerate(r):
            out[i, j] = int(v)
    return out


def zeros(rows, cols):
    # object zeros are Python ints
    return np.zeros((rows, cols), dtype=object)


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def matmul(a, b):
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


@dataclass(frozen=True)
class AbelianGroupShape:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in tors:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"torsion {tors} violates the divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_diagonal(cls, diag, rank_total):
        """Shape of ``Z^rank_total / <diag>`` from Smith diagonal entries."""
        diag = [abs(int(d)) for d in diag]
        nonzero = [d for d in diag if d]
        return cls(rank_total - len(nonzero), tuple(d for d in nonzero if d > 1))

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


# ---------------------------------------------------------------------------
# echelon and Smith forms


def _argmin_abs(block, start_row, col):
    best = None
    best_i = -1
    for i in range(start_row, block.shape[0]):
        v = block[i, col]
        if v:
            a = abs(v)
            if best is None or a < best:
                best, best_i = a, i
    return best_i


def row_echelon(a, transform=True):
    """Row-style Hermite form: ``U @ a == H`` with ``U`` unimodular.

    Pivots are positive and the entries above each pivot are reduced into
    ``[0, pivot)``.  Returns ``(H, U, pivot_columns)``; ``U`` is None when
    ``transform`` is false.
    """
    H = as_int_matrix(a)
    m, n = H.shape
    U = identity(m) if transform else None
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            p = _argmin_abs(H, r, c)
            if p < 0:
                break
            if p != r:
                H[[r, p]] = H[[p, r]]
                if transform:
                    U[[r, p]] = U[[p, r]]
            done = True
            piv = H[r, c]
            for i in range(r + 1, m):
                v = H[i, c]
                if v:
                    q = v // piv
                    H[i] -= q * H[r]
                    if transform:
                        U[i] -= q * U[r]
                    if H[i, c]:
                        done = False
            if done:
                break
        if p < 0 and not H[r, c]:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
            if transform:
                U[r] = -U[r]
        piv = H[r, c]
        for i in range(r):
            q = H[i, c] // piv
            if q:
                H[i] -= q * H[r]
                if transform:
                    U[i] -= q * U[r]
        pivots.append(c)
        r += 1
    return H, U, tuple(pivots)


def rank(a):
    return len(row_echelon(a, transform=False)[2])


def smith_normal_form(a):
    """``(U, D, V)`` with ``U @ a @ V == D`` diagonal and ``U``, ``V`` unimodular.

    Diagonal entries are non-negative and each divides the next.  The pivot is
    the smallest non-zero absolute value, ties broken in row-major order.
    """
    D = as_int_matrix(a)
    m, n = D.shape
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        # pivot: smallest |entry| in the trailing block, row-major tie-break
        best = None
        bi = bj = -1
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best, bi, bj = abs(v), i, j
        if best is None:
            break
        if bi != t:
            D[[t, bi]] = D[[bi, t]]
            U[[t, bi]] = U[[bi, t]]
        if bj != t:
            D[:, [t, bj]] = D[:, [bj, t]]
            V[:, [t, bj]] = V[:, [bj, t]]
        clean = True
        piv = D[t, t]
        for i in range(t + 1, m):
            v = D[i, t]
            if v:
                q = v // piv
                D[i] -= q * D[t]
                U[i] -= q * U[t]
                if D[i, t]:
                    clean = False
        for j in range(t + 1, n):
            v = D[t, j]
            if v:
                q = v // piv
                D[:, j] -= q * D[:, t]
                V[:, j] -= q * V[:, t]
                if D[t, j]:
                    clean = False
        if not clean:
            continue
        # divisibility: fold an offending row into row t and redo this step
        bad = -1
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if D[i, j] % piv:
                    bad = i
                    break
            if bad >= 0:
                break
        if bad >= 0:
            D[t] += D[bad]
            U[t] += U[bad]
            continue
        if piv < 0:
            D[t] = -D[t]
            U[t] = -U[t]
        t += 1
    return U, D, V


def diagonal(D):
    return [int(D[i, i]) for i in range(min(D.shape))]


# ---------------------------------------------------------------------------
# lattices (column spans)


def kernel_basis(a):
    """Columns forming a Z-basis of ``{v : a @ v == 0}``."""
    A = as_int_matrix(a)
    m, n = A.shape
    if m == 0:
        return identity(n)
    H, U, piv = row_echelon(A.T)
    r = len(piv)
    # rows of U beyond the rank annihilate A
    return np.ascontiguousarray(U[r:].T) if n - r else zeros(n, 0)


def image_basis(a):
    """Columns forming a Z-basis of the column span of ``a``."""
    A = as_int_matrix(a)
    m, n = A.shape
    if n == 0:
        return zeros(m, 0)
    H, _, piv = row_echelon(A.T, transform=False)
    return np.ascontiguousarray(H[: len(piv)].T)


def _coordinates(B, M):
    """Integer ``C`` with ``B @ C == M`` for a full-column-rank basis ``B``.

    Raises DomainError when some column of ``M`` is not in the span.
    """
    r, k = B.shape
    if M.shape[1] == 0:
        return zeros(k, 0)
    H, U, piv = row_echelon(B)
    if len(piv) != k:
        raise ValueError("basis is not of full column rank")
    R = matmul(U, M)
    if k < r and any(v for v in R[k:].reshape(-1)):
        raise DomainError("sublattice is not contained in the lattice (rational span)")
    C = zeros(k, M.shape[1])
    for i in range(k - 1, -1, -1):
        c = piv[i]
        acc = R[i].copy()
        for j in range(i + 1, k):
            if H[i, piv[j]]:
                acc -= H[i, piv[j]] * C[j]
        d = H[i, c]
        for col in range(acc.shape[0]):
            if acc[col] % d:
                raise DomainError("sublattice is not contained in the lattice")
        C[i] = acc // d
    return C


def in_lattice(v, L):
    """Whether the vector ``v`` lies in the column span of ``L``."""
    v = as_int_matrix([[int(x)] for x in v], rows=0, cols=1)
    B = image_basis(L)
    if B.shape[1] == 0:
        return not any(v.reshape(-1))
    try:
        _coordinates(B, v)
    except DomainError:
        return False
    return True


def lattice_quotient(ambient_rank, L, M):
    """Shape of ``span(L) / span(M)`` for column spans ``M`` inside ``L`` in Z^r."""
    L = _cols(L, ambient_rank)
    M = _cols(M, ambient_rank)
    B = image_basis(L)
    k = B.shape[1]
    if k == 0:
        if any(v for v in M.reshape(-1)):
            raise DomainError("sublattice is not contained in the zero lattice")
        return AbelianGroupShape()
    C = _coordinates(B, M)
    if C.shape[1] == 0:
        return AbelianGroupShape(k)
    _, D, _ = smith_normal_form(C)
    return AbelianGroupShape.from_diagonal(diagonal(D), k)


def quotient_generators(ambient_rank, L, M):
    """Generators of the cyclic factors of ``span(L) / span(M)``.

    Returns ``[(order, vector), ...]`` for every factor that is not trivial;
    ``order`` 0 marks a free factor.  Vectors are lists of ints in Z^r.
    """
    L = _cols(L, ambient_rank)
    M = _cols(M, ambient_rank)
    B = image_basis(L)
    k = B.shape[1]
    if k == 0:
        if any(v for v in M.reshape(-1)):
            raise DomainError("sublattice is not contained in the zero lattice")
        return []
    C = _coordinates(B, M)
    if C.shape[1] == 0:
        U, diag = identity(k), [0] * k
    else:
        U, D, _ = smith_normal_form(C)
        diag = diagonal(D) + [0] * (k - min(D.shape))
    # new basis B U^-1 has the sublattice spanned by diag[i] * (column i)
    _, Uinv, _ = row_echelon(U)
    newB = matmul(B, Uinv)
    out = []
    for i in range(k):
        d = abs(diag[i])
        if d != 1:
            out.append((d, [int(v) for v in newB[:, i]]))
    return out


def preimage_lattice(A, L):
    """Columns spanning ``{v : A @ v in span(L)}``."""
    A = as_int_matrix(A)
    m, n = A.shape
    L = _cols(L, m)
    if m == 0:
        return identity(n)
    stacked = np.concatenate([A, L], axis=1)
    K = kernel_basis(stacked)
    return image_basis(K[:n])


def _cols(a, rows):
    if isinstance(a, np.ndarray):
        if a.ndim != 2 or a.shape[0] != rows:
            raise ValueError(f"expected {rows} rows, got shape {a.shape}")
        return as_int_matrix(a)
    out = as_int_matrix(a, rows=rows, cols=0)
    if out.shape[0] != rows:
        raise ValueError(f"expected {rows} rows, got {out.shape[0]}")
    return out


# ---------------------------------------------------------------------------
# linear systems over Z/N


@dataclass(frozen=True)
class ModKernel:
    """Solutions of ``A x = 0`` over Z/N.

    ``generators`` are columns with residues in ``[0, N)`` spanning the
    solution group; ``lattice`` is a Z-basis of the lifted solution lattice
    (which contains ``N Z^c``).
    """

    modulus: int
    generators: np.ndarray
    lattice: np.ndarray
    shape: AbelianGroupShape
    image_shape: AbelianGroupShape

    @property
    def size(self):
        return self.shape.order

    @property
    def image_size(self):
        return self.image_shape.order


def solve_mod(A, N):
    """Kernel of ``A`` modulo ``N`` (any ``N >= 2``, prime or not)."""
    N = int(N)
    if N < 2:
        raise DomainError("modulus must be at least 2")
    A = as_int_matrix(A)
    c = A.shape[1]
    # U @ A = H with U unimodular: same solutions mod N, isomorphic image
    H, _, piv = row_echelon(A, transform=False)
    A = H[: len(piv)]
    r = A.shape[0]
    NI_c = _scaled_identity(c, N)
    if r == 0:
        lattice = identity(c)
    else:
        stacked = np.concatenate([A, _scaled_identity(r, N)], axis=1)
        lattice = image_basis(kernel_basis(stacked)[:c])
    shape = lattice_quotient(c, lattice, NI_c)
    gens = []
    for j in range(lattice.shape[1]):
        g = [int(v) % N for v in lattice[:, j]]
        if any(g) and g not in gens:
            gens.append(g)
    gens.sort()
    G = as_int_matrix([list(x) for x in zip(*gens)], rows=c, cols=0) if gens else zeros(c, 0)
    # image of A mod N lives in (Z/N)^r: size N^c / |kernel|
    full = AbelianGroupShape(0, (N,) * c)
    image_order = (full.order or 1) // (shape.order or 1)
    image_shape = _image_shape(A, N) if r else AbelianGroupShape()
    if (image_shape.order or 1) != image_order:
        raise AssertionError("inconsistent kernel/image orders")
    return ModKernel(N, G, lattice, shape, image_shape)


def _image_shape(A, N):
    r = A.shape[0]
    # image of A in (Z/N)^r = (span(A) + N Z^r) / N Z^r
    span = np.concatenate([A, _scaled_identity(r, N)], axis=1)
    return lattice_quotient(r, span, _scaled_identity(r, N))


def _scaled_identity(n, N):
    out = identity(n)
    for i in range(n):
        out[i, i] = N
    return out
