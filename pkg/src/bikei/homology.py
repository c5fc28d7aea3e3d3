"""Bikei homology and cohomology, 2-cocycles, and linear Mochizuki cocycles."""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .algebra import Bikei, alexander_bikei
from .chain_complex import ChainBasis, boundary_matrix, degenerate_generators
from .errors import DomainError, ParseError
from .intlinalg import (
    AbelianGroupShape,
    in_lattice,
    lattice_quotient,
    preimage_lattice,
    quotient_generators,
    solve_mod,
    zeros,
)

__all__ = [
    "CocycleCheck",
    "Cocycle2",
    "CohomologyResult",
    "bikei_cohomology",
    "bikei_homology",
    "is_cocycle_2",
    "load_cocycle",
    "mochizuki_cocycle",
    "parse_cocycle",
    "render_cocycle",
]


def bikei_homology(bikei, n, kind="bikei", max_degree=5):
    """Shape of ``H_n`` of the quotient complex ``C / C^D`` with Z coefficients.

    Computed as ``L / M`` with ``L`` the chains whose boundary is degenerate
    and ``M`` the boundaries plus the degenerate chains.  ``kind`` selects
    the bikei or the plain adjacent-repeat (biquandle) degeneracies.
    """
    dn = boundary_matrix(bikei, n, max_degree)
    size = bikei.n**n
    if n >= 2:
        lower = degenerate_generators(bikei, n - 1, kind, max_degree).matrix
        L = preimage_lattice(dn, lower)
    else:
        L = preimage_lattice(dn, zeros(0, 0))
    upper = boundary_matrix(bikei, n + 1, max_degree + 1)
    M = np.concatenate([upper, degenerate_generators(bikei, n, kind, max_degree).matrix], axis=1)
    try:
        return lattice_quotient(size, L, M)
    except DomainError as exc:
        raise DomainError(f"degenerate chains do not form a subcomplex in degree {n}: {exc}") from exc


@dataclass(frozen=True)
class CohomologyResult:
    """``H^n`` with Z/N coefficients.

    ``cocycle_basis`` holds one representative cochain per cyclic factor of
    ``group`` (flat residue tuples over the lexicographic basis of ``X^n``),
    paired with the factor orders in ``orders``.
    """

    degree: int
    modulus: int
    group: AbelianGroupShape
    cocycle_basis: tuple
    orders: tuple
    cocycles: AbelianGroupShape
    _cocycle_lattice: np.ndarray = field(repr=False, compare=False)
    _coboundary_lattice: np.ndarray = field(repr=False, compare=False)

    def is_cocycle(self, values):
        return in_lattice(_flat(values), self._cocycle_lattice)

    def is_coboundary(self, values):
        """True when the cochain is zero in cohomology."""
        return in_lattice(_flat(values), self._coboundary_lattice)


def _flat(values):
    if isinstance(values, Cocycle2):
        values = values.values
    out = []
    for v in values:
        if isinstance(v, (tuple, list)):
            out.extend(int(w) for w in v)
        else:
            out.append(int(v))
    return out


def bikei_cohomology(bikei, n, N, kind="bikei", max_degree=5):
    """``H^n(X; Z/N)`` for cochains vanishing on the degenerate generators."""
    N = int(N)
    if N < 2:
        raise DomainError("modulus must be at least 2")
    size = bikei.n**n
    Dn = degenerate_generators(bikei, n, kind, max_degree).matrix
    up = boundary_matrix(bikei, n + 1, max_degree + 1)
    constraints = np.concatenate([Dn.T, up.T], axis=0)
    Z = solve_mod(constraints, N).lattice
    pieces = [_scaled_identity(size, N)]
    if n >= 2:
        lower = degenerate_generators(bikei, n - 1, kind, max_degree).matrix
        K = solve_mod(lower.T, N).lattice
        dn = boundary_matrix(bikei, n, max_degree)
        pieces.insert(0, dn.T.dot(K) if K.shape[1] else zeros(size, 0))
    B = np.concatenate(pieces, axis=1)
    try:
        gens = quotient_generators(size, Z, B)
    except DomainError as exc:
        raise DomainError(f"coboundaries are not cocycles in degree {n}: {exc}") from exc
    orders = []
    reps = []
    for order, vec in sorted(((o, tuple(int(v) % N for v in g)) for o, g in gens)):
        orders.append(order)
        reps.append(vec)
    group = AbelianGroupShape(0, tuple(orders))
    cocycles = lattice_quotient(size, Z, _scaled_identity(size, N))
    return CohomologyResult(n, N, group, tuple(reps), tuple(orders), cocycles, Z, B)


def _scaled_identity(n, N):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = N
    return out


# ---------------------------------------------------------------------------
# 2-cocycles


@dataclass(frozen=True)
class Cocycle2:
    """A 2-cochain ``X x X -> Z/N`` stored densely; ``values[x-1][y-1]``."""

    bikei: Bikei
    modulus: int
    values: tuple

    def __post_init__(self):
        n, N = self.bikei.n, int(self.modulus)
        if N < 2:
            raise DomainError("modulus must be at least 2")
        rows = tuple(tuple(int(v) % N for v in row) for row in self.values)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DomainError(f"cocycle table must be {n}x{n}")
        object.__setattr__(self, "values", rows)
        object.__setattr__(self, "modulus", N)

    def __call__(self, x, y):
        return self.values[x - 1][y - 1]

    @classmethod
    def from_flat(cls, bikei, modulus, flat):
        n = bikei.n
        return cls(bikei, modulus, [flat[i * n : (i + 1) * n] for i in range(n)])

    def is_zero(self):
        return not any(v for row in self.values for v in row)


DEGENERACY_CONDITIONS = (
    "phi(x,x) = 0",
    "phi(x,y) - phi(x*_y, y*^x) = 0",
    "phi(x,y) + phi(x*_y, y) = 0",
    "phi(x,y) + phi(x, y*^x) = 0",
)
COCYCLE_CONDITION = "phi(d3(x,y,z)) = 0"


@dataclass(frozen=True)
class CocycleCheck:
    """``violations`` lists ``(condition, witness, value)`` in checking order."""

    violations: tuple = ()

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def describe(self):
        if self.valid:
            return "valid"
        cond, witness, value = self.first
        return f"invalid: {cond} fails at {witness} (value {value})"


def is_cocycle_2(bikei, phi, N=None):
    """Check the four degeneracy families, then ``phi o d3 = 0`` mod N.

    ``phi`` is a :class:`Cocycle2` or an n x n table (then ``N`` is required).
    Witnesses are element tuples, first in lexicographic order per condition.
    """
    if isinstance(phi, Cocycle2):
        N = phi.modulus
        table = phi.values
    else:
        if N is None:
            raise DomainError("modulus required for a bare table")
        table = Cocycle2(bikei, N, phi).values
    X = bikei.elements
    U, O = bikei.under_op, bikei.over_op

    def f(x, y):
        return table[x - 1][y - 1]

    families = (
        lambda x, y: f(x, x) if x == y else 0,
        lambda x, y: f(x, y) - f(U(x, y), O(y, x)),
        lambda x, y: f(x, y) + f(U(x, y), y),
        lambda x, y: f(x, y) + f(x, O(y, x)),
    )
    violations = []
    for name, fam in zip(DEGENERACY_CONDITIONS, families):
        for x, y in product(X, X):
            v = fam(x, y) % N
            if v:
                witness = (x,) if name == DEGENERACY_CONDITIONS[0] else (x, y)
                violations.append((name, witness, v))
                break
    d3 = boundary_matrix(bikei, 3, dense=True)
    vec = np.array([v for row in table for v in row], dtype=np.int64)
    values = (vec @ d3) % N
    bad = np.flatnonzero(values)
    if bad.size:
        i = int(bad[0])
        violations.append((COCYCLE_CONDITION, ChainBasis(bikei.n, 3).tuple(i), int(values[i])))
    return CocycleCheck(tuple(violations))


def mochizuki_cocycle(N, s, t, a):
    """Linear cocycle ``phi(x,y) = a x - a y`` on the Alexander structure (N, s, t).

    Needs ``2a = a(1+s) = a(1+t) = a(1-t) = a(s-t-2) = 0`` mod N.
    """
    X = alexander_bikei(N, s, t)
    conditions = (
        ("2a = 0", 2 * a),
        ("a(1+s) = 0", a * (1 + s)),
        ("a(1+t) = 0", a * (1 + t)),
        ("a(1-t) = 0", a * (1 - t)),
        ("a(s-t-2) = 0", a * (s - t - 2)),
    )
    failing = [f"{name} (got {value % N} mod {N})" for name, value in conditions if value % N]
    if failing:
        raise DomainError("Mochizuki conditions fail: " + "; ".join(failing))
    values = [[(a * x - a * y) % N for y in range(N)] for x in range(N)]
    return Cocycle2(X, N, values)


# ---------------------------------------------------------------------------
# text format: "n N" then n rows of n residues


def parse_cocycle(text, bikei=None, source=None):
    """Parse a cocycle file; returns a :class:`Cocycle2` when ``bikei`` is given,
    else ``(n, N, rows)``."""
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno, source) from None
        if header is None:
            if len(values) != 2 or values[0] < 1 or values[1] < 2:
                raise ParseError("header must be 'n N' with n >= 1 and N >= 2", lineno, source)
            header = values
            continue
        n, N = header
        if len(rows) == n:
            raise ParseError(f"more than {n} rows", lineno, source)
        if len(values) != n:
            raise ParseError(f"expected {n} residues, found {len(values)}", lineno, source)
        for v in values:
            if not 0 <= v < N:
                raise ParseError(f"residue {v} outside 0..{N - 1}", lineno, source)
        rows.append(tuple(values))
    if header is None:
        raise ParseError("empty cocycle file", None, source)
    n, N = header
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", None, source)
    if bikei is None:
        return n, N, tuple(rows)
    if bikei.n != n:
        raise ParseError(f"cocycle is for order {n}, bikei has order {bikei.n}", 1, source)
    return Cocycle2(bikei, N, rows)


def render_cocycle(phi):
    lines = [f"{phi.bikei.n} {phi.modulus}"]
    lines.extend(" ".join(str(v) for v in row) for row in phi.values)
    return "\n".join(lines) + "\n"


def load_cocycle(path, bikei=None):
    with open(path) as fh:
        return parse_cocycle(fh.read(), bikei, source=str(path))
