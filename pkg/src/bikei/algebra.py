"""Finite bikei: representation, axioms, constructors, enumeration, morphisms.

Elements are the integers ``1..n``.  ``under[j-1][k-1]`` is ``j *_ k`` (the
under operation) and ``over[j-1][k-1]`` is ``j *^ k`` (the over operation).
Residue-based constructors map residue ``r`` to element ``r + 1``.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

import numpy as np

from . import _accel
from .errors import DomainError, GuardExceeded, ParseError

__all__ = [
    "AxiomReport",
    "Bikei",
    "BikeiHom",
    "MalformedTableError",
    "alexander_bikei",
    "are_isomorphic",
    "canonical_form",
    "constant_action_bikei",
    "enumerate_bikei",
    "enumerate_homomorphisms",
    "find_isomorphism",
    "load_bikei",
    "parse_bikei",
    "relabel",
    "render_bikei",
    "verify_axioms",
]

AXIOM_TAGS = _accel.AXIOM_TAGS


class MalformedTableError(DomainError):
    """Operation tables that are not n x n with entries in 1..n."""


def _as_table(rows, n, name):
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise MalformedTableError(f"{name} table is not a table of integers") from exc
    if len(table) != n or any(len(row) != n for row in table):
        raise MalformedTableError(f"{name} table must be {n}x{n}")
    for j, row in enumerate(table, 1):
        for k, v in enumerate(row, 1):
            if not 1 <= v <= n:
                raise MalformedTableError(
                    f"{name}[{j}][{k}] = {v} is outside 1..{n}"
                )
    return table


@dataclass(frozen=True)
class Bikei:
    """A pair of operation tables on ``{1..n}``.

    Construction only checks the shape and range of the tables; the bikei
    axioms are checked by :func:`verify_axioms`.
    """

    under: tuple
    over: tuple

    def __post_init__(self):
        n = len(self.under)
        if n == 0:
            raise MalformedTableError("a bikei needs at least one element")
        object.__setattr__(self, "under", _as_table(self.under, n, "under"))
        object.__setattr__(self, "over", _as_table(self.over, n, "over"))

    @property
    def n(self):
        return len(self.under)

    def __len__(self):
        return self.n

    @property
    def elements(self):
        return range(1, self.n + 1)

    def under_op(self, x, y):
        return self.under[x - 1][y - 1]

    def over_op(self, x, y):
        return self.over[x - 1][y - 1]

    @cached_property
    def under0(self):
        """0-indexed ``int64`` copy of the under table."""
        a = np.array(self.under, dtype=np.int64) - 1
        a.setflags(write=False)
        return a

    @cached_property
    def over0(self):
        a = np.array(self.over, dtype=np.int64) - 1
        a.setflags(write=False)
        return a

    def matrix(self):
        """The n x 2n block matrix ``[under | over]`` as a tuple of rows."""
        return tuple(u + o for u, o in zip(self.under, self.over))

    @classmethod
    def from_matrix(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0:
            raise MalformedTableError("empty matrix")
        if any(len(r) != 2 * n for r in rows):
            raise MalformedTableError(f"every row of an order-{n} matrix needs {2 * n} entries")
        return cls([r[:n] for r in rows], [r[n:] for r in rows])

    @classmethod
    def from_arrays(cls, under0, over0):
        """Build from 0-indexed arrays."""
        return cls((np.asarray(under0) + 1).tolist(), (np.asarray(over0) + 1).tolist())

    def is_kei(self):
        """True when ``x *^ y = x`` for all x, y."""
        return all(self.over[x][y] == x + 1 for x in range(self.n) for y in range(self.n))

    def __str__(self):
        return render_bikei(self).rstrip("\n")


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of :func:`verify_axioms`.

    ``violations`` holds ``(tag, witness)`` pairs, one per failing axiom, in
    axiom order; each witness is the lexicographically first failing tuple.
    """

    violations: tuple = ()

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def describe(self):
        if self.valid:
            return "valid"
        lines = ["invalid"]
        names = "xyz"
        for tag, witness in self.violations:
            assign = ", ".join(f"{names[i]}={v}" for i, v in enumerate(witness))
            lines.append(f"  axiom ({tag}) fails at {assign}")
        return "\n".join(lines)


def verify_axioms(bikei):
    """Check every bikei axiom exhaustively.

    Uses the standard exchange laws
    ``(x*^y)*^(z*^y) = (x*^z)*^(y*_z)``,
    ``(x*_y)*^(z*_y) = (x*^z)*_(y*^z)`` and
    ``(x*_y)*_(z*_y) = (x*_z)*_(y*^z)``.
    Raises :class:`MalformedTableError` (via construction) for bad tables.
    """
    if not isinstance(bikei, Bikei):
        bikei = Bikei(*bikei)
    hits = _accel.axiom_witnesses(bikei.under0, bikei.over0)
    violations = []
    for k, tag in enumerate(AXIOM_TAGS):
        if hits[k, 0] >= 0:
            arity = _accel.AXIOM_ARITY[k]
            violations.append((tag, tuple(int(v) + 1 for v in hits[k, :arity])))
    return AxiomReport(tuple(violations))


# ---------------------------------------------------------------------------
# constructors


def constant_action_bikei(sigma):
    """``x *_ y = x *^ y = sigma(x)`` for an involution ``sigma`` of ``1..n``.

    ``sigma`` is given as the sequence of images ``(sigma(1), ..., sigma(n))``.
    """
    sigma = [int(v) for v in sigma]
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"sigma = {sigma} is not a permutation of 1..{n}")
    for x, sx in enumerate(sigma, 1):
        if sigma[sx - 1] != x:
            raise DomainError(f"sigma is not an involution: sigma(sigma({x})) = {sigma[sx - 1]}")
    table = [[sigma[x]] * n for x in range(n)]
    return Bikei(table, table)


def alexander_bikei(N, s, t):
    """Alexander structure on Z/N: ``x *_ y = t x + (s - t) y``, ``x *^ y = s x``.

    Requires ``s^2 = t^2 = 1`` and ``(1 - s)(1 - t) = 0`` mod N.  These ring
    conditions do not by themselves force axiom (ii); run
    :func:`verify_axioms` on the result when that matters.
    """
    N, s, t = int(N), int(s), int(t)
    if N < 2:
        raise DomainError(f"modulus must be at least 2, got {N}")
    checks = (
        ("s^2 = 1", s * s - 1),
        ("t^2 = 1", t * t - 1),
        ("(1-s)(1-t) = 0", (1 - s) * (1 - t)),
    )
    for name, value in checks:
        if value % N:
            raise DomainError(f"{name} fails mod {N}: value {value % N}")
    under = [[(t * x + (s - t) * y) % N + 1 for y in range(N)] for x in range(N)]
    over = [[(s * x) % N + 1 for _ in range(N)] for x in range(N)]
    return Bikei(under, over)


# ---------------------------------------------------------------------------
# relabelling, isomorphism, canonical forms


def relabel(bikei, perm):
    """Transport ``bikei`` along the bijection ``x -> perm[x-1]``."""
    p = np.asarray(perm, dtype=np.int64) - 1
    if sorted(p.tolist()) != list(range(bikei.n)):
        raise DomainError(f"{list(perm)} is not a permutation of 1..{bikei.n}")
    inv = np.argsort(p)
    under = p[bikei.under0[np.ix_(inv, inv)]]
    over = p[bikei.over0[np.ix_(inv, inv)]]
    return Bikei.from_arrays(under, over)


def _check_perm_guard(n, limit=8):
    if n > limit:
        raise GuardExceeded(f"permutation search over {n} elements exceeds the guard n <= {limit}")


def find_isomorphism(X, Y):
    """A bijection ``f`` (tuple of images) with ``relabel(X, f) == Y``, or None."""
    if X.n != Y.n:
        return None
    _check_perm_guard(X.n)
    n = X.n
    uy, oy = Y.under0, Y.over0
    ux, ox = X.under0, X.over0
    for p in permutations(range(n)):
        p = np.array(p, dtype=np.int64)
        # f(x * y) == f(x) * f(y)
        if np.array_equal(p[ux], uy[np.ix_(p, p)]) and np.array_equal(p[ox], oy[np.ix_(p, p)]):
            return tuple(int(v) + 1 for v in p)
    return None


def are_isomorphic(X, Y):
    return find_isomorphism(X, Y) is not None


def _canonical_matrix(under0, over0):
    n = under0.shape[0]
    best = None
    for p in permutations(range(n)):
        p = np.array(p, dtype=np.int64)
        inv = np.argsort(p)
        u = p[under0[np.ix_(inv, inv)]]
        o = p[over0[np.ix_(inv, inv)]]
        key = tuple(np.concatenate([u, o], axis=1).ravel().tolist())
        if best is None or key < best:
            best = key
    return best


def canonical_form(bikei):
    """Relabelling of ``bikei`` with the lexicographically least block matrix."""
    _check_perm_guard(bikei.n)
    n = bikei.n
    key = _canonical_matrix(bikei.under0, bikei.over0)
    rows = np.array(key, dtype=np.int64).reshape(n, 2 * n) + 1
    return Bikei.from_matrix(rows.tolist())


def enumerate_bikei(n, max_elements=4, max_nodes=10**7, use_numba=None):
    """One representative per isomorphism class of bikei of order ``n``.

    Representatives are canonical forms, sorted by block matrix.
    """
    n = int(n)
    if n < 1:
        raise DomainError("order must be positive")
    if n > max_elements:
        raise GuardExceeded(f"enumeration of order {n} exceeds --max-elements {max_elements}")
    tables, _, aborted = _accel.search_tables(n, max_nodes, use_numba=use_numba)
    if aborted:
        raise GuardExceeded(f"search exceeded {max_nodes} nodes")
    keys = {_canonical_matrix(t[0], t[1]) for t in tables}
    out = []
    for key in sorted(keys):
        rows = (np.array(key, dtype=np.int64).reshape(n, 2 * n) + 1).tolist()
        out.append(Bikei.from_matrix(rows))
    return out


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class BikeiHom:
    source: Bikei
    target: Bikei
    map: tuple

    def __call__(self, x):
        return self.map[x - 1]

    def is_homomorphism(self):
        f = self.map
        S, T = self.source, self.target
        for x in S.elements:
            for y in S.elements:
                if f[S.under_op(x, y) - 1] != T.under_op(f[x - 1], f[y - 1]):
                    return False
                if f[S.over_op(x, y) - 1] != T.over_op(f[x - 1], f[y - 1]):
                    return False
        return True


def enumerate_homomorphisms(X, Y, max_nodes=10**7):
    """Every bikei homomorphism ``X -> Y``, in lexicographic order of maps."""
    n, m = X.n, Y.n
    ux, ox, uy, oy = X.under, X.over, Y.under, Y.over
    f = [0] * (n + 1)
    found = []
    nodes = 0

    def force(queue):
        # queue of newly assigned elements; returns list of assigned (for undo) or None
        assigned = []
        while queue:
            a = queue.pop()
            for b in range(1, n + 1):
                if not f[b]:
                    continue
                for src, tgt in ((ux, uy), (ox, oy)):
                    for p, q in ((a, b), (b, a)):
                        c = src[p - 1][q - 1]
                        v = tgt[f[p] - 1][f[q] - 1]
                        if not f[c]:
                            f[c] = v
                            assigned.append(c)
                            queue.append(c)
                        elif f[c] != v:
                            return assigned, False
        return assigned, True

    def search(x):
        nonlocal nodes
        while x <= n and f[x]:
            x += 1
        if x > n:
            found.append(BikeiHom(X, Y, tuple(f[1:])))
            return
        for c in range(1, m + 1):
            nodes += 1
            if nodes > max_nodes:
                raise GuardExceeded(f"homomorphism search exceeded {max_nodes} nodes")
            f[x] = c
            assigned, ok = force([x])
            if ok:
                search(x + 1)
            for a in assigned:
                f[a] = 0
            f[x] = 0

    search(1)
    found.sort(key=lambda h: h.map)
    return found


# ---------------------------------------------------------------------------
# text format


def parse_bikei(text, source=None):
    """Parse the block-matrix text format (first line ``n``, then n rows).

    A ``|`` between the two blocks is ignored; ``#`` starts a comment.
    """
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace("|", " ").strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno, source) from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise ParseError("first line must hold the order n >= 1", lineno, source)
            n = values[0]
            continue
        if len(rows) == n:
            raise ParseError(f"more than {n} matrix rows", lineno, source)
        if len(values) != 2 * n:
            raise ParseError(f"expected {2 * n} entries, found {len(values)}", lineno, source)
        for v in values:
            if not 1 <= v <= n:
                raise ParseError(f"entry {v} outside 1..{n}", lineno, source)
        rows.append(values)
    if n is None:
        raise ParseError("empty bikei file", None, source)
    if len(rows) != n:
        raise ParseError(f"expected {n} matrix rows, found {len(rows)}", None, source)
    return Bikei.from_matrix(rows)


def render_bikei(bikei):
    n = bikei.n
    width = len(str(n))
    lines = [str(n)]
    for u, o in zip(bikei.under, bikei.over):
        left = " ".join(f"{v:>{width}}" for v in u)
        right = " ".join(f"{v:>{width}}" for v in o)
        lines.append(f"{left} | {right}")
    return "\n".join(lines) + "\n"


def load_bikei(path):
    with open(path) as fh:
        return parse_bikei(fh.read(), source=str(path))
