"""Colorings of diagrams by a bikei and the cocycle state-sum invariant."""

from collections import Counter
from dataclasses import dataclass

from .diagram import Diagram
from .errors import DomainError, GuardExceeded
from .homology import Cocycle2, is_cocycle_2

__all__ = [
    "Coloring",
    "InvariantValue",
    "boltzmann_weight",
    "cocycle_invariant",
    "counting_invariant",
    "enumerate_colorings",
    "parse_invariant",
]


@dataclass(frozen=True)
class Coloring:
    """Colors of the semiarcs ``ids`` (ascending), elements 1-indexed."""

    ids: tuple
    colors: tuple

    def __getitem__(self, semiarc):
        return self.colors[self.ids.index(semiarc)]

    def as_dict(self):
        return dict(zip(self.ids, self.colors))


def _inverse_columns(table, n):
    """For each y, the inverse of ``x -> table[x][y]`` if it is a bijection."""
    out = []
    for y in range(n):
        col = [table[x][y] for x in range(n)]
        if len(set(col)) == n:
            inv = [0] * n
            for x, v in enumerate(col):
                inv[v] = x
            out.append(inv)
        else:
            out.append(None)
    return out


def enumerate_colorings(diagram, bikei, max_nodes=10**7):
    """All bikei colorings of ``diagram``, sorted by color vector.

    Semiarcs at a saddle are merged first.  The search assigns the lowest
    unassigned class, tries colors in ascending order and propagates each
    crossing forward, and backward whenever the relevant table column is a
    bijection, so propagation never prunes a valid coloring.
    """
    if not isinstance(diagram, Diagram):
        raise TypeError("expected a Diagram")
    n = bikei.n
    U = [[v - 1 for v in row] for row in bikei.under]
    O = [[v - 1 for v in row] for row in bikei.over]
    U_inv = _inverse_columns(U, n)
    O_inv = _inverse_columns(O, n)

    ids = diagram.semiarcs
    parent = {a: a for a in ids}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s in diagram.saddles:
        for a in s[1:]:
            ra, rb = find(s[0]), find(a)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes = sorted({find(a) for a in ids})
    slot = {r: i for i, r in enumerate(classes)}
    var = {a: slot[find(a)] for a in ids}
    crossings = [tuple(var[a] for a in c) for c in diagram.crossings]
    touching = [[] for _ in classes]
    for k, c in enumerate(crossings):
        for v in set(c):
            touching[v].append(k)

    color = [-1] * len(classes)
    results = []
    nodes = 0

    def propagate(start):
        """Set forced values; returns the list of newly set vars or None."""
        trail = []
        queue = list(start)
        while queue:
            k = queue.pop()
            ui, oi, uo, oo = crossings[k]
            cu, co, cuo, coo = color[ui], color[oi], color[uo], color[oo]
            forced = []
            if cu >= 0 and co >= 0:
                forced.append((uo, U[cu][co]))
                forced.append((oo, O[co][cu]))
            if co >= 0 and cuo >= 0 and U_inv[co] is not None:
                forced.append((ui, U_inv[co][cuo]))
            if cu >= 0 and coo >= 0 and O_inv[cu] is not None:
                forced.append((oi, O_inv[cu][coo]))
            for v, c in forced:
                if color[v] < 0:
                    color[v] = c
                    trail.append(v)
                    queue.extend(touching[v])
                elif color[v] != c:
                    for w in trail:
                        color[w] = -1
                    return None
        return trail

    def search():
        nonlocal nodes
        try:
            v = color.index(-1)
        except ValueError:
            results.append(tuple(color[var[a]] + 1 for a in ids))
            return
        for c in range(n):
            nodes += 1
            if nodes > max_nodes:
                raise GuardExceeded(f"coloring search exceeded {max_nodes} nodes")
            color[v] = c
            trail = propagate(touching[v])
            if trail is not None:
                search()
                for w in trail:
                    color[w] = -1
            color[v] = -1

    search()
    results.sort()
    return [Coloring(ids, cols) for cols in results]


def counting_invariant(diagram, bikei, max_nodes=10**7):
    return len(enumerate_colorings(diagram, bikei, max_nodes))


def boltzmann_weight(diagram, coloring, phi):
    """Sum of ``phi(color(u_in), color(o_in))`` over the classical crossings."""
    total = 0
    for ui, oi, _, _ in diagram.crossings:
        total += phi(coloring[ui], coloring[oi])
    return total % phi.modulus


@dataclass(frozen=True)
class InvariantValue:
    """Multiset of Boltzmann weights in ``Z/N``, kept sorted."""

    modulus: int
    weights: tuple

    @property
    def count(self):
        return len(self.weights)

    @property
    def multiplicities(self):
        return dict(sorted(Counter(self.weights).items()))

    def polynomial(self):
        """Multiset written as a polynomial in ``u``, ascending powers."""
        terms = []
        for w, m in self.multiplicities.items():
            if w == 0:
                terms.append(str(m))
            else:
                terms.append(f"{'' if m == 1 else m}u^{w}")
        return " + ".join(terms) if terms else "0"

    def serialize(self):
        lines = [f"count = {self.count}", f"poly = {self.polynomial()}"]
        lines.extend(f"{w}: {m}" for w, m in self.multiplicities.items())
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.polynomial()


def parse_invariant(text, modulus):
    """Inverse of :meth:`InvariantValue.serialize`."""
    weights = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("count", "poly")):
            continue
        w, m = line.split(":")
        weights.extend([int(w)] * int(m))
    return InvariantValue(int(modulus), tuple(sorted(weights)))


def cocycle_invariant(diagram, bikei, phi, max_nodes=10**7):
    """Multiset of Boltzmann weights over all colorings.

    ``phi`` must pass :func:`is_cocycle_2` on ``bikei``; otherwise a
    :class:`DomainError` names the first failing condition.  The bikei axioms
    themselves are not re-checked here.
    """
    if not isinstance(phi, Cocycle2):
        raise TypeError("phi must be a Cocycle2")
    if phi.bikei.n != bikei.n:
        raise DomainError(f"cocycle has order {phi.bikei.n}, bikei has order {bikei.n}")
    if phi.bikei != bikei:
        phi = Cocycle2(bikei, phi.modulus, phi.values)
    check = is_cocycle_2(bikei, phi)
    if not check.valid:
        raise DomainError(f"not a bikei 2-cocycle: {check.describe()}")
    weights = sorted(
        boltzmann_weight(diagram, col, phi)
        for col in enumerate_colorings(diagram, bikei, max_nodes)
    )
    return InvariantValue(phi.modulus, tuple(weights))

