"""Semiarc model of unoriented (virtual) link and marked vertex diagrams.

A classical crossing is a record ``(u_in, o_in, u_out, o_out)`` of semiarc
ids, carrying the coloring relations

    u_out = u_in *_ o_in        o_out = o_in *^ u_in

and Boltzmann pair ``(u_in, o_in)``.  Going clockwise around the crossing
the slots read ``u_in, o_out, u_out, o_in``; the same crossing may also be
written rotated by 180 degrees as ``(u_out, o_out, u_in, o_in)``.  A saddle
``(a, b, c, d)`` forces all four semiarcs to share a color.  Virtual
crossings are not represented.

Text format, one record per line::

    X a b c d     classical crossing
    S a b c d     saddle (marked vertex)
    O a           free loop
    # comment
"""

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import permutations, product

from .errors import DomainError, ParseError

__all__ = [
    "ColoringConstraint",
    "Diagram",
    "MOVES",
    "apply_move",
    "coloring_constraints",
    "DiagramError",
    "diagrams_isomorphic",
    "find_sites",
    "load_diagram",
    "parse_diagram",
    "random_move",
    "render_diagram",
    "rotate_crossing",
]

MOVES = ("R1_insert", "R1_remove", "R2_insert", "R2_remove", "R3")


class DiagramError(DomainError):
    pass


def rotate_crossing(c):
    """The same crossing read after a half turn."""
    ui, oi, uo, oo = c
    return (uo, oo, ui, oi)


def _occurrences(crossings, saddles, loops):
    count = Counter()
    for rec in crossings:
        count.update(rec)
    for rec in saddles:
        count.update(rec)
    for a in loops:
        count[a] += 2
    return count


@dataclass(frozen=True)
class Diagram:
    crossings: tuple = ()
    saddles: tuple = ()
    loops: tuple = ()

    def __post_init__(self):
        crossings = tuple(tuple(int(v) for v in c) for c in self.crossings)
        saddles = tuple(tuple(int(v) for v in s) for s in self.saddles)
        loops = tuple(int(a) for a in self.loops)
        for rec in crossings + saddles:
            if len(rec) != 4:
                raise DiagramError(f"record {rec} needs four semiarc ids")
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "saddles", saddles)
        object.__setattr__(self, "loops", loops)
        count = _occurrences(crossings, saddles, loops)
        for a, k in sorted(count.items()):
            if a < 1:
                raise DiagramError(f"semiarc id {a} is not a positive integer")
            if k != 2:
                raise DiagramError(f"semiarc {a} occurs {k} time(s), expected 2")

    @property
    def semiarcs(self):
        return tuple(sorted(_occurrences(self.crossings, self.saddles, self.loops)))

    def max_id(self):
        ids = self.semiarcs
        return ids[-1] if ids else 0

    def rotated(self, index):
        """Re-encode crossing ``index`` with the half-turn convention."""
        cs = list(self.crossings)
        cs[index] = rotate_crossing(cs[index])
        return Diagram(cs, self.saddles, self.loops)

    def __str__(self):
        return render_diagram(self).rstrip("\n")


@dataclass(frozen=True)
class ColoringConstraint:
    """Relations derived from a diagram.

    ``under`` holds ``(out, a, b)`` meaning ``color(out) = color(a) *_ color(b)``;
    ``over`` the same for ``*^``; ``equal`` lists semiarc groups that share a
    color (one group per saddle).
    """

    under: tuple
    over: tuple
    equal: tuple


def coloring_constraints(diagram):
    under = tuple((uo, ui, oi) for ui, oi, uo, oo in diagram.crossings)
    over = tuple((oo, oi, ui) for ui, oi, uo, oo in diagram.crossings)
    equal = tuple(tuple(s) for s in diagram.saddles)
    return ColoringConstraint(under, over, equal)


# ---------------------------------------------------------------------------
# text format


def parse_diagram(text, source=None):
    crossings, saddles, loops = [], [], []
    where = defaultdict(list)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            ids = [int(tok) for tok in rest]
        except ValueError:
            raise ParseError(f"non-integer semiarc id in {raw.strip()!r}", lineno, source) from None
        if any(a < 1 for a in ids):
            raise ParseError("semiarc ids must be positive integers", lineno, source)
        if tag in ("X", "S"):
            if len(ids) != 4:
                raise ParseError(f"{tag} record needs 4 semiarc ids, got {len(ids)}", lineno, source)
            (crossings if tag == "X" else saddles).append(tuple(ids))
            for a in ids:
                where[a].append(lineno)
        elif tag == "O":
            if len(ids) != 1:
                raise ParseError("O record needs exactly 1 semiarc id", lineno, source)
            loops.append(ids[0])
            where[ids[0]].extend([lineno, lineno])
        else:
            raise ParseError(f"unknown record tag {tag!r}", lineno, source)
    for a, lines in sorted(where.items()):
        if len(lines) != 2:
            raise ParseError(
                f"semiarc {a} occurs {len(lines)} time(s), expected 2 "
                f"(lines {', '.join(map(str, lines))})",
                lines[-1],
                source,
            )
    return Diagram(crossings, saddles, loops)


def render_diagram(diagram):
    records = [("X", c) for c in diagram.crossings]
    records += [("S", s) for s in diagram.saddles]
    records += [("O", (a,)) for a in diagram.loops]
    records.sort(key=lambda r: (r[1][0], r[0], r[1]))
    return "".join(f"{tag} {' '.join(map(str, ids))}\n" for tag, ids in records)


def load_diagram(path):
    with open(path) as fh:
        return parse_diagram(fh.read(), source=str(path))


# ---------------------------------------------------------------------------
# isomorphism up to semiarc renaming

_CROSSING_SYMS = ((0, 1, 2, 3), (2, 3, 0, 1))
_SADDLE_SYMS = ((0, 1, 2, 3), (2, 3, 0, 1), (1, 0, 3, 2), (3, 2, 1, 0))


def diagrams_isomorphic(D1, D2):
    """Whether the diagrams agree after renaming semiarcs.

    Crossings may match in either half-turn encoding; saddles under the
    symmetries that keep the marker.
    """
    if (len(D1.crossings), len(D1.saddles), len(D1.loops)) != (
        len(D2.crossings),
        len(D2.saddles),
        len(D2.loops),
    ):
        return False
    recs1 = [("X", c) for c in D1.crossings] + [("S", s) for s in D1.saddles]
    recs2 = [("X", c) for c in D2.crossings] + [("S", s) for s in D2.saddles]
    fwd, back = {}, {}
    used = [False] * len(recs2)

    def bind(a, b, trail):
        if a in fwd:
            return fwd[a] == b
        if b in back:
            return False
        fwd[a] = b
        back[b] = a
        trail.append(a)
        return True

    def unbind(trail):
        for a in trail:
            del back[fwd.pop(a)]

    def search(i):
        if i == len(recs1):
            return True
        tag, rec = recs1[i]
        for j, (tag2, rec2) in enumerate(recs2):
            if used[j] or tag2 != tag:
                continue
            for sym in _CROSSING_SYMS if tag == "X" else _SADDLE_SYMS:
                trail = []
                if all(bind(rec[k], rec2[sym[k]], trail) for k in range(4)):
                    used[j] = True
                    if search(i + 1):
                        return True
                    used[j] = False
                unbind(trail)
        return False

    if not search(0):
        return False
    # free loops pair off freely; everything else is already bound
    return True


# ---------------------------------------------------------------------------
# Reidemeister moves


def _rebuild(crossings, saddles, loops, joins, dropped=()):
    """Identify semiarc ends pairwise and collect components that closed up."""
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in joins:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    rename = {a: find(a) for a in list(parent)}

    def r(a):
        return rename.get(a, a)

    crossings = [tuple(r(a) for a in c) for c in crossings]
    saddles = [tuple(r(a) for a in s) for s in saddles]
    loops = [r(a) for a in loops]
    present = _occurrences(crossings, saddles, loops)
    closed = sorted({r(a) for pair in joins for a in pair} - set(present) - set(dropped))
    return Diagram(crossings, saddles, list(loops) + closed)


def _records(diagram):
    return (
        [list(c) for c in diagram.crossings],
        [list(s) for s in diagram.saddles],
        list(diagram.loops),
    )


def _split(records, a, fresh):
    """Rename the second occurrence of semiarc ``a`` to ``fresh`` in place.

    Returns True when ``a`` was a free loop; the loop record is then dropped
    and the caller reconnects both ends to ``a`` itself.
    """
    crossings, saddles, loops = records
    if a in loops:
        loops.remove(a)
        return True
    seen = 0
    for rec in crossings + saddles:
        for k, v in enumerate(rec):
            if v == a:
                seen += 1
                if seen == 2:
                    rec[k] = fresh
                    return False
    raise DiagramError(f"semiarc {a} not found")


def _fresh(diagram, k):
    m = diagram.max_id()
    return list(range(m + 1, m + 1 + k))


def _r1_insert(diagram, site, variant):
    p = int(site)
    if p not in diagram.semiarcs:
        raise DiagramError(f"no semiarc {p}")
    q, p2 = _fresh(diagram, 2)
    records = _records(diagram)
    if _split(records, p, p2):
        p2 = p
    kinks = (
        (p, q, q, p2),
        (p2, q, q, p),
        (p, p2, q, q),
        (p2, p, q, q),
    )
    crossings, saddles, loops = records
    crossings.append(kinks[variant % 4])
    return Diagram(crossings, saddles, loops)


# slot pairs that are adjacent around a crossing (always one under, one over)
_ADJACENT = ((0, 1), (0, 3), (2, 1), (2, 3))


def _r1_pattern(c):
    """``(loop, end, end)`` if ``c`` is a kink, else None."""
    for i, j in _ADJACENT:
        if c[i] == c[j]:
            a, b = (c[k] for k in range(4) if k not in (i, j))
            return c[i], a, b
    return None


def _r1_remove(diagram, site):
    i = int(site)
    c = diagram.crossings[i]
    pat = _r1_pattern(c)
    if pat is None:
        raise DiagramError(f"crossing {i} {c} is not a kink")
    q, a, b = pat
    rest = [x for j, x in enumerate(diagram.crossings) if j != i]
    return _rebuild(rest, diagram.saddles, diagram.loops, [(a, b)], dropped=(q,))


def _r2_insert(diagram, site, variant):
    p, q = (int(v) for v in site)
    ids = diagram.semiarcs
    if p not in ids or q not in ids:
        raise DiagramError(f"R2 site {site} names an unknown semiarc")
    if p == q:
        raise DiagramError("R2 insertion needs two distinct semiarcs")
    p2, p3, q2, q3 = _fresh(diagram, 4)
    records = _records(diagram)
    if _split(records, p, p3):
        p3 = p
    if _split(records, q, q3):
        q3 = q
    p1, q1 = p, q
    if variant & 1:
        p1, p3 = p3, p1
    if variant & 2:
        q1, q3 = q3, q1
    crossings, saddles, loops = records
    crossings.append((p1, q2, p2, q1))
    crossings.append((p2, q2, p3, q3))
    return Diagram(crossings, saddles, loops)


def _r2_match(A, B):
    """``(a, m, b, c, d, e)`` if A, B (any encodings) form a removable bigon."""
    for ra in (A, rotate_crossing(A)):
        for rb in (B, rotate_crossing(B)):
            a, m, b, c = ra
            b2, m2, d, e = rb
            if b == b2 and m == m2 and b != m:
                return a, m, b, c, d, e
    return None


def _r2_remove(diagram, site):
    i, j = (int(v) for v in site)
    if i == j:
        raise DiagramError("R2 removal needs two distinct crossings")
    cs = diagram.crossings
    for x, y in ((i, j), (j, i)):
        pat = _r2_match(cs[x], cs[y])
        if pat is not None:
            a, m, b, c, d, e = pat
            rest = [cc for k, cc in enumerate(cs) if k not in (i, j)]
            return _rebuild(rest, diagram.saddles, diagram.loops, [(a, d), (c, e)], dropped=(b, m))
    raise DiagramError(f"crossings {i}, {j} do not form a removable bigon")


# R3: the "forward" triangle has
#   X1 = (b1, m1, b2, m2)   middle over bottom
#   X2 = (b2, t1, b3, t2)   top over bottom
#   X3 = (m2, t2, m3, t3)   top over middle
# and is replaced by
#   Y1 = (m1, t1, m2', t2') top over middle
#   Y2 = (b1, t2', b2', t3) top over bottom
#   Y3 = (b2', m2', b3, m3) middle over bottom


def _encodings(c):
    return (c, rotate_crossing(c))


def _r3_forward(c1, c2, c3):
    for X1, X2, X3 in product(_encodings(c1), _encodings(c2), _encodings(c3)):
        b1, m1, b2, m2 = X1
        if X2[0] != b2 or X3[0] != m2:
            continue
        _, t1, b3, t2 = X2
        if X3[1] != t2:
            continue
        _, _, m3, t3 = X3
        if len({b2, m2, t2}) == 3:
            return dict(b1=b1, m1=m1, t1=t1, b3=b3, m3=m3, t3=t3, inner=(b2, m2, t2))
    return None


def _r3_backward(c1, c2, c3):
    for Y1, Y2, Y3 in product(_encodings(c1), _encodings(c2), _encodings(c3)):
        m1, t1, m2, t2 = Y1
        if Y2[1] != t2 or Y3[1] != m2:
            continue
        b1, _, b2, t3 = Y2
        if Y3[0] != b2:
            continue
        _, _, b3, m3 = Y3
        if len({b2, m2, t2}) == 3:
            return dict(b1=b1, m1=m1, t1=t1, b3=b3, m3=m3, t3=t3, inner=(b2, m2, t2))
    return None


def _r3_match(diagram, site):
    idx = [int(v) for v in site]
    if len(set(idx)) != 3:
        raise DiagramError("R3 needs three distinct crossings")
    cs = diagram.crossings
    for order in permutations(idx):
        trio = [cs[k] for k in order]
        hit = _r3_forward(*trio)
        if hit is not None:
            return "forward", order, hit
        hit = _r3_backward(*trio)
        if hit is not None:
            return "backward", order, hit
    return None


def _r3(diagram, site):
    match = _r3_match(diagram, site)
    if match is None:
        raise DiagramError(f"crossings {tuple(site)} do not form an R3 triangle")
    direction, order, v = match
    b2, m2, t2 = v["inner"]
    b1, m1, t1, b3, m3, t3 = (v[k] for k in ("b1", "m1", "t1", "b3", "m3", "t3"))
    if direction == "forward":
        new = [(m1, t1, m2, t2), (b1, t2, b2, t3), (b2, m2, b3, m3)]
    else:
        new = [(b1, m1, b2, m2), (b2, t1, b3, t2), (m2, t2, m3, t3)]
    cs = list(diagram.crossings)
    for k, c in zip(order, new):
        cs[k] = c
    return Diagram(cs, diagram.saddles, diagram.loops)


def apply_move(diagram, move, site, variant=0):
    """Apply one Reidemeister move and return the new diagram.

    ``site`` is a semiarc id (``R1_insert``), a pair of semiarc ids
    ``(under, over)`` (``R2_insert``), a crossing index (``R1_remove``), a
    pair of crossing indices (``R2_remove``) or three crossing indices
    (``R3``, either direction).  ``variant`` picks among the equivalent
    local pictures of an insertion (0..3).
    """
    if move == "R1_insert":
        return _r1_insert(diagram, site, variant)
    if move == "R1_remove":
        return _r1_remove(diagram, site)
    if move == "R2_insert":
        return _r2_insert(diagram, site, variant)
    if move == "R2_remove":
        return _r2_remove(diagram, site)
    if move == "R3":
        return _r3(diagram, site)
    raise DiagramError(f"unknown move {move!r}; expected one of {', '.join(MOVES)}")


def find_sites(diagram, move):
    """Every site at which ``move`` applies (insertions: every candidate)."""
    ids = diagram.semiarcs
    n = len(diagram.crossings)
    if move == "R1_insert":
        return list(ids)
    if move == "R2_insert":
        return [(p, q) for p in ids for q in ids if p != q]
    if move == "R1_remove":
        return [i for i in range(n) if _r1_pattern(diagram.crossings[i]) is not None]
    if move == "R2_remove":
        cs = diagram.crossings
        return [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if _r2_match(cs[i], cs[j]) or _r2_match(cs[j], cs[i])
        ]
    if move == "R3":
        return _r3_sites(diagram)
    raise DiagramError(f"unknown move {move!r}")


def _r3_sites(diagram):
    cs = diagram.crossings
    # index crossings by semiarc so only connected triples are tried
    touch = defaultdict(set)
    for i, c in enumerate(cs):
        for a in c:
            touch[a].add(i)
    seen = set()
    out = []
    for i in range(len(cs)):
        near = set()
        for a in cs[i]:
            near |= touch[a]
        near.discard(i)
        for j in sorted(near):
            for k in sorted(near):
                trio = tuple(sorted((i, j, k)))
                if len(set(trio)) < 3 or trio in seen:
                    continue
                seen.add(trio)
                if _r3_match(diagram, trio) is not None:
                    out.append(trio)
    return sorted(out)


def random_move(diagram, rng=None, moves=MOVES):
    """Pick a random applicable ``(move, site, variant)`` and apply it.

    Returns ``(new_diagram, (move, site, variant))``.
    """
    rng = rng or random.Random()
    options = []
    for move in moves:
        sites = find_sites(diagram, move)
        if sites:
            options.append((move, sites))
    if not options:
        raise DiagramError("no move applies")
    move, sites = rng.choice(options)
    site = rng.choice(sites)
    variant = rng.randrange(4) if move.endswith("insert") else 0
    return apply_move(diagram, move, site, variant), (move, site, variant)
