"""Hot numeric kernels.

Each kernel exists twice: a numba-compiled version and a numpy (or plain
Python) fallback.  The numba path is used when numba imports cleanly and the
environment variable ``BIKEI_DISABLE_NUMBA`` is unset or false.  Both paths
return identical results; ``benchmarks/bench_kernels.py`` compares them.

Tables are 0-indexed ``int64`` arrays here; the public API is 1-indexed.
"""

import os

import numpy as np

_FLAG = os.environ.get("BIKEI_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    if NUMBA_DISABLED:
        raise ImportError("disabled by BIKEI_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


AXIOM_TAGS = ("i", "ii.i", "ii.ii", "ii.iii", "ii.iv", "iii.i", "iii.ii", "iii.iii")
AXIOM_ARITY = (1, 2, 2, 2, 2, 3, 3, 3)


# ---------------------------------------------------------------------------
# axiom scan


def _axiom_witnesses_py(under, over):
    n = under.shape[0]
    out = np.full((8, 3), -1, dtype=np.int64)
    for x in range(n):
        if out[0, 0] < 0 and under[x, x] != over[x, x]:
            out[0, 0] = x
        for y in range(n):
            u = under[x, y]
            o = over[x, y]
            if out[1, 0] < 0 and over[o, y] != x:
                out[1, 0] = x
                out[1, 1] = y
            if out[2, 0] < 0 and under[u, y] != x:
                out[2, 0] = x
                out[2, 1] = y
            if out[3, 0] < 0 and under[x, over[y, x]] != u:
                out[3, 0] = x
                out[3, 1] = y
            if out[4, 0] < 0 and over[x, under[y, x]] != o:
                out[4, 0] = x
                out[4, 1] = y
            for z in range(n):
                if out[5, 0] < 0 and over[o, over[z, y]] != over[over[x, z], under[y, z]]:
                    out[5, 0] = x
                    out[5, 1] = y
                    out[5, 2] = z
                if out[6, 0] < 0 and over[u, under[z, y]] != under[over[x, z], over[y, z]]:
                    out[6, 0] = x
                    out[6, 1] = y
                    out[6, 2] = z
                if out[7, 0] < 0 and under[u, under[z, y]] != under[under[x, z], over[y, z]]:
                    out[7, 0] = x
                    out[7, 1] = y
                    out[7, 2] = z
    return out


def _first(mask):
    if not mask.any():
        return None
    return np.unravel_index(int(np.argmax(mask)), mask.shape)


def _axiom_witnesses_np(under, over):
    n = under.shape[0]
    U, O = under, over
    r = np.arange(n)
    X, Y = np.meshgrid(r, r, indexing="ij")
    X3, Y3, Z3 = np.meshgrid(r, r, r, indexing="ij")
    masks = (
        U[r, r] != O[r, r],
        O[O[X, Y], Y] != X,
        U[U[X, Y], Y] != X,
        U[X, O[Y, X]] != U[X, Y],
        O[X, U[Y, X]] != O[X, Y],
        O[O[X3, Y3], O[Z3, Y3]] != O[O[X3, Z3], U[Y3, Z3]],
        O[U[X3, Y3], U[Z3, Y3]] != U[O[X3, Z3], O[Y3, Z3]],
        U[U[X3, Y3], U[Z3, Y3]] != U[U[X3, Z3], O[Y3, Z3]],
    )
    out = np.full((8, 3), -1, dtype=np.int64)
    for k, mask in enumerate(masks):
        hit = _first(mask)
        if hit is not None:
            out[k, : len(hit)] = hit
    return out


# ---------------------------------------------------------------------------
# boundary matrices of the birack complex


def _boundary_py(under, over, degree):
    m = under.shape[0]
    rows = m ** (degree - 1)
    cols = m**degree
    out = np.zeros((rows, cols), dtype=np.int64)
    digits = np.empty(degree, dtype=np.int64)
    for col in range(cols):
        rem = col
        for j in range(degree - 1, -1, -1):
            digits[j] = rem % m
            rem //= m
        for k in range(degree):
            sign = 1 if k % 2 == 0 else -1
            xk = digits[k]
            f1 = 0
            f2 = 0
            for j in range(degree):
                if j == k:
                    continue
                f1 = f1 * m + digits[j]
                if j < k:
                    f2 = f2 * m + under[digits[j], xk]
                else:
                    f2 = f2 * m + over[digits[j], xk]
            out[f1, col] += sign
            out[f2, col] -= sign
    return out


def _boundary_np(under, over, degree):
    m = under.shape[0]
    cols = m**degree
    idx = np.arange(cols, dtype=np.int64)
    place = m ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // place[None, :]) % m
    out = np.zeros((m ** (degree - 1), cols), dtype=np.int64)
    if degree == 1:
        # both faces are the empty tuple; they cancel
        return out
    place_low = place[1:]
    for k in range(degree):
        sign = 1 if k % 2 == 0 else -1
        xk = digits[:, k : k + 1]
        rest = np.delete(digits, k, axis=1)
        moved = np.concatenate(
            [under[digits[:, :k], xk], over[digits[:, k + 1 :], xk]], axis=1
        )
        np.add.at(out, (rest @ place_low, idx), sign)
        np.add.at(out, (moved @ place_low, idx), -sign)
    return out


# ---------------------------------------------------------------------------
# backtracking search for all labelled bikei tables of a given order
#
# State is a flat array T of length 2*n*n, -1 meaning unknown;
# T[op*n*n + x*n + y] is x*y for op 0 (under) or op 1 (over).


def _partial_ok(T, n):
    nn = n * n
    for x in range(n):
        a = T[x * n + x]
        b = T[nn + x * n + x]
        if a >= 0 and b >= 0 and a != b:
            return False
    for x in range(n):
        for y in range(n):
            u = T[x * n + y]
            o = T[nn + x * n + y]
            if o >= 0:
                w = T[nn + o * n + y]
                if w >= 0 and w != x:
                    return False
            if u >= 0:
                w = T[u * n + y]
                if w >= 0 and w != x:
                    return False
                oyx = T[nn + y * n + x]
                if oyx >= 0:
                    w = T[x * n + oyx]
                    if w >= 0 and w != u:
                        return False
            if o >= 0:
                uyx = T[y * n + x]
                if uyx >= 0:
                    w = T[nn + x * n + uyx]
                    if w >= 0 and w != o:
                        return False
            for z in range(n):
                uzy = T[z * n + y]
                ozy = T[nn + z * n + y]
                oxz = T[nn + x * n + z]
                uxz = T[x * n + z]
                uyz = T[y * n + z]
                oyz = T[nn + y * n + z]
                # iii.i
                if o >= 0 and ozy >= 0 and oxz >= 0 and uyz >= 0:
                    lhs = T[nn + o * n + ozy]
                    rhs = T[nn + oxz * n + uyz]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
                # iii.ii
                if u >= 0 and uzy >= 0 and oxz >= 0 and oyz >= 0:
                    lhs = T[nn + u * n + uzy]
                    rhs = T[oxz * n + oyz]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
                # iii.iii
                if u >= 0 and uzy >= 0 and uxz >= 0 and oyz >= 0:
                    lhs = T[u * n + uzy]
                    rhs = T[uxz * n + oyz]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
    return True


def _assign(T, trail, tlen, qc, qv, cell, v, n):
    nn = n * n
    head = 0
    tail = 1
    qc[0] = cell
    qv[0] = v
    while head < tail:
        c = qc[head]
        val = qv[head]
        head += 1
        cur = T[c]
        if cur == val:
            continue
        if cur != -1:
            return False, tlen
        T[c] = val
        trail[tlen] = c
        tlen += 1
        op = c // nn
        r = c % nn
        x = r // n
        y = r % n
        # each column x -> x*y is an involution
        qc[tail] = op * nn + val * n + y
        qv[tail] = x
        tail += 1
        if x == y:
            qc[tail] = (1 - op) * nn + x * n + x
            qv[tail] = val
            tail += 1
    return True, tlen


def _undo(T, trail, tlen, target):
    while tlen > target:
        tlen -= 1
        T[trail[tlen]] = -1
    return tlen


def _next_unassigned(T, start):
    for c in range(start, T.shape[0]):
        if T[c] < 0:
            return c
    return -1


def _search_tables_py(n, max_nodes):
    size = 2 * n * n
    T = np.full(size, -1, dtype=np.int64)
    trail = np.empty(size, dtype=np.int64)
    qc = np.empty(2 * size + 2, dtype=np.int64)
    qv = np.empty(2 * size + 2, dtype=np.int64)
    cell_stack = np.empty(size + 1, dtype=np.int64)
    val_stack = np.empty(size + 1, dtype=np.int64)
    tlen_stack = np.empty(size + 1, dtype=np.int64)
    out = np.empty((16, size), dtype=np.int64)
    nout = 0
    nodes = 0
    tlen = 0
    depth = 0
    cell_stack[0] = 0
    val_stack[0] = -1
    tlen_stack[0] = 0
    while depth >= 0:
        cell = cell_stack[depth]
        if cell == -1:
            if nout == out.shape[0]:
                grown = np.empty((2 * out.shape[0], size), dtype=np.int64)
                grown[:nout] = out[:nout]
                out = grown
            out[nout] = T
            nout += 1
            depth -= 1
            continue
        tlen = _undo(T, trail, tlen, tlen_stack[depth])
        v = val_stack[depth] + 1
        advanced = False
        while v < n:
            nodes += 1
            if nodes > max_nodes:
                return out[:nout], nodes, True
            ok, tlen = _assign(T, trail, tlen, qc, qv, cell, v, n)
            if ok and _partial_ok(T, n):
                val_stack[depth] = v
                depth += 1
                cell_stack[depth] = _next_unassigned(T, cell)
                val_stack[depth] = -1
                tlen_stack[depth] = tlen
                advanced = True
                break
            tlen = _undo(T, trail, tlen, tlen_stack[depth])
            v += 1
        if not advanced:
            depth -= 1
    return out[:nout], nodes, False


# ---------------------------------------------------------------------------
# backend selection

if HAVE_NUMBA:
    _axiom_witnesses_jit = njit(cache=True)(_axiom_witnesses_py)
    _boundary_jit = njit(cache=True)(_boundary_py)
    _partial_ok_jit = njit(cache=True)(_partial_ok)
    _assign_jit = njit(cache=True)(_assign)
    _undo_jit = njit(cache=True)(_undo)
    _next_unassigned_jit = njit(cache=True)(_next_unassigned)

    # rebind the helpers the search body refers to, then compile it
    def _make_search_jit():
        g = dict(globals())
        g.update(
            _partial_ok=_partial_ok_jit,
            _assign=_assign_jit,
            _undo=_undo_jit,
            _next_unassigned=_next_unassigned_jit,
        )
        fn = type(_search_tables_py)(_search_tables_py.__code__, g, "_search_tables_jit")
        return njit(cache=True)(fn)

    _search_tables_jit = _make_search_jit()
else:
    _axiom_witnesses_jit = None
    _boundary_jit = None
    _search_tables_jit = None


def backend():
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if HAVE_NUMBA else "numpy"


def axiom_witnesses(under, over, use_numba=None):
    """First lexicographic violation witness for each axiom, -1 padded."""
    under = np.ascontiguousarray(under, dtype=np.int64)
    over = np.ascontiguousarray(over, dtype=np.int64)
    if _want_numba(use_numba):
        return _axiom_witnesses_jit(under, over)
    return _axiom_witnesses_np(under, over)


def boundary_dense(under, over, degree, use_numba=None):
    under = np.ascontiguousarray(under, dtype=np.int64)
    over = np.ascontiguousarray(over, dtype=np.int64)
    if _want_numba(use_numba):
        return _boundary_jit(under, over, degree)
    return _boundary_np(under, over, degree)


def search_tables(n, max_nodes, use_numba=None):
    """All labelled (under, over) table pairs of order ``n`` satisfying the axioms.

    Returns ``(tables, nodes, aborted)`` with ``tables`` of shape (k, 2, n, n).
    """
    fn = _search_tables_jit if _want_numba(use_numba) else _search_tables_py
    flat, nodes, aborted = fn(int(n), int(max_nodes))
    return flat.reshape(-1, 2, n, n).copy(), int(nodes), bool(aborted)


def _want_numba(use_numba):
    if use_numba is None:
        return HAVE_NUMBA
    if use_numba and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but unavailable")
    return bool(use_numba)
