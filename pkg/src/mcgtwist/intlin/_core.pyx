# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of `_purepy`: sparse exact integer echelon kernels.

Same data layout (dicts of arbitrary-precision ints) and same function
contracts; Cython removes the interpreter overhead from the inner loops.
"""

from heapq import heapify, heappop, heappush

BACKEND = "c"


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def vec_axpy(dict dst, dict src, q):
    """dst += q * src, dropping entries that become zero."""
    if not q:
        return
    for j, v in src.items():
        w = dst.get(j, 0) + q * v
        if w:
            dst[j] = w
        else:
            del dst[j]


cdef dict _combine(x, dict u, y, dict v):
    # x*u + y*v as a fresh dict
    cdef dict out = {}
    if x:
        for j, w in u.items():
            out[j] = x * w
    if y:
        for j, w in v.items():
            t = out.get(j, 0) + y * w
            if t:
                out[j] = t
            elif j in out:
                del out[j]
    return out


def echelon_insert(dict pivots, dict row):
    """Insert a sparse row into the echelon basis, mutating `pivots`.

    The row is consumed.  Returns True if the row increased the rank
    (became a new pivot row), False if it reduced to zero.
    """
    cdef list heap = list(row)
    cdef dict p, newp
    heapify(heap)
    while heap:
        j = heappop(heap)
        a = row.get(j, 0)
        if not a:
            continue
        p = pivots.get(j)
        if p is None:
            row = {c: v for c, v in row.items() if v and c >= j}
            if row[j] < 0:
                row = {c: -v for c, v in row.items()}
            pivots[j] = row
            return True
        b = p[j]
        if a % b == 0:
            q = a // b
            for c, v in p.items():
                w = row.get(c, 0) - q * v
                if w:
                    if c not in row and c > j:
                        heappush(heap, c)
                    row[c] = w
                elif c in row:
                    del row[c]
        else:
            g, x, y = xgcd(b, a)
            newp = _combine(x, p, y, row)
            row = _combine(b // g, row, -(a // g), p)
            row.pop(j, None)
            pivots[j] = newp
            heap = list(row)
            heapify(heap)
    return False


def echelon_reduce(dict pivots, dict row):
    """Reduce a row against an echelon basis without mutating anything.

    Returns (coeffs, remainder): coeffs maps pivot column -> integer
    multiplier such that  row = sum(coeffs[j] * pivots[j]) + remainder,
    with every remainder entry at a pivot column lying in [0, pivot).
    """
    cdef dict rem = dict(row)
    cdef dict coeffs = {}
    cdef dict p
    cdef list heap = list(rem)
    heapify(heap)
    while heap:
        j = heappop(heap)
        a = rem.get(j, 0)
        if not a:
            continue
        p = pivots.get(j)
        if p is None:
            continue
        q = a // p[j]
        if q:
            coeffs[j] = coeffs.get(j, 0) + q
            for c, v in p.items():
                w = rem.get(c, 0) - q * v
                if w:
                    if c not in rem and c > j:
                        heappush(heap, c)
                    rem[c] = w
                elif c in rem:
                    del rem[c]
    return coeffs, {c: v for c, v in rem.items() if v}


def snf_factors(rows):
    """Invariant factors d1 | d2 | ... of the lattice spanned by `rows`.

    Input rows are sparse dicts; they are not mutated.  The output is the
    positive diagonal of the Smith normal form (one entry per unit of
    rank, factors of 1 included).
    """
    cdef dict mat = {}
    cdef dict colindex = {}
    cdef int nrows = 0
    cdef dict r2, dst, src
    for r in rows:
        if r:
            mat[nrows] = dict(r)
            for c in r:
                colindex.setdefault(c, set()).add(nrows)
            nrows += 1

    factors = []
    while mat:
        # Rows can empty out while other pivots are cleared.
        for i in [i for i, r2 in mat.items() if not r2]:
            del mat[i]
        if not mat:
            break
        # Pivot choice: smallest |value|, then sparsest row/column, which
        # keeps fill-in negligible for the near-unit matrices seen here.
        best = None
        for i, r2 in mat.items():
            for c, v in r2.items():
                key = (abs(v), len(r2), len(colindex[c]))
                if best is None or key < best[0]:
                    best = (key, i, c)
            if best is not None and best[0][0] == 1 and best[0][1] == 1:
                break
        _, i0, c0 = best
        while True:
            if mat[i0][c0] < 0:
                mat[i0] = {c: -v for c, v in mat[i0].items()}
            v0 = mat[i0][c0]
            # Clear the pivot column with row operations.
            dirty = True
            while dirty:
                dirty = False
                for i in list(colindex.get(c0, ())):
                    if i == i0 or i not in mat:
                        continue
                    a = mat[i].get(c0, 0)
                    if not a:
                        colindex[c0].discard(i)
                        continue
                    q = -(a // v0)
                    dst = mat[i]
                    src = mat[i0]
                    for c, v in src.items():
                        w = dst.get(c, 0) + q * v
                        if w:
                            if c not in dst:
                                colindex.setdefault(c, set()).add(i)
                            dst[c] = w
                        elif c in dst:
                            del dst[c]
                            colindex[c].discard(i)
                    rem = mat[i].get(c0, 0)
                    if rem:
                        # Remainder is a strictly smaller positive pivot.
                        i0, v0 = i, rem
                        dirty = True
                        break
            # Pivot column isolated; clear the pivot row via column
            # operations (these touch only row i0 since its column is
            # now zero elsewhere).  A non-divisible residue becomes the
            # new, strictly smaller pivot and we restart.
            bad = None
            for c, a in mat[i0].items():
                if c != c0 and a % v0:
                    bad = c
                    break
            if bad is None:
                break
            mat[i0][bad] = mat[i0][bad] % v0
            c0 = bad
        factors.append(mat[i0][c0])
        for c in mat[i0]:
            s = colindex.get(c)
            if s is not None:
                s.discard(i0)
        del mat[i0]

    # Repair the divisibility chain with gcd/lcm exchanges.
    factors.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a:
                    g, _, _ = xgcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
        factors.sort()
    return factors
