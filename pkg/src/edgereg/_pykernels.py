"""Pure-Python kernels; the reference twin of ``_ckernels.pyx``.

Every function here has the same signature and result as its compiled
counterpart.  Masks are unbounded Python integers, so this backend also
handles complexes on more than 64 vertices.
"""


def rank_gf2(nrows, cols):
    """Rank over GF(2) of a matrix given as columns of nonzero row indices."""
    pivots = {}
    for col in cols:
        v = 0
        for r in col:
            v ^= 1 << r
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


def rank_modp(nrows, cols, p):
    """Rank over GF(p) of a matrix given as columns of ``(row, value)`` pairs."""
    pivots = {}
    for col in cols:
        v = {}
        for r, a in col:
            a %= p
            if a:
                v[r] = (v.get(r, 0) + a) % p
                if not v[r]:
                    del v[r]
        while v:
            r = min(v)
            piv = pivots.get(r)
            if piv is None:
                inv = pow(v[r], p - 2, p)
                pivots[r] = {k: a * inv % p for k, a in v.items()}
                break
            c = v[r]
            for k, a in piv.items():
                nv = (v.get(k, 0) - c * a) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return len(pivots)


def _levels(gens, w):
    """Faces of the restriction to ``w``, grouped by size (level 0 is ``[0]``)."""
    sub = [g for g in gens if g & ~w == 0]
    verts = []
    m = w
    while m:
        low = m & -m
        verts.append(low.bit_length() - 1)
        m ^= low
    by_vertex = {v: [g for g in sub if g >> v & 1] for v in verts}
    levels = [[0]]
    top = {0: -1}  # face -> index into verts of its largest vertex
    while True:
        nxt = []
        ntop = {}
        for f in levels[-1]:
            for idx in range(top[f] + 1, len(verts)):
                v = verts[idx]
                nf = f | 1 << v
                ok = True
                for g in by_vertex[v]:
                    if g & nf == g:
                        ok = False
                        break
                if ok:
                    nxt.append(nf)
                    ntop[nf] = idx
        if not nxt:
            return levels
        levels.append(nxt)
        top = ntop


def subset_betti(gens, w, p):
    """Reduced Betti numbers of the Stanley–Reisner complex restricted to ``w``.

    ``gens`` are generator supports as bit masks.  Entry ``k`` of the result
    is ``dim H̃_{k-1}`` over GF(p) (``p == 2`` uses XOR elimination).
    """
    levels = _levels(gens, w)
    ranks = [0] * (len(levels) + 1)
    for k in range(1, len(levels)):
        index = {f: i for i, f in enumerate(levels[k - 1])}
        if p == 2:
            pivots = {}
            for f in levels[k]:
                v = 0
                m = f
                while m:
                    low = m & -m
                    v ^= 1 << index[f ^ low]
                    m ^= low
                while v:
                    low = v & -v
                    q = pivots.get(low)
                    if q is None:
                        pivots[low] = v
                        break
                    v ^= q
            ranks[k] = len(pivots)
        else:
            cols = []
            for f in levels[k]:
                col = []
                sign = 1
                m = f
                while m:
                    low = m & -m
                    col.append((index[f ^ low], sign))
                    sign = -sign
                    m ^= low
                cols.append(col)
            ranks[k] = rank_modp(len(levels[k - 1]), cols, p)
    return [len(levels[k]) - ranks[k] - ranks[k + 1] for k in range(len(levels))]
