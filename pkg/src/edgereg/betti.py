"""Graded Betti tables of squarefree monomial quotients via Hochster's formula.

``β_{i,j}(R/I) = Σ_{|W|=j} dim H̃_{j-i-1}(Δ_W)`` where ``Δ`` is the
Stanley–Reisner complex of ``I``.  Subsets ``W`` are handled as follows:

* a vertex of ``W`` lying in no generator inside ``W`` is a cone point, so
  ``Δ_W`` is acyclic and contributes nothing;
* if the generators inside ``W`` split into variable-disjoint groups, ``Δ_W``
  is the join of the groups' restrictions and its homology is the product of
  their shifted Betti polynomials;
* the remaining (connected) restrictions go to the kernel, memoized by mask
  and, optionally, by a canonical form of the restricted generator set.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

from .graph import Graph, bits, complement, induced_matching_number, is_chordal, matching_number, popcount
from .homology import F0, FieldSpec, subset_betti
from .ideal import (
    SquarefreeMonomialIdeal,
    add_variable,
    colon_by_variable,
    disjoint_sum,
    edge_ideal,
    intersect,
    x_partition,
)

DEFAULT_MAX_VARS = 20


class BudgetExceeded(RuntimeError):
    """Subset or wall-clock budget ran out before the table was complete."""

    def __init__(self, processed: int, partial: "BettiTable"):
        super().__init__(f"budget exceeded after {processed} subsets")
        self.processed = processed
        self.partial = partial


@dataclass
class Budget:
    max_subsets: Optional[int] = None
    time_limit: Optional[float] = None


@dataclass
class BettiTable:
    """Graded Betti numbers of ``R/I``: ``entries[(i, j)] = β_{i,j}``, zeros omitted."""

    entries: dict
    field: FieldSpec
    nvars: int

    def regularity(self) -> int:
        return max(j - i for i, j in self.entries)

    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def ideal_entries(self) -> dict:
        """Betti numbers of ``I`` itself: ``β_{i,j}(I) = β_{i+1,j}(R/I)``."""
        return {(i - 1, j): b for (i, j), b in self.entries.items() if i >= 1}

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "nvars": self.nvars,
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls({(i, j): b for i, j, b in data["entries"]}, FieldSpec.parse(data["field"]), data["nvars"])

    def to_text(self) -> str:
        """Macaulay2-style table: rows are ``j - i``, columns ``i``."""
        pd, reg = self.projective_dimension(), self.regularity()
        width = max(len(str(b)) for b in self.entries.values())
        width = max(width, len(str(pd)), len(str(sum(self.entries.values()))))
        cell = lambda s: str(s).rjust(width)
        totals = [sum(b for (i, _), b in self.entries.items() if i == c) for c in range(pd + 1)]
        lines = [" " * 7 + " ".join(cell(c) for c in range(pd + 1)),
                 "total: " + " ".join(cell(t) for t in totals)]
        for r in range(reg + 1):
            row = [self.get(c, c + r) or "." for c in range(pd + 1)]
            lines.append(f"{r:>5}: " + " ".join(cell(x) for x in row))
        return "\n".join(lines) + "\n"


# --- the subset engine -------------------------------------------------------

def _convolve(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return _trim(out)


def _trim(v):
    v = list(v)
    while v and not v[-1]:
        v.pop()
    return tuple(v)


def _components(sub):
    comps: list[int] = []
    for g in sub:
        merged = g
        rest = []
        for c in comps:
            if c & merged:
                merged |= c
            else:
                rest.append(c)
        rest.append(merged)
        comps = rest
    return comps


def canonical_form(sub, w: int):
    """Isomorphism-invariant key for a generator set on vertex set ``w``.

    Colour refinement on the vertex/generator incidence; returns ``None``
    unless refinement separates every vertex, in which case the relabelled
    generator set is a true canonical form.
    """
    verts = list(bits(w))
    colour = {v: 0 for v in verts}
    ncol = 1
    while True:
        sig = {}
        for v in verts:
            around = sorted(
                (popcount(g), tuple(sorted(colour[u] for u in bits(g) if u != v)))
                for g in sub if g >> v & 1)
            sig[v] = (colour[v], tuple(around))
        palette = {s: k for k, s in enumerate(sorted(set(sig.values())))}
        colour = {v: palette[sig[v]] for v in verts}
        if len(palette) == ncol:
            break
        ncol = len(palette)
    if ncol != len(verts):
        return None
    return len(verts), tuple(sorted(sum(1 << colour[u] for u in bits(g)) for g in sub))


class HochsterEngine:
    """Per-subset shifted Betti polynomials ``P_W`` with ``P_W[s] = dim H̃_{s-1}(Δ_W)``."""

    def __init__(self, gens, field: FieldSpec, canonical: bool = False):
        self.gens = tuple(gens)
        self.field = field
        self.canonical = canonical
        self.memo: dict[int, tuple] = {}
        self.canon_memo: dict = {}
        self.kernel_calls = 0

    def poly(self, w: int) -> tuple:
        if w == 0:
            return (1,)
        sub = [g for g in self.gens if g & ~w == 0]
        cover = 0
        for g in sub:
            cover |= g
        if cover != w:
            return ()
        comps = _components(sub)
        if len(comps) > 1:
            p = (1,)
            for c in comps:
                q = self.poly(c)
                if not q:
                    return ()
                p = _convolve(p, q)
            return p
        hit = self.memo.get(w)
        if hit is None:
            key = canonical_form(sub, w) if self.canonical else None
            if key is not None:
                hit = self.canon_memo.get(key)
            if hit is None:
                self.kernel_calls += 1
                hit = _trim(subset_betti(sub, w, self.field))
                if key is not None:
                    self.canon_memo[key] = hit
            self.memo[w] = hit
        return hit


def _table_chunk(gens, field, lo, hi, canonical):
    eng = HochsterEngine(gens, field, canonical)
    acc: Counter = Counter()
    for w in range(lo, hi):
        p = eng.poly(w)
        if p:
            j = popcount(w)
            for s, d in enumerate(p):
                if d:
                    acc[(j - s, j)] += d
    return acc


def hochster_table(ideal: SquarefreeMonomialIdeal, field: FieldSpec = F0, *,
                   max_vars: int = DEFAULT_MAX_VARS, budget: Optional[Budget] = None,
                   workers: int = 1, canonical: bool = False) -> BettiTable:
    """Full graded Betti table of ``R/I`` over ``field``."""
    n = ideal.nvars
    if n > max_vars:
        raise ValueError(f"{n} variables exceeds the cap of {max_vars}")
    gens = ideal.gens
    total = 1 << n
    if workers > 1 and budget is None and total >= 1024:
        return _parallel_table(ideal, field, workers, canonical)
    eng = HochsterEngine(gens, field, canonical)
    acc: Counter = Counter()
    start = time.monotonic()
    for w in range(total):
        if budget is not None:
            over = budget.max_subsets is not None and w >= budget.max_subsets
            if not over and budget.time_limit is not None and w % 64 == 0:
                over = time.monotonic() - start > budget.time_limit
            if over:
                raise BudgetExceeded(w, BettiTable(dict(acc), field, n))
        p = eng.poly(w)
        if p:
            j = popcount(w)
            for s, d in enumerate(p):
                if d:
                    acc[(j - s, j)] += d
    return BettiTable(dict(acc), field, n)


def _parallel_table(ideal, field, workers, canonical):
    from concurrent.futures import ProcessPoolExecutor

    total = 1 << ideal.nvars
    step = max(1, total // (workers * 8))
    bounds = [(lo, min(total, lo + step)) for lo in range(0, total, step)]
    acc: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_table_chunk, ideal.gens, field, lo, hi, canonical) for lo, hi in bounds]
        for fut in futures:
            acc.update(fut.result())
    return BettiTable(dict(acc), field, ideal.nvars)


def regularity(table: BettiTable) -> int:
    return table.regularity()


def projective_dimension(table: BettiTable) -> int:
    return table.projective_dimension()


def quotient_regularity(ideal: SquarefreeMonomialIdeal, field: FieldSpec = F0) -> int:
    return hochster_table(ideal, field).regularity()


@lru_cache(maxsize=65536)
def graph_regularity(g: Graph, field: FieldSpec = F0) -> int:
    """``reg(R/I(G))`` by Hochster's formula (cached per graph and field)."""
    return hochster_table(edge_ideal(g), field).regularity()


def regularity_at_least(ideal: SquarefreeMonomialIdeal, k: int, field: FieldSpec = F0) -> bool:
    """``reg(R/I) >= k``, stopping at the first subset that witnesses it."""
    if k <= 0:
        return True
    eng = HochsterEngine(ideal.gens, field)
    order = sorted(range(1 << ideal.nvars), key=popcount)
    for w in order:
        if popcount(w) < k + 1:
            continue
        p = eng.poly(w)
        if len(p) > k and any(p[k:]):
            return True
    return False


# --- checks against the regularity theorems --------------------------------

class MatchingBounds(NamedTuple):
    im: int
    reg: int
    mat: int
    ok: bool


def matching_bounds_check(g: Graph, field: FieldSpec = F0) -> MatchingBounds:
    im, mat = induced_matching_number(g), matching_number(g)
    reg = graph_regularity(g, field)
    return MatchingBounds(im, reg, mat, im <= reg <= mat)


@dataclass
class DichotomyReport:
    reg: int
    reg_deletion: int
    reg_link: Optional[int]  # None when (I : x) is the unit ideal
    deletion: bool
    link: bool
    bound_ok: bool
    degenerate: bool = False

    @property
    def verdict(self) -> str:
        if self.deletion and self.link:
            return "both"
        if self.deletion:
            return "deletion-branch"
        if self.link:
            return "link-branch"
        return "neither"


def dichotomy_check(ideal: SquarefreeMonomialIdeal, x: int, field: FieldSpec = F0) -> DichotomyReport:
    """Which of ``reg(R/I) = reg(R/(I,x))`` and ``reg(R/I) = reg(R/(I:x)) + 1`` holds.

    Also checks the upper bound ``reg(R/I) <= max(reg(R/(I,x)), reg(R/(I:x)) + 1)``.
    When ``x`` divides no generator, ``(I : x) = I`` and the report is flagged
    degenerate; only the deletion branch can hold there.
    """
    reg = quotient_regularity(ideal, field)
    r_del = quotient_regularity(add_variable(ideal, x), field)
    try:
        r_link = quotient_regularity(colon_by_variable(ideal, x), field)
    except ValueError:
        r_link = None
    link = r_link is not None and reg == r_link + 1
    deletion = reg == r_del
    bound = max(r_del, r_link + 1 if r_link is not None else r_del)
    degenerate = not any(g >> x & 1 for g in ideal.gens)
    return DichotomyReport(reg, r_del, r_link, deletion, link, reg <= bound, degenerate)


@dataclass
class SplittingReport:
    degenerate: bool
    is_splitting: bool = False
    identity_failures: list = field(default_factory=list)
    linear_iprime: bool = False
    reg_formula_ok: Optional[bool] = None
    pd_formula_ok: Optional[bool] = None
    tables: dict = field(default_factory=dict)


def _ideal_reg(t: BettiTable) -> int:
    return t.regularity() + 1


def _ideal_pd(t: BettiTable) -> int:
    return t.projective_dimension() - 1


def is_linear(t: BettiTable) -> bool:
    """All Betti numbers of the ideal lie on one diagonal ``j - i = const``."""
    return len({j - i for i, j in t.ideal_entries()}) <= 1


def splitting_check(ideal: SquarefreeMonomialIdeal, x: int, field: FieldSpec = F0) -> SplittingReport:
    """Test whether the ``x``-partition ``I = I' + I''`` is a Betti splitting."""
    ip, ipp = x_partition(ideal, x)
    if ip.is_zero() or ipp.is_zero():
        return SplittingReport(degenerate=True)
    meet = intersect(ip, ipp)
    t = {name: hochster_table(j, field) for name, j in
         (("I", ideal), ("I'", ip), ("I''", ipp), ("I'∩I''", meet))}
    b = {name: tab.ideal_entries() for name, tab in t.items()}
    keys = set(b["I"]) | set(b["I'"]) | set(b["I''"]) | {(i + 1, j) for i, j in b["I'∩I''"]}
    failures = []
    for i, j in sorted(keys):
        rhs = b["I'"].get((i, j), 0) + b["I''"].get((i, j), 0) + b["I'∩I''"].get((i - 1, j), 0)
        if b["I"].get((i, j), 0) != rhs:
            failures.append((i, j, b["I"].get((i, j), 0), rhs))
    rep = SplittingReport(degenerate=False, is_splitting=not failures, identity_failures=failures,
                          linear_iprime=is_linear(t["I'"]), tables=t)
    if rep.is_splitting:
        rep.reg_formula_ok = _ideal_reg(t["I"]) == max(_ideal_reg(t["I'"]), _ideal_reg(t["I''"]),
                                                       _ideal_reg(t["I'∩I''"]) - 1)
        rep.pd_formula_ok = _ideal_pd(t["I"]) == max(_ideal_pd(t["I'"]), _ideal_pd(t["I''"]),
                                                     _ideal_pd(t["I'∩I''"]) + 1)
    return rep


def regadd_check(a: SquarefreeMonomialIdeal, b: SquarefreeMonomialIdeal, field: FieldSpec = F0) -> bool:
    """``reg`` of the sum on disjoint variable blocks is the sum of the ``reg``s."""
    if a.is_zero() or b.is_zero():
        raise ValueError("both ideals must be nonzero")
    return quotient_regularity(disjoint_sum(a, b), field) == quotient_regularity(a, field) + quotient_regularity(b, field)


class RegInterval(NamedTuple):
    lo: int
    hi: int
    truncated: bool


def reg_interval(g: Graph, field: FieldSpec = F0, budget: int = 10000) -> RegInterval:
    """Bounds on ``reg(R/I(G))`` without Hochster sums.

    Recurses on ``G - x`` and ``G_x`` (``x`` of maximum degree):
    ``reg <= max(reg(G-x), reg(G_x) + 1)``, ``reg <= mat``, and ``reg`` is at
    least ``im`` and the value on any induced subgraph.  Leaves: edgeless (0), chordal complement (1).
    ``field`` is accepted for interface symmetry; none of the bounds used
    depend on the characteristic.
    """
    del field
    adj = g.adj
    memo: dict[int, tuple[int, int]] = {}
    nodes = 0
    truncated = False

    def sub(mask):
        return Graph(popcount(mask), [_pack(adj[v] & mask, mask) for v in bits(mask)])

    def rec(mask):
        nonlocal nodes, truncated
        if mask in memo:
            return memo[mask]
        h = sub(mask)
        if h.num_edges() == 0:
            res = (0, 0)
        elif is_chordal(complement(h)):
            res = (1, 1)
        else:
            nodes += 1
            mat = matching_number(h)
            if nodes > budget:
                truncated = True
                res = (max(2, induced_matching_number(h)), mat)
            else:
                x = max(bits(mask), key=lambda v: (popcount(adj[v] & mask), -v))
                l1, h1 = rec(mask & ~(1 << x))
                l2, h2 = rec(mask & ~(adj[x] | 1 << x))
                lo = max(2, l1, l2, induced_matching_number(h))
                hi = min(mat, max(h1, h2 + 1))
                if h2 + 1 <= l1:
                    hi = min(hi, h1)
                res = (lo, hi)
        memo[mask] = res
        return res

    lo, hi = rec(g.vertex_mask)
    return RegInterval(lo, hi, truncated)


def _pack(m: int, mask: int) -> int:
    out, k = 0, 0
    for v in bits(mask):
        if m >> v & 1:
            out |= 1 << k
        k += 1
    return out
