"""Squarefree monomial ideals and simplicial complexes.

Both are stored as antichains of vertex bit masks: generator supports for an
ideal, facets for a complex.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .graph import Graph, as_mask, bits, complement, popcount


def _canonical_key(mask: int):
    return (popcount(mask), tuple(bits(mask)))


def minimalize(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop every mask that contains another one; sort by size then lex."""
    uniq = sorted(set(masks), key=_canonical_key)
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(kept)


def maximalize(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop every mask contained in another one; canonical order."""
    uniq = sorted(set(masks), key=_canonical_key, reverse=True)
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=_canonical_key))


def _parse_rows(text: str, what: str):
    lines = text.splitlines()
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise ValueError(f"{what} text is empty; first line must be the variable count")
    n = int(lines[0].split("#", 1)[0])
    rows = []
    for ln in lines[1:]:
        ln = ln.split("#", 1)[0]
        rows.append(as_mask(int(t) for t in ln.split()))
    for r in rows:
        if r >> n:
            raise ValueError(f"{what} row uses a vertex outside 0..{n - 1}")
    return n, rows


class SquarefreeMonomialIdeal:
    """Ideal generated by squarefree monomials given as variable supports.

    The generator list is always the minimal generating set, sorted by degree
    and then lexicographically, so ``==`` compares ideals.  The zero ideal has
    no generators.
    """

    __slots__ = ("nvars", "gens")

    def __init__(self, nvars: int, gens: Iterable = ()):
        masks = [as_mask(g) for g in gens]
        for m in masks:
            if m == 0:
                raise ValueError("the unit ideal (empty support) is not a squarefree monomial ideal here")
            if m >> nvars:
                raise ValueError(f"generator uses a variable outside 0..{nvars - 1}")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "gens", minimalize(masks))

    def __setattr__(self, name, value):
        raise AttributeError("SquarefreeMonomialIdeal is immutable")

    def __eq__(self, other):
        if not isinstance(other, SquarefreeMonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __repr__(self):
        return f"SquarefreeMonomialIdeal({self.nvars}, {self.supports()})"

    def is_zero(self) -> bool:
        return not self.gens

    def supports(self) -> list[tuple[int, ...]]:
        return [tuple(bits(g)) for g in self.gens]

    def contains_monomial(self, mask: int) -> bool:
        return any(g & mask == g for g in self.gens)

    def to_text(self) -> str:
        return "\n".join([str(self.nvars)] + [" ".join(map(str, s)) for s in self.supports()]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SquarefreeMonomialIdeal":
        n, rows = _parse_rows(text, "ideal")
        return cls(n, rows)


class SimplicialComplex:
    """Simplicial complex on vertices ``0..nvars-1`` given by its facets.

    ``facets == ()`` is the void complex; ``facets == (0,)`` is the empty
    complex ``{∅}``.  The two differ in reduced homology (H̃₋₁).
    """

    __slots__ = ("nvars", "facets", "flag", "_faces")

    def __init__(self, nvars: int, facets: Iterable = (), flag: Optional[bool] = None):
        masks = [as_mask(f) for f in facets]
        for m in masks:
            if m >> nvars:
                raise ValueError(f"facet uses a vertex outside 0..{nvars - 1}")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "facets", maximalize(masks))
        object.__setattr__(self, "flag", flag)
        object.__setattr__(self, "_faces", None)

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.nvars == other.nvars and self.facets == other.facets

    def __hash__(self):
        return hash((self.nvars, self.facets))

    def __repr__(self):
        return f"SimplicialComplex({self.nvars}, {[tuple(bits(f)) for f in self.facets]})"

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        """``-1`` for ``{∅}``; the void complex reports ``-2``."""
        if not self.facets:
            return -2
        return max(popcount(f) for f in self.facets) - 1

    def is_face(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.facets)

    def _all_faces(self) -> dict[int, list[int]]:
        if self._faces is None:
            seen: set[int] = set()
            for f in self.facets:
                sub = f
                while True:
                    seen.add(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & f
            by_dim: dict[int, list[int]] = {}
            for m in seen:
                by_dim.setdefault(popcount(m) - 1, []).append(m)
            for d in by_dim:
                by_dim[d].sort(key=_canonical_key)
            object.__setattr__(self, "_faces", by_dim)
        return self._faces

    def faces(self, dim: int) -> list[int]:
        """Faces of the given dimension, canonical order (dimension -1 is ``[0]``)."""
        return self._all_faces().get(dim, [])

    def f_vector(self) -> list[int]:
        """Face counts ``f_{-1}, f_0, ..., f_dim``."""
        return [len(self.faces(d)) for d in range(-1, self.dimension + 1)]

    def vertices(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    def to_text(self) -> str:
        return "\n".join([str(self.nvars)] + [" ".join(map(str, bits(f))) for f in self.facets]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimplicialComplex":
        n, rows = _parse_rows(text, "complex")
        return cls(n, rows)


# --- constructions ---------------------------------------------------------

def edge_ideal(g: Graph) -> SquarefreeMonomialIdeal:
    return SquarefreeMonomialIdeal(g.n, [(1 << u) | (1 << v) for u, v in g.edges()])


def _faces_avoiding(nvars: int, gens: tuple[int, ...], within: int):
    """All subsets of ``within`` containing no generator, by depth-first growth."""
    by_vertex = [[g for g in gens if g >> v & 1] for v in range(nvars)]
    verts = list(bits(within))
    out = []

    def grow(face, start):
        out.append(face)
        for idx in range(start, len(verts)):
            v = verts[idx]
            nf = face | 1 << v
            if any(g & nf == g for g in by_vertex[v]):
                continue
            grow(nf, idx + 1)

    grow(0, 0)
    return out


def stanley_reisner_complex(i: SquarefreeMonomialIdeal) -> SimplicialComplex:
    """Complex whose faces are the squarefree monomials outside ``i``."""
    faces = _faces_avoiding(i.nvars, i.gens, (1 << i.nvars) - 1)
    return SimplicialComplex(i.nvars, faces)


def ideal_of_complex(d: SimplicialComplex) -> SquarefreeMonomialIdeal:
    """Stanley–Reisner ideal: generated by the minimal non-faces."""
    if d.is_void:
        raise ValueError("the void complex corresponds to the unit ideal")
    faces = set()
    for dim in range(-1, d.dimension + 1):
        faces.update(d.faces(dim))
    nonfaces = set()
    for f in faces:
        for v in range(d.nvars):
            if f >> v & 1:
                continue
            cand = f | 1 << v
            if cand in faces:
                continue
            if all((cand & ~(1 << u)) in faces for u in bits(cand)):
                nonfaces.add(cand)
    return SquarefreeMonomialIdeal(d.nvars, nonfaces)


def _maximal_cliques(g: Graph) -> list[int]:
    """Bron–Kerbosch with pivoting on bit masks."""
    adj = g.adj
    out: list[int] = []

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: bin(adj[u] & p).count("1"))
        for v in bits(p & ~adj[pivot]):
            bk(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n == 0:
        return [0]
    bk(0, g.vertex_mask, 0)
    return out


def clique_complex(g: Graph) -> SimplicialComplex:
    return SimplicialComplex(g.n, _maximal_cliques(g), flag=True)


def independence_complex(g: Graph) -> SimplicialComplex:
    return clique_complex(complement(g))


def restrict(d: SimplicialComplex, w) -> SimplicialComplex:
    """``Δ_W``: faces of ``d`` contained in ``W`` (same vertex numbering)."""
    w = as_mask(w)
    if d.is_void:
        return d
    return SimplicialComplex(d.nvars, [f & w for f in d.facets], flag=d.flag)


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Join on ``a.nvars + b.nvars`` vertices, ``b`` shifted past ``a``."""
    shift = a.nvars
    return SimplicialComplex(a.nvars + b.nvars, [fa | fb << shift for fa in a.facets for fb in b.facets])


def colon_by_variable(i: SquarefreeMonomialIdeal, x: int) -> SquarefreeMonomialIdeal:
    bit = 1 << x
    gens = [g & ~bit for g in i.gens]
    if 0 in gens:
        raise ValueError(f"x{x} is a generator, so the colon is the unit ideal")
    return SquarefreeMonomialIdeal(i.nvars, gens)


def add_variable(i: SquarefreeMonomialIdeal, x: int) -> SquarefreeMonomialIdeal:
    return SquarefreeMonomialIdeal(i.nvars, list(i.gens) + [1 << x])


def intersect(a: SquarefreeMonomialIdeal, b: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    """Generated by the pairwise squarefree lcms."""
    if a.nvars != b.nvars:
        raise ValueError("ideals live in rings with different variable counts")
    return SquarefreeMonomialIdeal(a.nvars, [ga | gb for ga in a.gens for gb in b.gens])


def ideal_sum(a: SquarefreeMonomialIdeal, b: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    if a.nvars != b.nvars:
        raise ValueError("ideals live in rings with different variable counts")
    return SquarefreeMonomialIdeal(a.nvars, a.gens + b.gens)


def x_partition(i: SquarefreeMonomialIdeal, x: int):
    """Split the minimal generators into those divisible by ``x`` and the rest."""
    bit = 1 << x
    return (SquarefreeMonomialIdeal(i.nvars, [g for g in i.gens if g & bit]),
            SquarefreeMonomialIdeal(i.nvars, [g for g in i.gens if not g & bit]))


def disjoint_sum(a: SquarefreeMonomialIdeal, b: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    """``a + b`` with ``b``'s variables shifted past ``a``'s."""
    shift = a.nvars
    return SquarefreeMonomialIdeal(a.nvars + b.nvars, list(a.gens) + [g << shift for g in b.gens])


def euler_characteristic(d: SimplicialComplex) -> tuple[int, int]:
    """``(plain, reduced)``; plain sums over faces of dimension >= 0."""
    if d.is_void:
        return 0, 0
    plain = sum((-1) ** k * len(d.faces(k)) for k in range(0, d.dimension + 1))
    return plain, plain - 1
