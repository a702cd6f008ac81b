"""Reduced simplicial homology over finite fields and a characteristic-zero surrogate.

Characteristic zero is approximated by ranks over two large primes; if they
disagree the rank is recomputed exactly with fraction-free (Bareiss)
elimination over the integers.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from . import kernels
from .graph import bits
from .ideal import SimplicialComplex, euler_characteristic

log = logging.getLogger(__name__)

SURROGATE_PRIMES = (1073741789, 1073741827)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``f2``, ``fp`` (with ``p``), ``f0`` surrogate or ``f0exact``."""

    kind: str
    p: Optional[int] = None
    primes: tuple[int, int] = field(default=SURROGATE_PRIMES)

    def __post_init__(self):
        if self.kind not in ("f2", "fp", "f0", "f0exact"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "fp":
            if self.p is None or not is_prime(self.p) or not 2 < self.p < 2 ** 31:
                raise ValueError(f"fp needs an odd prime below 2^31, got {self.p}")
        if self.kind == "f0":
            a, b = self.primes
            if a == b or not (is_prime(a) and is_prime(b)):
                raise ValueError("surrogate needs two distinct primes")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip().lower()
        if text in ("f2", "f0", "f0exact"):
            return cls(text)
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"fp: needs an integer prime, got {text[3:]!r}") from None
            if p == 2:
                raise ValueError("use f2 for characteristic two")
            return cls("fp", p)
        raise ValueError(f"bad field {text!r}; expected f2, f0, f0exact or fp:<prime>")

    @property
    def characteristic(self) -> int:
        return {"f2": 2, "fp": self.p, "f0": 0, "f0exact": 0}[self.kind]

    def __str__(self):
        return f"fp:{self.p}" if self.kind == "fp" else self.kind

    @property
    def label(self) -> str:
        if self.kind == "f0":
            return "char-0 (surrogate)"
        if self.kind == "f0exact":
            return "char-0 (exact)"
        return f"char-{self.characteristic}"


F2 = FieldSpec("f2")
F0 = FieldSpec("f0")


@dataclass
class BoundaryMatrix:
    """Integer boundary matrix; ``columns[j]`` maps row index to ``±1``."""

    rows: list
    cols: list
    columns: list

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * len(self.cols) for _ in self.rows]
        for j, col in enumerate(self.columns):
            for r, a in col.items():
                out[r][j] = a
        return out


def boundary_matrix(d: SimplicialComplex, dim: int) -> BoundaryMatrix:
    """``∂_dim`` from ``dim``-faces to ``(dim-1)``-faces; ``∂_0`` is the augmentation."""
    rows = d.faces(dim - 1) if dim >= 0 else []
    cols = d.faces(dim) if dim >= -1 else []
    index = {f: i for i, f in enumerate(rows)}
    columns = []
    for f in cols:
        col = {}
        for pos, v in enumerate(bits(f)):
            col[index[f & ~(1 << v)]] = -1 if pos % 2 else 1
        columns.append(col)
    return BoundaryMatrix(rows, cols, columns)


def bareiss_rank(dense: list[list[int]]) -> int:
    """Exact rank over the rationals by fraction-free elimination."""
    m = [row[:] for row in dense]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for r in range(rank + 1, nrows):
            a = m[r][c]
            row, prow = m[r], m[rank]
            for k in range(c + 1, ncols):
                row[k] = (pv * row[k] - a * prow[k]) // prev
            row[c] = 0
        prev = pv
        rank += 1
    return rank


def rank(m: BoundaryMatrix, f: FieldSpec) -> int:
    nrows = len(m.rows)
    if f.kind == "f2":
        return kernels.rank_gf2(nrows, [[r for r, a in col.items() if a % 2] for col in m.columns])
    if f.kind == "fp":
        return kernels.rank_modp(nrows, [list(col.items()) for col in m.columns], f.p)
    if f.kind == "f0exact":
        return bareiss_rank(m.to_dense())
    cols = [list(col.items()) for col in m.columns]
    r1, r2 = (kernels.rank_modp(nrows, cols, p) for p in f.primes)
    if r1 == r2:
        return r1
    log.warning("surrogate primes disagree (%d vs %d); using exact elimination", r1, r2)
    return bareiss_rank(m.to_dense())


def reduced_betti(d: SimplicialComplex, f: FieldSpec) -> list[int]:
    """``[dim H̃_{-1}, dim H̃_0, ..., dim H̃_dim]``; the void complex gives ``[0]``."""
    if d.is_void:
        return [0]
    top = d.dimension
    ranks = {t: rank(boundary_matrix(d, t), f) for t in range(0, top + 1)}
    out = []
    for t in range(-1, top + 1):
        out.append(len(d.faces(t)) - ranks.get(t, 0) - ranks.get(t + 1, 0))
    _check_euler(d, out)
    return out


def _check_euler(d: SimplicialComplex, betti: list[int]) -> None:
    alt = sum((-1) ** (k - 1) * b for k, b in enumerate(betti))
    if alt != euler_characteristic(d)[1]:
        raise ArithmeticError(f"Euler-Poincare check failed: {betti} vs reduced chi {euler_characteristic(d)[1]}")


def subset_betti(gens, w: int, f: FieldSpec) -> list[int]:
    """Reduced Betti numbers of ``Δ_W`` for the Stanley–Reisner complex of ``gens``.

    Fast path used by the Hochster sum; entry ``k`` is ``dim H̃_{k-1}``.
    """
    if f.kind == "f2":
        return kernels.subset_betti(gens, w, 2)
    if f.kind == "fp":
        return kernels.subset_betti(gens, w, f.p)
    if f.kind == "f0":
        a = kernels.subset_betti(gens, w, f.primes[0])
        b = kernels.subset_betti(gens, w, f.primes[1])
        if a == b:
            return a
        log.warning("surrogate primes disagree on subset %#x; using exact elimination", w)
    return _exact_subset_betti(gens, w)


def _exact_subset_betti(gens, w: int) -> list[int]:
    from .ideal import SquarefreeMonomialIdeal, restrict, stanley_reisner_complex

    nvars = max(w.bit_length(), max((g.bit_length() for g in gens), default=0))
    d = restrict(stanley_reisner_complex(SquarefreeMonomialIdeal(nvars, gens)), w)
    return reduced_betti(d, FieldSpec("f0exact"))
