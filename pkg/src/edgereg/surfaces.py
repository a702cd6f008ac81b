"""Triangulated closed surfaces: recognition, orientability, catalog and search."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .graph import Graph, as_mask, bits, complement, component_masks, induced_subgraph, is_connected, popcount


class SearchCapExceeded(RuntimeError):
    """The surface search hit a node or size cap before it could decide."""

    def __init__(self, nodes: int, reason: str):
        super().__init__(f"surface search indeterminate after {nodes} nodes ({reason})")
        self.nodes = nodes
        self.reason = reason


@dataclass(frozen=True)
class PureTwoComplex:
    nverts: int
    triangles: tuple

    def __init__(self, nverts: int, triangles: Iterable):
        tris = sorted({tuple(sorted(t)) for t in triangles})
        for t in tris:
            if len(set(t)) != 3:
                raise ValueError(f"{t} is not a triangle")
            if t[2] >= nverts or t[0] < 0:
                raise ValueError(f"triangle {t} uses a vertex outside 0..{nverts - 1}")
        object.__setattr__(self, "nverts", nverts)
        object.__setattr__(self, "triangles", tuple(tris))

    def vertices(self) -> list[int]:
        return sorted({v for t in self.triangles for v in t})

    def edges(self) -> dict:
        """Edge -> list of triangle indices containing it."""
        out: dict = {}
        for k, (a, b, c) in enumerate(self.triangles):
            for e in ((a, b), (a, c), (b, c)):
                out.setdefault(e, []).append(k)
        return out

    def skeleton(self) -> Graph:
        return Graph.from_edges(self.nverts, self.edges().keys())


@dataclass
class SurfaceCertificate:
    triangles: PureTwoComplex
    orientable: bool
    euler: int
    genus: int
    label: str
    orientation: Optional[dict] = None
    obstruction: Optional[list] = None

    def to_json(self) -> dict:
        return {
            "triangles": [list(t) for t in self.triangles.triangles],
            "orientable": self.orientable,
            "euler": self.euler,
            "genus": self.genus,
            "label": self.label,
        }

    @property
    def vertex_mask(self) -> int:
        return as_mask(self.triangles.vertices())


def surface_label(orientable: bool, euler: int) -> tuple[int, str]:
    if orientable:
        g = (2 - euler) // 2
        return g, "sphere" if g == 0 else f"orientable-genus-{g}"
    g = 2 - euler
    return g, f"nonorientable-genus-{g}"


def vertex_link(t: PureTwoComplex, v: int) -> Graph:
    """Link of ``v``: the neighbours of ``v``, joined when they span a triangle with it."""
    nbrs = sorted({u for tri in t.triangles if v in tri for u in tri if u != v})
    if not nbrs:
        warnings.warn(f"vertex {v} lies in no triangle; its link is empty", stacklevel=2)
    pos = {u: i for i, u in enumerate(nbrs)}
    edges = [tuple(pos[u] for u in tri if u != v) for tri in t.triangles if v in tri]
    return Graph.from_edges(len(nbrs), edges, labels=[str(u) for u in nbrs])


def _tri_edges(t):
    a, b, c = t
    return ((a, b), (a, c), (b, c))


def _edge_sign(t, e) -> int:
    """Coefficient of edge ``e`` in the boundary of the sorted triangle ``t``."""
    a, b, c = t
    return -1 if e == (a, c) else 1


def orientability(t: PureTwoComplex):
    """``(True, orientation)`` or ``(False, obstruction cycle of triangle indices)``.

    Breadth-first sign propagation over the dual graph; neighbouring
    triangles must induce opposite orientations on their shared edge.
    """
    edges = t.edges()
    if any(len(v) != 2 for v in edges.values()):
        raise ValueError("orientability needs every edge in exactly two triangles")
    tris = t.triangles
    sign: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    for root in range(len(tris)):
        if root in sign:
            continue
        sign[root], parent[root] = 1, None
        queue = deque([root])
        while queue:
            k = queue.popleft()
            for e in _tri_edges(tris[k]):
                for m in edges[e]:
                    if m == k:
                        continue
                    want = -sign[k] * _edge_sign(tris[k], e) * _edge_sign(tris[m], e)
                    if m not in sign:
                        sign[m], parent[m] = want, k
                        queue.append(m)
                    elif sign[m] != want:
                        return False, _obstruction(parent, k, m)
    return True, sign


def _obstruction(parent, k, m):
    def chain(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pk, pm = chain(k), chain(m)
    common = set(pk) & set(pm)
    pk = pk[: next(i for i, x in enumerate(pk) if x in common) + 1]
    pm = pm[: next(i for i, x in enumerate(pm) if x in common)]
    return pk + pm[::-1]


def check_closed_surface(t: PureTwoComplex):
    """``(certificate, None)`` or ``(None, reason)`` with reason in
    ``bad-edge``, ``pinched-vertex``, ``disconnected``, ``empty``."""
    if not t.triangles:
        return None, "empty"
    edges = t.edges()
    if any(len(v) != 2 for v in edges.values()):
        return None, "bad-edge"
    for v in t.vertices():
        if not is_connected(vertex_link(t, v)):
            return None, "pinched-vertex"
    # dual graph connectivity
    seen = {0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for e in _tri_edges(t.triangles[k]):
            for m in edges[e]:
                if m not in seen:
                    seen.add(m)
                    queue.append(m)
    if len(seen) != len(t.triangles):
        return None, "disconnected"
    orientable, data = orientability(t)
    euler = len(t.vertices()) - len(edges) + len(t.triangles)
    genus, label = surface_label(orientable, euler)
    cert = SurfaceCertificate(t, orientable, euler, genus, label,
                              orientation=data if orientable else None,
                              obstruction=None if orientable else data)
    return cert, None


def is_closed_surface(t: PureTwoComplex) -> Optional[SurfaceCertificate]:
    return check_closed_surface(t)[0]


# --- catalog -------------------------------------------------------------

def _csaszar():
    return [(i % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + \
           [(i % 7, (i + 2) % 7, (i + 3) % 7) for i in range(7)]


_CATALOG = {
    "tetrahedron": (4, list(combinations(range(4), 3))),
    "octahedron": (6, [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]),
    "csaszar-torus": (7, _csaszar()),
    "rp2-6": (6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
                  (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5)]),
}


def catalog() -> dict[str, PureTwoComplex]:
    """Small closed surfaces; each is validated on every call."""
    out = {}
    for name, (n, tris) in _CATALOG.items():
        t = PureTwoComplex(n, tris)
        if is_closed_surface(t) is None:
            raise AssertionError(f"catalog entry {name} is not a closed surface")
        out[name] = t
    return out


# --- search -------------------------------------------------------------

def clique_triangles(g: Graph) -> PureTwoComplex:
    tris = []
    for a in range(g.n):
        for b in bits(g.adj[a] >> (a + 1) << (a + 1)):
            for c in bits(g.adj[a] & g.adj[b] >> (b + 1) << (b + 1)):
                tris.append((a, b, c))
    return PureTwoComplex(g.n, tris)


def _octahedron_fast_path(t: PureTwoComplex) -> Optional[SurfaceCertificate]:
    tri_set = set(t.triangles)
    has = lambda a, b, c: tuple(sorted((a, b, c))) in tri_set
    nb: dict[tuple, set] = {}
    for a, b, c in t.triangles:
        for e, x in (((a, b), c), ((a, c), b), ((b, c), a)):
            nb.setdefault(e, set()).add(x)
    for a, b, c in t.triangles:
        for a2 in nb[(b, c)] - {a}:
            for b2 in nb[tuple(sorted((a, c)))] - {b, a2}:
                for c2 in nb[tuple(sorted((a, b)))] - {c, a2, b2}:
                    parts = ((a, a2), (b, b2), (c, c2))
                    if all(has(x, y, z) for x in parts[0] for y in parts[1] for z in parts[2]):
                        cand = PureTwoComplex(t.nverts, [(x, y, z) for x in parts[0] for y in parts[1] for z in parts[2]])
                        cert = is_closed_surface(cand)
                        if cert is not None:
                            return cert
    return None


@dataclass
class SearchCaps:
    max_nodes: int = 1 << 22
    max_triangles: int = 64


def find_surface_subcomplex(t: PureTwoComplex, require_orientable: bool, caps: Optional[SearchCaps] = None, *,
                            exclude_tetrahedra: bool = False, first_seed: int = 0,
                            fast_path: bool = True) -> Optional[SurfaceCertificate]:
    """Some subset of ``t``'s triangles forming a closed surface, or ``None``.

    Each seed triangle starts a backtracking search restricted to triangles of
    larger index; the open edge with fewest completions is closed next.  Raises
    :class:`SearchCapExceeded` when a cap cut the search short and nothing was
    found.  ``first_seed`` rotates the seed order only.
    """
    caps = caps or SearchCaps()
    if fast_path:
        cert = _octahedron_fast_path(t)
        if cert is not None:
            return cert
    tris = t.triangles
    m = len(tris)
    by_edge: dict = {}
    for k, tri in enumerate(tris):
        for e in _tri_edges(tri):
            by_edge.setdefault(e, []).append(k)
    nodes = 0
    truncated = False

    def accept(chosen) -> Optional[SurfaceCertificate]:
        cand = PureTwoComplex(t.nverts, [tris[k] for k in chosen])
        if exclude_tetrahedra and len(cand.vertices()) == 4:
            return None
        cert = is_closed_surface(cand)
        if cert is None or (require_orientable and not cert.orientable):
            return None
        return cert

    def search(seed):
        pass
        chosen = [seed]
        in_s = {seed}
        count: dict = {e: 1 for e in _tri_edges(tris[seed])}
        sign = {seed: 1}

        def rec():
            nonlocal nodes, truncated
            nodes += 1
            if nodes > caps.max_nodes:
                raise SearchCapExceeded(nodes, "node cap")
            open_edges = [e for e, c in count.items() if c == 1]
            if not open_edges:
                return accept(chosen)
            if len(chosen) >= caps.max_triangles:
                truncated = True
                return None
            best, best_opts = None, None
            for e in open_edges:
                opts = [k for k in by_edge[e] if k > seed and k not in in_s
                        and all(count.get(f, 0) < 2 for f in _tri_edges(tris[k]))]
                if best_opts is None or len(opts) < len(best_opts):
                    best, best_opts = e, opts
                    if not opts:
                        return None
            host = next(k for k in by_edge[best] if k in in_s)
            for k in best_opts:
                s = -sign[host] * _edge_sign(tris[host], best) * _edge_sign(tris[k], best)
                if require_orientable and not _consistent(k, s):
                    continue
                chosen.append(k)
                in_s.add(k)
                sign[k] = s
                for f in _tri_edges(tris[k]):
                    count[f] = count.get(f, 0) + 1
                if _links_ok(tris[k]):
                    found = rec()
                    if found is not None:
                        return found
                for f in _tri_edges(tris[k]):
                    count[f] -= 1
                    if not count[f]:
                        del count[f]
                del sign[k]
                in_s.discard(k)
                chosen.pop()
            return None

        def _consistent(k, s):
            for f in _tri_edges(tris[k]):
                if count.get(f, 0) == 1:
                    other = next(j for j in by_edge[f] if j in in_s)
                    if s * _edge_sign(tris[k], f) != -sign[other] * _edge_sign(tris[other], f):
                        return False
            return True

        def _links_ok(tri):
            # a vertex whose link already closed into a cycle cannot take more triangles
            for v in tri:
                link_edges = [tuple(u for u in tris[j] if u != v) for j in chosen if v in tris[j]]
                deg: dict = {}
                for a, b in link_edges:
                    deg[a] = deg.get(a, 0) + 1
                    deg[b] = deg.get(b, 0) + 1
                verts = list(deg)
                idx = {u: i for i, u in enumerate(verts)}
                h = Graph.from_edges(len(verts), [(idx[a], idx[b]) for a, b in link_edges])
                for comp in component_masks(h):
                    if all(deg[verts[i]] == 2 for i in bits(comp)) and comp != h.vertex_mask:
                        return False
            return True

        return rec()

    order = list(range(first_seed % m, m)) + list(range(0, first_seed % m)) if m else []
    for seed in order:
        cert = search(seed)
        if cert is not None:
            return cert
    if truncated:
        raise SearchCapExceeded(nodes, "triangle cap")
    return None


def flag_surface_vertex_sets(g: Graph, require_orientable: bool = False):
    """Vertex sets ``W`` whose induced subgraph's clique complex is a closed surface.

    Uses the link test directly on the graph: every vertex's neighbourhood in
    ``G_{|W}`` induces a cycle of length at least 4 and ``G_{|W}`` is connected.
    Yields ``(W, certificate)`` in increasing ``W``.
    """
    for w in range(1, 1 << g.n):
        if popcount(w) < 5:  # every vertex needs at least 4 neighbours
            continue
        cert = induced_surface_certificate(g, w)
        if cert is not None and (cert.orientable or not require_orientable):
            yield w, cert


def induced_surface_certificate(g: Graph, w: int) -> Optional[SurfaceCertificate]:
    for v in bits(w):
        nb = g.adj[v] & w
        if popcount(nb) < 4:
            return None
        for u in bits(nb):
            if popcount(g.adj[u] & nb) != 2:
                return None
        if len(component_masks(g, nb)) != 1:
            return None
    h = induced_subgraph(g, w)
    if not is_connected(h):
        return None
    keep = list(bits(w))
    tri = clique_triangles(h)
    cert = is_closed_surface(PureTwoComplex(g.n, [tuple(keep[x] for x in t) for t in tri.triangles]))
    if cert is None:
        raise AssertionError("link test passed but the clique complex is not a closed surface")
    return cert


def find_induced_surface(g: Graph, require_orientable: bool) -> Optional[SurfaceCertificate]:
    """First induced flag surface in ``g`` (see :func:`flag_surface_vertex_sets`)."""
    for _, cert in flag_surface_vertex_sets(g, require_orientable):
        return cert
    return None


def is_induced_in(cert: SurfaceCertificate, host: Graph) -> bool:
    """The clique complex of ``host`` restricted to the surface's vertices is the surface."""
    w = cert.vertex_mask
    keep = list(bits(w))
    h = induced_subgraph(host, w)
    tris = {tuple(keep[x] for x in t) for t in clique_triangles(h).triangles}
    if tris != set(cert.triangles.triangles):
        return False
    # no K4: every vertex link in h is triangle-free when each link is a cycle of length >= 4
    return induced_surface_certificate(host, w) is not None


def theorem_host(g: Graph) -> PureTwoComplex:
    """Triangles of the clique complex of ``G^c``."""
    return clique_triangles(complement(g))
