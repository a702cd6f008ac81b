"""Finite simple graphs stored as adjacency bit masks.

Vertex sets are plain ``int`` bit masks throughout the package: bit ``v`` set
means vertex ``v`` is in the set.  Python integers are unbounded, so the
128-vertex cap is a policy limit rather than a storage one.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence

MAX_VERTICES = 128


class GraphFormatError(ValueError):
    """Raised for malformed graph6 or edge-list input."""


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def as_mask(vertices) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Equality and hashing use the adjacency only; labels are carried along
    through transforms for reporting but never compared.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj: Sequence[int], labels: Optional[Sequence[str]] = None):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << n) - 1
        for u, nb in enumerate(adj):
            if nb & ~full:
                raise ValueError(f"vertex {u} has neighbours outside 0..{n - 1}")
            if nb >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in bits(nb):
                if not adj[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if labels is None:
            labels = tuple(f"x{i + 1}" for i in range(n))
        elif len(labels) != n:
            raise ValueError("label count does not match vertex count")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "labels", tuple(labels))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def matching(cls, k: int) -> "Graph":
        """``k`` disjoint edges, ``kK2``."""
        return cls.from_edges(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])

    @classmethod
    def complete_multipartite(cls, *sizes: int) -> "Graph":
        n = sum(sizes)
        part = []
        for idx, s in enumerate(sizes):
            part += [idx] * s
        return cls.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])

    # --- basic queries -------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h


# --- codecs -------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    for off, byte in enumerate(data):
        if byte < 63 or byte > 126:
            raise GraphFormatError(f"byte {byte} at offset {off} outside 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 4 and data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        raise GraphFormatError("unsupported size prefix at offset 0 (graphs beyond 258047 vertices)")
    if n > MAX_VERTICES:
        raise GraphFormatError(f"graph has {n} vertices, cap is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise GraphFormatError(
            f"expected {nbytes} adjacency bytes after offset {pos}, found {len(body)}")
    adj = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise GraphFormatError(f"nonzero padding bits at offset {pos + nbytes - 1}")
    return Graph(n, adj)


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    acc, k = 0, 0
    for v in range(1, n):
        for u in range(v):
            acc = acc << 1 | (g.adj[u] >> v & 1)
            k += 1
            if k == 6:
                out.append(acc + 63)
                acc, k = 0, 0
    if k:
        out.append((acc << (6 - k)) + 63)
    return bytes(out).decode("ascii")


def parse_edge_list(text: str) -> Graph:
    """First line ``n``, then one ``u v`` pair per line, 0-indexed."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("edge list is empty; first line must be the vertex count")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphFormatError(f"bad edge list line: {exc}") from None
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


# --- transforms ----------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, [full & ~a & ~(1 << v) for v, a in enumerate(g.adj)], g.labels)


def is_bipartition(g: Graph, part) -> Optional[tuple[int, int]]:
    """Return an edge lying inside one class, or ``None`` if ``part`` is a bipartition."""
    part = as_mask(part)
    for u, v in g.edges():
        if part >> u & 1 == part >> v & 1:
            return (u, v)
    return None


def bipartite_complement(g: Graph, part) -> Graph:
    part = as_mask(part) & g.vertex_mask
    bad = is_bipartition(g, part)
    if bad is not None:
        raise ValueError(f"edge {bad} lies inside one class of the bipartition")
    other = g.vertex_mask & ~part
    adj = []
    for v in range(g.n):
        cross = other if part >> v & 1 else part
        adj.append(cross & ~g.adj[v])
    return Graph(g.n, adj, g.labels)


def induced_subgraph(g: Graph, w) -> Graph:
    """``G_{|W}``; vertices are renumbered in increasing order, labels kept."""
    w = as_mask(w)
    if w & ~g.vertex_mask:
        raise ValueError("vertex set is not contained in the graph")
    keep = list(bits(w))
    pos = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        m = 0
        for u in bits(g.adj[v] & w):
            m |= 1 << pos[u]
        adj.append(m)
    return Graph(len(keep), adj, [g.labels[v] for v in keep])


def delete_vertex(g: Graph, x: int) -> Graph:
    return induced_subgraph(g, g.vertex_mask & ~(1 << x))


def g_sub_x(g: Graph, x: int) -> Graph:
    """Induced subgraph on the vertices outside the closed neighbourhood of ``x``."""
    return induced_subgraph(g, g.vertex_mask & ~g.closed_neighbors(x))


def contract_edge(g: Graph, e: tuple[int, int], label: Optional[str] = None) -> Graph:
    """Contract ``e = {a, b}``; the merged vertex is appended last."""
    a, b = e
    if not g.has_edge(a, b):
        raise ValueError(f"({a}, {b}) is not an edge")
    rest = g.vertex_mask & ~(1 << a) & ~(1 << b)
    h = induced_subgraph(g, rest)
    keep = list(bits(rest))
    pos = {v: i for i, v in enumerate(keep)}
    nb = 0
    for u in bits((g.adj[a] | g.adj[b]) & rest):
        nb |= 1 << pos[u]
    m = h.n
    adj = [h.adj[i] | ((nb >> i & 1) << m) for i in range(m)] + [nb]
    labels = list(h.labels) + [label or f"{g.labels[a]}{g.labels[b]}"]
    return Graph(m + 1, adj, labels)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    adj = list(g.adj) + [a << shift for a in h.adj]
    return Graph(g.n + h.n, adj, list(g.labels) + list(h.labels))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    adj = [0] * g.n
    for u, v in g.edges():
        adj[perm[u]] |= 1 << perm[v]
        adj[perm[v]] |= 1 << perm[u]
    labels = [None] * g.n
    for v in range(g.n):
        labels[perm[v]] = g.labels[v]
    return Graph(g.n, adj, labels)


# --- predicates ------------------------------------------------------------

def component_masks(g: Graph, w: Optional[int] = None) -> list[int]:
    """Connected components of ``G_{|W}`` as vertex masks."""
    rest = g.vertex_mask if w is None else w
    comps = []
    while rest:
        seed = rest & -rest
        comp, frontier = seed, seed
        while frontier:
            v = frontier.bit_length() - 1
            frontier ^= 1 << v
            new = g.adj[v] & rest & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    """Single component; graphs with at most one vertex count as connected."""
    return len(component_masks(g)) <= 1


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visiting order."""
    weight = [0] * g.n
    unvisited = g.vertex_mask
    order = []
    while unvisited:
        v = max(bits(unvisited), key=lambda u: (weight[u], -u))
        order.append(v)
        unvisited &= ~(1 << v)
        for u in bits(g.adj[v] & unvisited):
            weight[u] += 1
    return order


def is_chordal(g: Graph) -> bool:
    """MCS ordering followed by the perfect elimination ordering check."""
    order = mcs_order(g)
    seen = 0
    for v in order:
        earlier = g.adj[v] & seen
        if earlier:
            # most recently visited earlier neighbour
            u = max(bits(earlier), key=order.index)
            if (earlier & ~(1 << u)) & ~g.adj[u]:
                return False
        seen |= 1 << v
    return True


def induced_long_cycle(g: Graph, minlen: int = 4) -> Optional[list[int]]:
    """Some induced cycle with at least ``minlen`` vertices, or ``None``.

    Grows induced paths from each start vertex ``s`` using only vertices
    larger than ``s``, so every cycle is found from its smallest vertex.
    """
    if minlen < 3:
        raise ValueError("minlen must be at least 3")
    adj = g.adj

    def extend(path, inner, allowed):
        last = path[-1]
        s = path[0]
        for w in bits(adj[last] & allowed):
            if adj[w] & inner:
                continue
            if adj[w] >> s & 1:
                if len(path) >= 2 and len(path) + 1 >= minlen:
                    return path + [w]
                continue
            found = extend(path + [w], inner | 1 << last, allowed & ~(1 << w))
            if found:
                return found
        return None

    for s in range(g.n):
        allowed = g.vertex_mask >> (s + 1) << (s + 1)
        for p1 in bits(adj[s] & allowed):
            # the path s, p1, ... keeps s as the closing vertex, so s is not "inner"
            found = extend([s, p1], 0, allowed & ~(1 << p1))
            if found:
                return found
    return None


def has_anticycle(g: Graph) -> bool:
    return induced_long_cycle(complement(g), 4) is not None


def is_anticycle(g: Graph, u) -> bool:
    """``(G_{|U})^c`` is a cycle of length at least 4 on all of ``U``."""
    h = complement(induced_subgraph(g, as_mask(u)))
    return h.n >= 4 and all(h.degree(v) == 2 for v in range(h.n)) and is_connected(h)


def matching_number(g: Graph) -> int:
    """Exact maximum matching by branch and bound on the lowest non-isolated vertex."""
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        active = 0
        for v in bits(mask):
            if adj[v] & mask:
                active |= 1 << v
        if not active:
            return 0
        v = (active & -active).bit_length() - 1
        # greedy lower bound / half-vertex upper bound
        bound = popcount(active) // 2
        top = best(mask & ~(1 << v))
        if top == bound:
            return top
        for u in bits(adj[v] & mask):
            top = max(top, 1 + best(mask & ~(1 << v) & ~(1 << u)))
            if top == bound:
                break
        return top

    return best(g.vertex_mask)


def induced_matching_number(g: Graph) -> int:
    """Exact maximum induced matching.

    A vertex ``v`` is either unused, or matched to a neighbour ``u`` in which
    case every other vertex of ``N[u] | N[v]`` is excluded.
    """
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        active = 0
        for v in bits(mask):
            if adj[v] & mask:
                active |= 1 << v
        if not active:
            return 0
        v = (active & -active).bit_length() - 1
        top = best(mask & ~(1 << v))
        for u in bits(adj[v] & mask):
            gone = adj[u] | adj[v] | 1 << u | 1 << v
            top = max(top, 1 + best(mask & ~gone))
        return top

    return best(g.vertex_mask)
