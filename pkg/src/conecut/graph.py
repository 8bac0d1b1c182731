"""Undirected weighted simple graphs: storage, IO, generators, structure queries.

Vertices are dense integers ``0..n-1``.  Edges are stored sorted
lexicographically as ``(u, v, w)`` with ``u < v``; the position of an edge in
that list is its stable edge id, used everywhere else in the package.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    GenerationError,
    GraphError,
    GraphFormatError,
    InfeasibleGraphError,
)

Edge = tuple[int, int, float]

FORMATS = ("edge-list", "graph6", "json")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with real edge weights.

    The constructor validates the canonical-storage invariants strictly; use
    :meth:`from_edges` to build from unnormalized edge data.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        seen = set()
        prev = None
        for u, v, w in self.edges:
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            if prev is not None and (u, v) < prev:
                raise GraphError("edge list not in canonical sorted order")
            prev = (u, v)
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label list length differs from vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence], labels=None) -> "Graph":
        """Normalize (orient u<v, sort, default weight 1.0) and validate."""
        norm = []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
            u, v = int(u), int(v)
            if u > v:
                u, v = v, u
            norm.append((u, v, float(w)))
        norm.sort(key=lambda e: (e[0], e[1]))
        return cls(n, tuple(norm), tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int, float], ...], ...]:
        """Per-vertex tuple of (neighbor, edge_id, weight), sorted by neighbor."""
        adj = [[] for _ in range(self.n)]
        for eid, (u, v, w) in enumerate(self.edges):
            adj[u].append((v, eid, w))
            adj[v].append((u, eid, w))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def edge_ids(self) -> dict[tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _) in enumerate(self.edges)}

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _, _ in self.adjacency[v]]

    def content_key(self) -> str:
        import hashlib

        payload = repr((self.n, self.edges)).encode()
        return hashlib.sha256(payload).hexdigest()


class SwapResult(NamedTuple):
    graph: Graph
    moved: bool


# ---------------------------------------------------------------------------
# IO
# ---------------------------------------------------------------------------


def _read_text(source) -> str:
    if hasattr(source, "read"):
        data = source.read()
        return data.decode() if isinstance(data, bytes) else data
    with open(source, "rb") as fh:
        return fh.read().decode()


def _parse_edge_list(text: str) -> Graph:
    rows = []
    int_mode = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(
                f"expected 'u v [w]', got {len(parts)} fields", line=lineno
            )
        u_tok, v_tok = parts[0], parts[1]
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad weight {parts[2]!r}", line=lineno)
        try:
            int(u_tok), int(v_tok)
        except ValueError:
            int_mode = False
        rows.append((lineno, u_tok, v_tok, w))
    labels = None
    if int_mode:
        triples = []
        for lineno, u_tok, v_tok, w in rows:
            u, v = int(u_tok), int(v_tok)
            if u < 0 or v < 0:
                raise GraphFormatError("negative vertex index", line=lineno)
            triples.append((lineno, u, v, w))
        n = max((max(u, v) for _, u, v, _ in triples), default=-1) + 1
    else:
        index: dict[str, int] = {}
        triples = []
        for lineno, u_tok, v_tok, w in rows:
            u = index.setdefault(u_tok, len(index))
            v = index.setdefault(v_tok, len(index))
            triples.append((lineno, u, v, w))
        n = len(index)
        labels = tuple(sorted(index, key=index.get))
    seen = set()
    edges = []
    for lineno, u, v, w in triples:
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", line=lineno)
        seen.add(key)
        edges.append((u, v, w))
    return Graph.from_edges(n, edges, labels)


def _parse_json(text: str) -> Graph:
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno)
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise GraphFormatError("JSON graph needs 'n' and 'edges' keys")
    seen = set()
    for e in doc["edges"]:
        u, v = int(e[0]), int(e[1])
        key = (min(u, v), max(u, v))
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}")
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}")
        seen.add(key)
    labels = doc.get("labels")
    return Graph.from_edges(int(doc["n"]), doc["edges"], labels)


def _graph6_unpack_n(data: bytes):
    """Decode the graph6 size prefix; returns (n, bytes_consumed)."""
    if not data:
        raise GraphFormatError("empty graph6 payload", byte=0)
    if data[0] != 126:  # '~'
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size prefix", byte=len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise GraphFormatError("truncated graph6 size prefix", byte=len(data))
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def _parse_graph6(text: str) -> Graph:
    line = ""
    for raw in text.splitlines():
        raw = raw.strip()
        if raw:
            line = raw
            break
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise GraphFormatError("no graph6 data found", line=1)
    data = line.encode("ascii", errors="replace")
    for pos, b in enumerate(data):
        if not (63 <= b <= 126):
            raise GraphFormatError(f"byte {b} outside graph6 alphabet", byte=pos)
    n, off = _graph6_unpack_n(data)
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    if len(data) - off != nchars:
        raise GraphFormatError(
            f"graph6 body for n={n} needs {nchars} chars, got {len(data) - off}",
            byte=off,
        )
    bits = []
    for b in data[off:]:
        val = b - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    for pos, extra in enumerate(bits[nbits:]):
        if extra:
            raise GraphFormatError("nonzero graph6 padding bit", byte=off + (nbits + pos) // 6)
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v, 1.0))
            k += 1
    return Graph.from_edges(n, edges)


def load_graph(source, fmt: str) -> Graph:
    """Parse a graph from a path or file-like object in the given format."""
    if fmt not in FORMATS:
        raise GraphFormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    text = _read_text(source)
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "json":
        return _parse_json(text)
    return _parse_graph6(text)


def _graph6_pack_n(n: int) -> bytes:
    if n < 0:
        raise GraphError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        out = [126, 126]
        for shift in range(30, -1, -6):
            out.append(((n >> shift) & 63) + 63)
        return bytes(out)
    raise GraphError("graph too large for graph6")


def _emit_graph6(g: Graph) -> str:
    if not g.is_unweighted:
        raise GraphError("graph6 cannot represent edge weights")
    present = {(u, v) for u, v, _ in g.edges}
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if (u, v) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = bytearray(_graph6_pack_n(g.n))
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(val + 63)
    return chars.decode("ascii")


def save_graph(g: Graph, target, fmt: str) -> None:
    """Write a graph to a path or file-like object in the given format."""
    if fmt not in FORMATS:
        raise GraphFormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "edge-list":
        weighted = not g.is_unweighted
        lines = []
        for u, v, w in g.edges:
            lines.append(f"{u} {v} {w!r}" if weighted else f"{u} {v}")
        text = "\n".join(lines) + ("\n" if lines else "")
    elif fmt == "json":
        import json

        doc = {"n": g.n, "edges": [[u, v, w] for u, v, w in g.edges]}
        if g.labels is not None:
            doc["labels"] = list(g.labels)
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = _emit_graph6(g) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Random d-regular simple graph via the pairing model.

    Within each attempt, clashing stubs are re-paired as long as a suitable
    pairing can still exist; a full restart only happens when the attempt is
    provably stuck.  Gives up after 1000 attempts.
    """
    if n < 1 or d < 0 or d >= n or (n * d) % 2 != 0:
        raise InfeasibleGraphError(f"no {d}-regular simple graph on {n} vertices")
    if d == 0:
        return Graph(n, ())
    rng = np.random.default_rng(seed)

    def suitable(edges, potential):
        if not potential:
            return True
        nodes = list(potential)
        for i, s1 in enumerate(nodes):
            for s2 in nodes[i + 1 :]:
                a, b = (s1, s2) if s1 < s2 else (s2, s1)
                if (a, b) not in edges:
                    return True
        return False

    def attempt():
        edges = set()
        stubs = list(range(n)) * d
        while stubs:
            potential = Counter()
            stubs = list(rng.permutation(stubs))
            it = iter(stubs)
            for s1, s2 in zip(it, it):
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    potential[s1] += 1
                    potential[s2] += 1
            if not suitable(edges, potential):
                return None
            stubs = [v for v, c in potential.items() for _ in range(c)]
        return edges

    for _ in range(1000):
        edges = attempt()
        if edges is not None:
            return Graph.from_edges(n, [(u, v, 1.0) for u, v in edges])
    raise GenerationError(f"pairing model failed for (n={n}, d={d}) after 1000 attempts")


def tree_like_graph(d: int, p: int) -> Graph:
    """Edge-rooted tree in which every vertex closer than distance p to the
    root edge has degree d and every vertex at distance exactly p is a leaf.

    Vertex count is 2 * sum_{i=0..p} (d-1)^i.  The root edge is edge id 0.
    """
    if d < 2 or p < 1:
        raise InfeasibleGraphError("tree-like instance needs d >= 2 and p >= 1")
    edges = [(0, 1, 1.0)]
    frontier = [0, 1]
    next_id = 2
    for level in range(p):
        new_frontier = []
        for v in frontier:
            for _ in range(d - 1):
                edges.append((v, next_id, 1.0))
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
    return Graph.from_edges(next_id, edges)


# ---------------------------------------------------------------------------
# Structure queries
# ---------------------------------------------------------------------------


def _bfs_dist(adj, sources) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    q = deque(sources)
    while q:
        v = q.popleft()
        for u, _, _ in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def girth(g: Graph):
    """Length of the shortest cycle; math.inf for forests."""
    best = math.inf
    adj = g.adjacency
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        q = deque([root])
        while q:
            v = q.popleft()
            if 2 * dist[v] >= best:
                continue
            for u, _, _ in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    q.append(u)
                elif u != parent[v]:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def triangle_count(g: Graph) -> int:
    nbr = [set(g.neighbors(v)) for v in range(g.n)]
    total = sum(len(nbr[u] & nbr[v]) for u, v, _ in g.edges)
    return total // 3


def neighborhood(g: Graph, e: int, r: int):
    """Radius-r surroundings of edge e.

    Returns (vertex set within distance r of either endpoint, edge-id set of
    edges with at least one endpoint within distance r-1, plus e itself).
    """
    if not (0 <= e < g.m):
        raise GraphError(f"edge id {e} out of range")
    if r < 0:
        raise GraphError("radius must be nonnegative")
    u0, v0, _ = g.edges[e]
    dist = _bfs_dist(g.adjacency, (u0, v0))
    verts = frozenset(v for v, dv in dist.items() if dv <= r)
    eids = {e}
    for eid, (a, b, _) in enumerate(g.edges):
        da = dist.get(a, math.inf)
        db = dist.get(b, math.inf)
        if min(da, db) <= r - 1:
            eids.add(eid)
    return verts, frozenset(eids)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return len(_bfs_dist(g.adjacency, (0,))) == g.n


def permuted(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertices: new vertex perm[v] plays the role of old vertex v."""
    return Graph.from_edges(g.n, [(perm[u], perm[v], w) for u, v, w in g.edges])


# ---------------------------------------------------------------------------
# Degree-preserving edge swap
# ---------------------------------------------------------------------------


def edge_swap_step(g: Graph, rng, max_retries: int = 100) -> SwapResult:
    """One degree-preserving rewiring step.

    Picks a random pair of edges on four distinct vertices and replaces it
    with a random valid alternative pairing of the same four vertices.  If a
    picked pair admits no valid rewiring, a fresh pair is picked, up to
    ``max_retries`` times; exhaustion returns the input graph with
    ``moved=False``.
    """
    if not g.is_unweighted:
        raise GraphError("edge swaps require an unweighted graph")
    if g.m < 2:
        raise GraphError("edge swaps need at least 2 edges")
    present = set(g.edge_ids)
    for _ in range(max_retries):
        i, j = rng.choice(g.m, size=2, replace=False)
        a, b, _ = g.edges[int(i)]
        c, d, _ = g.edges[int(j)]
        if len({a, b, c, d}) < 4:
            continue
        options = []
        for p1, p2 in (((a, c), (b, d)), ((a, d), (b, c))):
            p1 = (min(p1), max(p1))
            p2 = (min(p2), max(p2))
            if p1 not in present and p2 not in present:
                options.append((p1, p2))
        if not options:
            continue
        p1, p2 = options[int(rng.integers(len(options)))]
        edges = [(u, v) for u, v, _ in g.edges]
        edges[int(i)] = p1
        edges[int(j)] = p2
        return SwapResult(Graph.from_edges(g.n, edges), True)
    return SwapResult(g, False)


# ---------------------------------------------------------------------------
# Canonical labeling and isomorphism
# ---------------------------------------------------------------------------


def _vertex_profiles(n, adj):
    """Cheap isomorphism-invariant per-vertex signature used to seed refinement:
    (degree, distance profile, incident edge-label multiset)."""
    profs = []
    nbrsets = [set(u for u, _ in adj[v]) for v in range(n)]
    for v in range(n):
        dist = {v: 0}
        q = deque([v])
        while q:
            x = q.popleft()
            for u, _ in adj[x]:
                if u not in dist:
                    dist[u] = dist[x] + 1
                    q.append(u)
        profile = tuple(sorted(Counter(dist.values()).items()))
        tri = sum(1 for u, _ in adj[v] for w_, _ in adj[v] if u < w_ and u in nbrsets[w_])
        labels = tuple(sorted(lab for _, lab in adj[v]))
        profs.append((len(adj[v]), tri, profile, labels))
    return profs


def _refine(n, adj, colors):
    while True:
        sigs = []
        for v in range(n):
            nb = tuple(sorted((colors[u], lab) for u, lab in adj[v]))
            sigs.append((colors[v], nb))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _quotient(n, adj, colors, init_ranks):
    """Level invariant: color-class histogram, color-labeled edge multiset,
    and the initial rank carried by each refined color.  When the coloring is
    discrete this pins down the whole colored graph."""
    hist = tuple(sorted(Counter(colors).items()))
    edges = []
    for v in range(n):
        cv = colors[v]
        for u, lab in adj[v]:
            if v < u:
                cu = colors[u]
                edges.append((min(cv, cu), max(cv, cu), lab))
    carried = tuple(sorted(set(zip(colors, init_ranks))))
    return (hist, tuple(sorted(edges)), carried)


def _certificate(n, adj, colors, init_ranks):
    """Lexicographically minimal invariant sequence over the refinement tree.

    At each level only the branches whose refined quotient invariant attains
    the minimum can extend the minimal sequence, so the others are pruned.
    """
    colors = _refine(n, adj, colors)
    inv = _quotient(n, adj, colors, init_ranks)
    target = None
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        return (inv,)
    bump = n + 1
    children = {}
    for v in target:
        branch = list(colors)
        branch[v] = bump
        branch = _refine(n, adj, branch)
        children.setdefault(_quotient(n, adj, branch, init_ranks), []).append(branch)
    best_inv = min(children)
    best_tail = None
    for branch in children[best_inv]:
        tail = _certificate(n, adj, branch, init_ranks)
        if best_tail is None or tail < best_tail:
            best_tail = tail
    return (inv,) + best_tail


def canonical_certificate(g: Graph, vertex_colors: Sequence | None = None):
    """Canonical form of a graph with optional semantic vertex colors.

    Two graphs have equal certificates exactly when there is an isomorphism
    between them that preserves the given vertex colors and edge weights.
    The certificate embeds the color values, so differently-colored graphs
    never collide.
    """
    n = g.n
    adj = [[(u, w) for u, _, w in g.adjacency[v]] for v in range(n)]
    profs = _vertex_profiles(n, adj)
    if vertex_colors is None:
        seed_values = [()] * n
        combined = profs
    else:
        seed_values = [tuple(c) if isinstance(c, (tuple, list)) else (c,) for c in vertex_colors]
        combined = [(seed_values[v], profs[v]) for v in range(n)]
    order = {s: i for i, s in enumerate(sorted(set(combined)))}
    colors = [order[s] for s in combined]
    value_ranks = {s: i for i, s in enumerate(sorted(set(seed_values)))}
    init_ranks = [value_ranks[s] for s in seed_values]
    head = (n, tuple(sorted(seed_values)))
    return (head,) + _certificate(n, adj, colors, init_ranks)


def _graph_invariant(g: Graph):
    """Hashable isomorphism-invariant fingerprint for bucketing."""
    adj = [[(u, w) for u, _, w in g.adjacency[v]] for v in range(g.n)]
    profs = _vertex_profiles(g.n, adj)
    return (g.n, g.m, tuple(sorted(profs)))


def _backtrack_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism search: candidate filtering by refined vertex
    signatures, then depth-first extension of a partial vertex map."""
    n = g1.n
    adj1 = [[(u, w) for u, _, w in g1.adjacency[v]] for v in range(n)]
    adj2 = [[(u, w) for u, _, w in g2.adjacency[v]] for v in range(n)]
    p1 = _vertex_profiles(n, adj1)
    p2 = _vertex_profiles(n, adj2)
    if sorted(p1) != sorted(p2):
        return False
    nbr1 = [set(g1.neighbors(v)) for v in range(n)]
    nbr2 = [set(g2.neighbors(v)) for v in range(n)]
    by_prof: dict = {}
    for v in range(n):
        by_prof.setdefault(p2[v], []).append(v)

    # order g1's vertices to keep the frontier connected where possible,
    # rarest profile first
    rarity = {prof: len(vs) for prof, vs in by_prof.items()}
    order = []
    placed = set()
    remaining = set(range(n))
    while remaining:
        adjacent = [v for v in remaining if nbr1[v] & placed]
        pool = adjacent or list(remaining)
        v = min(pool, key=lambda x: (rarity[p1[x]], -len(nbr1[x]), x))
        order.append(v)
        placed.add(v)
        remaining.remove(v)

    mapping = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        v = order[i]
        for w in by_prof[p1[v]]:
            if used[w]:
                continue
            ok = True
            for u in order[:i]:
                if (u in nbr1[v]) != (mapping[u] in nbr2[w]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    return extend(0)


def are_isomorphic(g1: Graph, g2: Graph, node_limit: int = 64) -> bool:
    """Exact isomorphism test for unweighted graphs (backtracking search)."""
    if not (g1.is_unweighted and g2.is_unweighted):
        raise GraphError("isomorphism test requires unweighted graphs")
    if max(g1.n, g2.n) > node_limit:
        raise GraphError(f"graphs above {node_limit} vertices not supported")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees) != sorted(g2.degrees):
        return False
    return _backtrack_isomorphic(g1, g2)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of regular graphs (small n)
# ---------------------------------------------------------------------------


def _circulant_regular(n: int, d: int) -> Graph:
    edges = set()
    for k in range(1, d // 2 + 1):
        for i in range(n):
            j = (i + k) % n
            edges.add((min(i, j), max(i, j)))
    if d % 2 == 1:
        for i in range(n // 2):
            edges.add((i, i + n // 2))
    g = Graph.from_edges(n, [(u, v, 1.0) for u, v in edges])
    if any(deg != d for deg in g.degrees):
        raise GenerationError(f"no circulant start for (n={n}, d={d})")
    return g


def enumerate_regular_graphs(n: int, d: int, connected_only: bool = False) -> list[Graph]:
    """All d-regular simple graphs on n vertices up to isomorphism.

    Exhaustive search over the swap-move graph: two-edge rewirings connect the
    set of simple graphs with a fixed degree sequence, so a breadth-first
    closure from any start reaches every isomorphism class.  Intended for
    small n (the state space grows very quickly).
    """
    if (n * d) % 2 != 0 or d >= n or d < 1:
        raise InfeasibleGraphError(f"no {d}-regular simple graph on {n} vertices")
    start = _circulant_regular(n, d)
    buckets: dict = {}
    seen_labeled = set()
    reps: list[Graph] = []
    queue = deque()

    def admit(g: Graph):
        key = g.edges
        if key in seen_labeled:
            return
        seen_labeled.add(key)
        inv = _graph_invariant(g)
        bucket = buckets.setdefault(inv, [])
        if any(_backtrack_isomorphic(g, member) for member in bucket):
            return
        bucket.append(g)
        reps.append(g)
        queue.append(g)

    admit(start)
    while queue:
        g = queue.popleft()
        present = set(g.edge_ids)
        pairs = [(u, v) for u, v, _ in g.edges]
        for i in range(g.m):
            a, b = pairs[i]
            for j in range(i + 1, g.m):
                c, dd = pairs[j]
                if len({a, b, c, dd}) < 4:
                    continue
                for p1, p2 in (((a, c), (b, dd)), ((a, dd), (b, c))):
                    p1 = (min(p1), max(p1))
                    p2 = (min(p2), max(p2))
                    if p1 in present or p2 in present:
                        continue
                    edges = list(pairs)
                    edges[i] = p1
                    edges[j] = p2
                    admit(Graph.from_edges(n, edges))
    if connected_only:
        reps = [g for g in reps if is_connected(g)]
    return reps
