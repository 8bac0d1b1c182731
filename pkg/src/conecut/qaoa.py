"""Per-edge lightcone tensor networks for the MAX-CUT energy function.

For one edge observable at depth p, only vertices within distance p of the
edge's endpoints and the gates that act on them can influence the
expectation value; everything else cancels.  The engine builds one tensor
network per edge from that causal cone, applying three rewrites that keep
the networks small:

* each qubit worldline is a chain of binary variables linked only by the
  non-diagonal X rotations (a 2x2 tensor per rotation);
* every diagonal factor (phase gates and the observable itself) attaches to
  the worldline variables it touches instead of occupying gate tensors, so
  an index may be shared by many factors (hyperedge semantics);
* the uniform-superposition boundary states become free summation of the
  end variables, with the 1/2-per-qubit normalization collected into a
  single scalar applied after contraction.

Cones are deduplicated by a canonical form of the distance-labeled cone
graph, so structurally identical edges share one contraction per query, and
contraction orders are planned once per cone shape and replayed for every
angle sequence.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import (
    ConecutError,
    DepthMismatchError,
    EngineNumericsError,
    GraphError,
    QubitLimitError,
    RankCapError,
)
from .graph import Graph, canonical_certificate
from .qaoa_types import AngleSequence, EnergyResult
from .tensor import (
    ContractionPlan,
    Tensor,
    TensorNetwork,
    contract,
    plan_contraction,
)

CACHE_SCHEMA = "conecut-plan-cache-v1"

# cones at most this large may fall back to per-cone state evolution
AUTO_SV_MAX_QUBITS = 20
MAX_MERGEABLE_CONE = 64


class SlotSpec(NamedTuple):
    kind: str  # "rot" | "phase" | "obs"
    conj: bool
    layer: int  # 0-based layer for rot/phase; -1 for obs
    edge: int  # parent edge id for phase/obs; -1 for rot
    weight: float
    idx: tuple[int, ...]


@dataclass(frozen=True)
class LightconeTemplate:
    """Angle-independent skeleton of one edge term's tensor network."""

    edge: int
    p: int
    cone_vertices: tuple[int, ...]
    distances: tuple[int, ...]
    cone_edges: tuple[int, ...]
    slots: tuple[SlotSpec, ...]
    norm: float
    structure_key: str

    @property
    def cone_size(self) -> int:
        return len(self.cone_vertices)


def lightcone(g: Graph, e: int, p: int) -> LightconeTemplate:
    """Build the depth-p causal-cone template of edge ``e``."""
    if p < 1:
        raise ConecutError("depth must be >= 1")
    if not (0 <= e < g.m):
        raise GraphError(f"edge id {e} out of range")
    u0, v0, w0 = g.edges[e]

    # bounded BFS from both endpoints
    dist = {u0: 0, v0: 0}
    frontier = [u0, v0]
    for step in range(1, p + 1):
        nxt = []
        for v in frontier:
            for u, _, _ in g.adjacency[v]:
                if u not in dist:
                    dist[u] = step
                    nxt.append(u)
        frontier = nxt
    cone_vertices = tuple(sorted(dist))
    distances = tuple(dist[v] for v in cone_vertices)

    cone_edges = tuple(
        eid
        for eid, (a, b, _) in enumerate(g.edges)
        if min(dist.get(a, p + 1), dist.get(b, p + 1)) <= p - 1
    )

    # worldline variables: vertex q gets 2*k_q + 1 of them, k_q rotations
    # per side, where k_q = p - dist(q)
    k = {q: p - dist[q] for q in cone_vertices}
    var: dict[tuple[int, int], int] = {}
    for q in cone_vertices:
        for t in range(2 * k[q] + 1):
            var[(q, t)] = len(var)

    def ket_at(x: int, layer: int) -> int:  # layer is 0-based
        return var[(x, min(layer, k[x]))]

    def bra_at(x: int, layer: int) -> int:
        return var[(x, 2 * k[x] - min(layer, k[x]))]

    slots: list[SlotSpec] = []
    for layer in range(p):
        for eid in cone_edges:
            a, b, w = g.edges[eid]
            if min(dist[a], dist[b]) <= p - 1 - layer:
                slots.append(
                    SlotSpec("phase", False, layer, eid, w, (ket_at(a, layer), ket_at(b, layer)))
                )
        for q in cone_vertices:
            if dist[q] <= p - 1 - layer:
                slots.append(
                    SlotSpec("rot", False, layer, -1, 1.0, (var[(q, layer)], var[(q, layer + 1)]))
                )
    slots.append(SlotSpec("obs", False, -1, e, w0, (var[(u0, k[u0])], var[(v0, k[v0])])))
    for layer in range(p - 1, -1, -1):
        for q in cone_vertices:
            if dist[q] <= p - 1 - layer:
                t = 2 * k[q] - layer
                slots.append(SlotSpec("rot", True, layer, -1, 1.0, (var[(q, t - 1)], var[(q, t)])))
        for eid in cone_edges:
            a, b, w = g.edges[eid]
            if min(dist[a], dist[b]) <= p - 1 - layer:
                slots.append(
                    SlotSpec("phase", True, layer, eid, w, (bra_at(a, layer), bra_at(b, layer)))
                )

    if len(cone_vertices) <= MAX_MERGEABLE_CONE:
        local = {v: i for i, v in enumerate(cone_vertices)}
        cone_graph = Graph.from_edges(
            len(cone_vertices),
            [(local[g.edges[eid][0]], local[g.edges[eid][1]], g.edges[eid][2]) for eid in cone_edges],
        )
        cert = canonical_certificate(cone_graph, vertex_colors=distances)
        key = hashlib.sha1(repr((p, cert)).encode()).hexdigest()
    else:
        key = f"unmerged-edge-{e}"

    return LightconeTemplate(
        edge=e,
        p=p,
        cone_vertices=cone_vertices,
        distances=distances,
        cone_edges=cone_edges,
        slots=tuple(slots),
        norm=math.ldexp(1.0, -len(cone_vertices)),
        structure_key=key,
    )


class _MatrixTable:
    """Per-query cache of the small factor matrices."""

    def __init__(self, a: AngleSequence):
        self.a = a
        self._memo: dict = {}

    def get(self, slot: SlotSpec, weight: float) -> np.ndarray:
        key = (slot.kind, slot.conj, slot.layer, weight)
        arr = self._memo.get(key)
        if arr is not None:
            return arr
        if slot.kind == "rot":
            beta = self.a.beta[slot.layer]
            c, s = math.cos(beta), math.sin(beta)
            off = 1j * s if slot.conj else -1j * s
            arr = np.array([[c, off], [off, c]], dtype=np.complex128)
        elif slot.kind == "phase":
            gamma = self.a.gamma[slot.layer]
            sign = 1j if slot.conj else -1j
            ph = np.exp(sign * gamma * weight)
            arr = np.array([[1.0, ph], [ph, 1.0]], dtype=np.complex128)
        else:  # obs
            arr = np.array([[0.0, weight], [weight, 0.0]], dtype=np.complex128)
        self._memo[key] = arr
        return arr


def instantiate(t: LightconeTemplate, a: AngleSequence, weights=None) -> TensorNetwork:
    """Fill a template's skeleton with the tensors of one angle sequence.

    ``weights`` optionally overrides edge weights by parent edge id.
    """
    if a.p != t.p:
        raise DepthMismatchError(f"angle depth {a.p} != template depth {t.p}")
    table = _MatrixTable(a)
    tensors = []
    for slot in t.slots:
        w = slot.weight
        if weights is not None and slot.edge >= 0:
            w = float(weights[slot.edge])
        tensors.append(Tensor(slot.idx, table.get(slot, w)))
    return TensorNetwork(tuple(tensors))


def dedupe(templates) -> dict[str, list[int]]:
    """Group edge ids by shared cone structure key.

    Sound by construction: keys are canonical forms of the distance-labeled,
    weight-labeled cone graphs, so only structurally identical cones merge.
    """
    groups: dict[str, list[int]] = {}
    for t in templates:
        groups.setdefault(t.structure_key, []).append(t.edge)
    return groups


@dataclass(frozen=True)
class QueryOptions:
    """Knobs of :func:`energy_query`; also the engine cache key fields."""

    method: str = "auto"  # auto | tensor-network | state-vector
    threads: int | None = None
    cache_path: str | None = None
    effort: str = "fast"
    rank_cap: int = 30
    dedup: bool = True
    edges: tuple[int, ...] | None = None
    sv_qubit_limit: int = 26

    def __post_init__(self):
        if self.method not in ("auto", "tensor-network", "state-vector"):
            raise ConecutError(f"unknown method {self.method!r}")
        if self.edges is not None:
            object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))


@dataclass
class _Group:
    template: LightconeTemplate
    members: list[int]
    plan: ContractionPlan | None = None
    plan_error: RankCapError | None = None
    use_sv: bool = False
    subgraph: Graph | None = None
    local_edge: int = -1


def _cone_subgraph(g: Graph, t: LightconeTemplate) -> tuple[Graph, int]:
    """Induced subgraph on the cone vertices plus the local id of the root
    edge; evolving it fully gives the same root-edge energy as the cone."""
    local = {v: i for i, v in enumerate(t.cone_vertices)}
    edges = []
    for u, v, w in g.edges:
        if u in local and v in local:
            edges.append((local[u], local[v], w))
    sub = Graph.from_edges(len(local), edges)
    u0, v0, _ = g.edges[t.edge]
    a, b = sorted((local[u0], local[v0]))
    return sub, sub.edge_ids[(a, b)]


class LightconeEngine:
    """Preprocessed per-edge templates and plans for one (graph, depth).

    Building is the expensive phase; :meth:`energy` replays cached plans and
    is cheap, so optimizers should hold one engine and query it repeatedly.
    """

    def __init__(self, g: Graph, p: int, options: QueryOptions = QueryOptions()):
        t0 = time.perf_counter()
        self.graph = g
        self.p = p
        self.options = options
        self.templates = [lightcone(g, e, p) for e in range(g.m)]
        if options.dedup:
            grouped = dedupe(self.templates)
        else:
            grouped = {f"edge-{t.edge}": [t.edge] for t in self.templates}
        self.groups: list[_Group] = []
        self.group_of_edge: dict[int, int] = {}
        cached_plans = self._load_cache()
        for key, members in grouped.items():
            grp = _Group(template=self.templates[members[0]], members=members)
            plan_doc = cached_plans.get(key)
            if plan_doc is not None:
                grp.plan = ContractionPlan.from_json(plan_doc)
            else:
                try:
                    grp.plan = plan_contraction(
                        instantiate(grp.template, _probe_angles(p)),
                        options.effort,
                        rank_cap=options.rank_cap,
                    )
                except RankCapError as exc:
                    grp.plan_error = RankCapError(
                        exc.rank,
                        exc.cap,
                        edge=grp.template.edge,
                        cone_size=grp.template.cone_size,
                    )
            self._choose_method(grp)
            for e in members:
                self.group_of_edge[e] = len(self.groups)
            self.groups.append(grp)
        self._save_cache()
        self.preprocess_seconds = time.perf_counter() - t0

    # -- method selection ---------------------------------------------------

    def _choose_method(self, grp: _Group) -> None:
        forced_tn = self.options.method == "tensor-network"
        cone = grp.template.cone_size
        if forced_tn:
            grp.use_sv = False
            return
        if grp.plan is None:
            grp.use_sv = cone <= AUTO_SV_MAX_QUBITS
            return
        sv_cost = 8.0 * self.p * 2.0**cone
        grp.use_sv = cone <= AUTO_SV_MAX_QUBITS and grp.plan.est_flops > sv_cost

    # -- plan cache ----------------------------------------------------------

    def _cache_meta(self) -> dict:
        return {
            "schema": CACHE_SCHEMA,
            "graph": self.graph.content_key(),
            "p": self.p,
            "effort": self.options.effort,
            "rank_cap": self.options.rank_cap,
        }

    def _load_cache(self) -> dict:
        path = self.options.cache_path
        if not path or not os.path.exists(path):
            return {}
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return {}
        meta = self._cache_meta()
        if all(doc.get(k) == v for k, v in meta.items()):
            return doc.get("plans", {})
        return {}

    def _save_cache(self) -> None:
        path = self.options.cache_path
        if not path:
            return
        doc = self._cache_meta()
        doc["plans"] = {
            grp.template.structure_key: grp.plan.to_json()
            for grp in self.groups
            if grp.plan is not None
        }
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)

    # -- evaluation -----------------------------------------------------------

    def _group_value(self, grp: _Group, a: AngleSequence) -> float:
        if grp.use_sv:
            if grp.subgraph is None:
                grp.subgraph, grp.local_edge = _cone_subgraph(self.graph, grp.template)
            from .statevec import energy_sv

            res = energy_sv(grp.subgraph, a, edges=[grp.local_edge])
            return res.total
        if grp.plan is None:
            raise grp.plan_error
        net = instantiate(grp.template, a)
        raw = complex(contract(net, grp.plan).data[()])
        val = raw * grp.template.norm
        w = abs(self.graph.edges[grp.template.edge][2])
        if abs(val.imag) > 1e-9 * max(1.0, w):
            raise EngineNumericsError(
                f"edge {grp.template.edge}: imaginary residue {val.imag:.3e}"
            )
        return val.real

    def energy(self, a: AngleSequence, edges=None, threads: int | None = None) -> EnergyResult:
        if a.p != self.p:
            raise DepthMismatchError(f"angle depth {a.p} != engine depth {self.p}")
        t0 = time.perf_counter()
        if edges is None:
            edges = self.options.edges
        selected = list(range(self.graph.m)) if edges is None else [int(e) for e in edges]
        for e in selected:
            if not (0 <= e < self.graph.m):
                raise GraphError(f"edge id {e} out of range")
        needed = sorted({self.group_of_edge[e] for e in selected})
        if threads is None:
            threads = self.options.threads
        if threads and threads > 1 and len(needed) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                values = list(pool.map(lambda gi: self._group_value(self.groups[gi], a), needed))
        else:
            values = [self._group_value(self.groups[gi], a) for gi in needed]
        by_group = dict(zip(needed, values))
        per_edge = tuple(by_group[self.group_of_edge[e]] for e in selected)
        total = float(sum(per_edge))
        weight = sum(self.graph.edges[e][2] for e in selected)
        return EnergyResult(
            total=total,
            per_edge=per_edge,
            edge_ids=tuple(selected),
            ratio=total / weight if weight else 0.0,
            query_seconds=time.perf_counter() - t0,
            method="tensor-network",
        )


def _probe_angles(p: int) -> AngleSequence:
    return AngleSequence((0.5,) * p, (0.5,) * p)


@lru_cache(maxsize=8)
def _engine_for(g: Graph, p: int, method: str, cache_path, effort: str, rank_cap: int, dedup: bool):
    opts = QueryOptions(
        method=method, cache_path=cache_path, effort=effort, rank_cap=rank_cap, dedup=dedup
    )
    return LightconeEngine(g, p, opts)


def energy_query(g: Graph, a: AngleSequence, opts: QueryOptions = QueryOptions()) -> EnergyResult:
    """Energy of the selected edge observables at one angle sequence.

    Recently used engines (templates plus plans) are kept alive, so repeated
    queries against the same graph and depth pay preprocessing once.
    """
    if g.n < 1:
        raise GraphError("empty graph")
    if g.m == 0:
        method = "state-vector" if opts.method == "state-vector" else "tensor-network"
        return EnergyResult(0.0, (), (), 0.0, 0.0, method)
    if opts.method == "state-vector":
        from .statevec import energy_sv

        return energy_sv(g, a, edges=opts.edges, qubit_limit=opts.sv_qubit_limit)
    engine = _engine_for(
        g, a.p, opts.method, opts.cache_path, opts.effort, opts.rank_cap, opts.dedup
    )
    return engine.energy(a, edges=opts.edges, threads=opts.threads)
