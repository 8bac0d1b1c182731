"""Dense tensors over binary indices, factor networks, and contraction.

A :class:`TensorNetwork` is a factor hypergraph: an index shared by k tensors
is a single joint summation variable, not a pairwise bond.  Contraction
evaluates the sum over all assignments of the closed indices of the product
of tensor entries, leaving ``open_indices`` free.

Evaluation is split into a structure-only planning phase (the expensive part,
done once per network shape) and a cheap replay phase that can be reused for
any tensor values on the same wiring.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    PlanMismatchError,
    RankCapError,
    TensorNetworkError,
    TooManyIndicesError,
)

DEFAULT_RANK_CAP = 30


@dataclass(frozen=True)
class Tensor:
    """Dense complex tensor over binary indices.

    ``data`` has shape ``(2,) * len(indices)`` in index order; it is treated
    as immutable once wrapped.
    """

    indices: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise TensorNetworkError(f"repeated index in tensor: {self.indices}")
        expected = (2,) * len(self.indices)
        if tuple(self.data.shape) != expected:
            raise TensorNetworkError(
                f"tensor data shape {self.data.shape} != {expected}"
            )

    @property
    def rank(self) -> int:
        return len(self.indices)


def make_tensor(indices, values) -> Tensor:
    arr = np.asarray(values, dtype=np.complex128).reshape((2,) * len(indices))
    return Tensor(tuple(indices), arr)


@dataclass(frozen=True)
class TensorNetwork:
    tensors: tuple[Tensor, ...]
    open_indices: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.tensors:
            raise TensorNetworkError("empty tensor network")
        all_idx = set()
        for t in self.tensors:
            all_idx.update(t.indices)
        missing = set(self.open_indices) - all_idx
        if missing:
            raise TensorNetworkError(f"open indices {missing} not present")
        if len(set(self.open_indices)) != len(self.open_indices):
            raise TensorNetworkError("repeated open index")

    @cached_property
    def index_multiplicity(self) -> dict[int, int]:
        counts: Counter = Counter()
        for t in self.tensors:
            counts.update(t.indices)
        return dict(counts)

    def structure_fingerprint(self) -> str:
        payload = repr(
            (tuple(t.indices for t in self.tensors), self.open_indices)
        ).encode()
        return hashlib.sha1(payload).hexdigest()


@dataclass(frozen=True)
class PlanStep:
    a: int
    b: int
    out: int
    result_indices: tuple[int, ...]


@dataclass(frozen=True)
class ContractionPlan:
    steps: tuple[PlanStep, ...]
    est_flops: float
    est_max_intermediate_rank: int
    fingerprint: str

    def to_json(self) -> dict:
        return {
            "steps": [[s.a, s.b, s.out, list(s.result_indices)] for s in self.steps],
            "est_flops": self.est_flops,
            "est_max_intermediate_rank": self.est_max_intermediate_rank,
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ContractionPlan":
        steps = tuple(
            PlanStep(a, b, out, tuple(res)) for a, b, out, res in doc["steps"]
        )
        return cls(
            steps,
            float(doc["est_flops"]),
            int(doc["est_max_intermediate_rank"]),
            doc["fingerprint"],
        )


# ---------------------------------------------------------------------------
# Planning
# ---------------------------------------------------------------------------


def _greedy_plan(slot_indices, open_tuple, rank_cap, rng=None, noise=0.0):
    """One greedy pass.  Returns (steps, est_flops, max_rank).

    At each step the merge minimizing the rank of the result is taken, with
    ties broken on step cost and then on a stable structural key.  ``rng``
    and ``noise`` perturb the primary objective for randomized restarts.
    """
    open_set = frozenset(open_tuple)
    nslots = len(slot_indices)
    alive: dict[int, frozenset] = {i: frozenset(ix) for i, ix in enumerate(slot_indices)}
    owners: dict[int, set] = {}
    for slot, ix in alive.items():
        for i in ix:
            owners.setdefault(i, set()).add(slot)

    def result_of(a, b):
        union = alive[a] | alive[b]
        dead = {i for i in union if i not in open_set and owners[i] <= {a, b}}
        return union, frozenset(union - dead)

    def key_of(a, b):
        union, res = result_of(a, b)
        jitter = rng.random() * noise if rng is not None else 0.0
        return (len(res) + jitter, len(union), tuple(sorted(union)), a, b), union, res

    heap = []

    def push_pairs(slots_a):
        seen = set()
        for a in slots_a:
            for i in alive[a]:
                for b in owners[i]:
                    if b == a:
                        continue
                    pa, pb = (a, b) if a < b else (b, a)
                    if (pa, pb) in seen:
                        continue
                    seen.add((pa, pb))
                    key, union, res = key_of(pa, pb)
                    heapq.heappush(heap, (key, pa, pb))

    push_pairs(list(alive))
    steps = []
    est_flops = 0.0
    max_rank = 0
    next_slot = nslots

    while len(alive) > 1:
        entry = None
        while heap:
            key, a, b = heapq.heappop(heap)
            if a in alive and b in alive:
                entry = (a, b)
                break
        if entry is None:
            # disconnected components: outer-merge the two smallest slots
            order = sorted(alive, key=lambda s: (len(alive[s]), s))
            entry = (order[0], order[1])
        a, b = entry
        union, res = result_of(a, b)
        if len(res) > rank_cap:
            raise RankCapError(len(res), rank_cap)
        est_flops += float(2 ** len(union))
        max_rank = max(max_rank, len(res))
        out = next_slot
        next_slot += 1
        for i in alive[a]:
            owners[i].discard(a)
        for i in alive[b]:
            owners[i].discard(b)
        del alive[a], alive[b]
        alive[out] = res
        for i in res:
            owners.setdefault(i, set()).add(out)
        steps.append(PlanStep(a, b, out, tuple(sorted(res))))
        push_pairs([out])

    # mirror the reorder/reduce pass contract() makes on the last tensor
    final = steps[-1].result_indices if steps else tuple(slot_indices[0])
    if final != open_tuple:
        est_flops += float(2 ** len(final))
    return steps, est_flops, max_rank


def plan_contraction(
    net: TensorNetwork,
    effort: str = "fast",
    *,
    seed: int = 0,
    rank_cap: int = DEFAULT_RANK_CAP,
    restarts: int = 8,
) -> ContractionPlan:
    """Choose a pairwise merge order for the network.

    ``fast`` runs one deterministic greedy pass; ``thorough`` adds randomized
    restarts and keeps the cheapest plan found.  Raises
    :class:`RankCapError` when every attempted order would allocate an
    intermediate with more than ``rank_cap`` indices.
    """
    if effort not in ("fast", "thorough"):
        raise TensorNetworkError(f"unknown planner effort {effort!r}")
    slot_indices = [t.indices for t in net.tensors]
    attempts = []
    failures = []
    try:
        attempts.append(_greedy_plan(slot_indices, net.open_indices, rank_cap))
    except RankCapError as exc:
        failures.append(exc)
    if effort == "thorough":
        rng = np.random.default_rng(seed)
        for _ in range(restarts):
            try:
                attempts.append(
                    _greedy_plan(
                        slot_indices, net.open_indices, rank_cap, rng=rng, noise=1.5
                    )
                )
            except RankCapError as exc:
                failures.append(exc)
    if not attempts:
        worst = min(failures, key=lambda e: e.rank)
        raise RankCapError(worst.rank, rank_cap)
    steps, est_flops, max_rank = min(attempts, key=lambda t: (t[1], t[2]))
    return ContractionPlan(
        tuple(steps), est_flops, max_rank, net.structure_fingerprint()
    )


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


def contract(net: TensorNetwork, plan: ContractionPlan, stats: dict | None = None) -> Tensor:
    """Replay a plan on a network with the same wiring.

    Tensor values are free to differ from the network the plan was built on;
    the index structure must match exactly.
    """
    if plan.fingerprint != net.structure_fingerprint():
        raise PlanMismatchError("plan does not match network structure")
    slots: dict[int, tuple[np.ndarray, tuple[int, ...]]] = {
        i: (t.data, t.indices) for i, t in enumerate(net.tensors)
    }
    mults = 0.0
    for step in plan.steps:
        da, ia = slots.pop(step.a)
        db, ib = slots.pop(step.b)
        mults += float(2 ** len(set(ia) | set(ib)))
        out = np.einsum(da, list(ia), db, list(ib), list(step.result_indices))
        slots[step.out] = (out, step.result_indices)
    if len(slots) != 1:
        raise PlanMismatchError("plan does not consume every tensor")
    ((data, indices),) = slots.values()
    if indices != net.open_indices:
        mults += float(2 ** len(indices))
        data = np.einsum(data, list(indices), list(net.open_indices))
        indices = net.open_indices
    if stats is not None:
        stats["multiplies"] = stats.get("multiplies", 0.0) + mults
    out = np.asarray(data, dtype=np.complex128).reshape((2,) * len(net.open_indices))
    return Tensor(net.open_indices, out)


def brute_force_contract(net: TensorNetwork, max_indices: int = 24) -> Tensor:
    """Exact sum over all assignments of the closed indices.

    Independent of the planner: builds the full product array by broadcasting
    and reduces it, so it is usable as an oracle for :func:`contract`.
    """
    all_indices = sorted(net.index_multiplicity)
    k = len(all_indices)
    if k > max_indices:
        raise TooManyIndicesError(f"{k} indices exceed the brute-force limit {max_indices}")
    axis_of = {ix: a for a, ix in enumerate(all_indices)}
    full = np.ones((2,) * k, dtype=np.complex128)
    for t in net.tensors:
        axes = [axis_of[i] for i in t.indices]
        perm = sorted(range(len(axes)), key=lambda j: axes[j])
        arr = np.transpose(t.data, perm)
        shape = [1] * k
        for j in perm:
            shape[axes[j]] = 2
        full = full * arr.reshape(shape)
    closed_axes = tuple(a for ix, a in axis_of.items() if ix not in net.open_indices)
    reduced = full.sum(axis=closed_axes) if closed_axes else full
    kept = [ix for ix in all_indices if ix in net.open_indices]
    perm = [kept.index(ix) for ix in net.open_indices]
    reduced = np.transpose(reduced, perm) if kept else reduced
    out = np.asarray(reduced, dtype=np.complex128).reshape((2,) * len(net.open_indices))
    return Tensor(net.open_indices, np.ascontiguousarray(out) if out.ndim else out)
