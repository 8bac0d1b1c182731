import itertools

import numpy as np
import pytest

from conecut.errors import (
    PlanMismatchError,
    RankCapError,
    TensorNetworkError,
    TooManyIndicesError,
)
from conecut.tensor import (
    ContractionPlan,
    Tensor,
    TensorNetwork,
    brute_force_contract,
    contract,
    make_tensor,
    plan_contraction,
)


def naive_sum_over_assignments(net):
    """Oracle for the oracle: literal dict-based enumeration of every
    assignment of every index, no numpy reductions involved."""
    all_idx = sorted({i for t in net.tensors for i in t.indices})
    out_shape = (2,) * len(net.open_indices)
    out = np.zeros(out_shape, dtype=np.complex128)
    for assignment in itertools.product((0, 1), repeat=len(all_idx)):
        env = dict(zip(all_idx, assignment))
        prod = 1.0 + 0.0j
        for t in net.tensors:
            prod *= t.data[tuple(env[i] for i in t.indices)]
        pos = tuple(env[i] for i in net.open_indices)
        out[pos] += prod
    return out


def random_network(rng, max_tensors=10, max_indices=16, open_frac=0.2):
    n_idx = int(rng.integers(2, max_indices + 1))
    n_ten = int(rng.integers(2, max_tensors + 1))
    tensors = []
    used = set()
    for _ in range(n_ten):
        rank = int(rng.integers(1, min(4, n_idx) + 1))
        idx = tuple(int(i) for i in rng.choice(n_idx, size=rank, replace=False))
        used.update(idx)
        data = rng.normal(size=(2,) * rank) + 1j * rng.normal(size=(2,) * rank)
        tensors.append(Tensor(idx, data.astype(np.complex128)))
    # every declared index must appear somewhere; attach leftovers as vectors
    for i in set(range(n_idx)) - used:
        data = rng.normal(size=2) + 1j * rng.normal(size=2)
        tensors.append(Tensor((i,), data.astype(np.complex128)))
    open_indices = tuple(
        int(i) for i in sorted(rng.choice(n_idx, size=int(rng.integers(0, 3)), replace=False))
        if rng.random() < open_frac * 3
    )
    return TensorNetwork(tuple(tensors), tuple(open_indices))


def rel_err(a, b):
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-30)
    return np.max(np.abs(a - b)) / scale


class TestTypes:
    def test_tensor_shape_checked(self):
        with pytest.raises(TensorNetworkError):
            Tensor((0, 1), np.zeros((2, 3), dtype=complex))

    def test_tensor_repeated_index(self):
        with pytest.raises(TensorNetworkError):
            Tensor((0, 0), np.zeros((2, 2), dtype=complex))

    def test_network_open_index_must_exist(self):
        t = make_tensor((0,), [1, 2])
        with pytest.raises(TensorNetworkError):
            TensorNetwork((t,), (5,))

    def test_multiplicity_counts_hyperedges(self):
        t1 = make_tensor((0, 1), np.eye(2))
        t2 = make_tensor((0, 2), np.eye(2))
        t3 = make_tensor((0,), [1, 1])
        net = TensorNetwork((t1, t2, t3))
        assert net.index_multiplicity == {0: 3, 1: 1, 2: 1}


class TestBruteForce:
    def test_against_naive_enumeration(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            net = random_network(rng, max_tensors=5, max_indices=8)
            got = brute_force_contract(net).data
            want = naive_sum_over_assignments(net)
            assert rel_err(got, want) < 1e-13

    def test_too_many_indices(self):
        tensors = tuple(make_tensor((i, i + 1), np.eye(2)) for i in range(25))
        with pytest.raises(TooManyIndicesError):
            brute_force_contract(TensorNetwork(tensors))


class TestPlanning:
    def test_two_tensor_single_step(self):
        a = make_tensor((0, 1), np.eye(2))
        b = make_tensor((1, 2), np.eye(2))
        net = TensorNetwork((a, b), (0, 2))
        plan = plan_contraction(net)
        assert len(plan.steps) == 1
        assert plan.est_flops == 8.0  # 2*2*2 for the only possible merge
        assert plan.est_max_intermediate_rank == 2

    def test_chain_cost_linear(self):
        # matrices in a chain with both dangling ends closed: greedy folds
        # inward and every intermediate is a vector
        rng = np.random.default_rng(1)
        for k in (4, 8, 16):
            tensors = tuple(
                make_tensor((i, i + 1), rng.normal(size=(2, 2))) for i in range(k)
            )
            net = TensorNetwork(tensors)
            plan = plan_contraction(net)
            assert plan.est_max_intermediate_rank == 1
            assert plan.est_flops <= 16.0 * k

    def test_rank_cap_violated_by_construction(self):
        # edge factors of a complete graph on 40 vertices: any pairwise
        # merge order grows an intermediate beyond 30 indices
        m = 40
        tensors = tuple(
            make_tensor((i, j), np.ones((2, 2)))
            for i in range(m)
            for j in range(i + 1, m)
        )
        net = TensorNetwork(tensors)
        with pytest.raises(RankCapError) as exc:
            plan_contraction(net, rank_cap=30)
        assert exc.value.rank > 30

    def test_determinism(self):
        rng = np.random.default_rng(2)
        net = random_network(rng)
        p1 = plan_contraction(net, "thorough", seed=5)
        p2 = plan_contraction(net, "thorough", seed=5)
        assert p1 == p2

    def test_unknown_effort(self):
        net = TensorNetwork((make_tensor((0,), [1, 1]),))
        with pytest.raises(TensorNetworkError):
            plan_contraction(net, "heroic")

    def test_plan_json_round_trip(self):
        rng = np.random.default_rng(3)
        net = random_network(rng)
        plan = plan_contraction(net)
        assert ContractionPlan.from_json(plan.to_json()) == plan


class TestContract:
    def test_single_tensor_no_steps(self):
        t = make_tensor((0, 1), [[1, 2], [3, 4]])
        net = TensorNetwork((t,), (0, 1))
        plan = plan_contraction(net)
        assert plan.steps == ()
        out = contract(net, plan)
        assert np.array_equal(out.data, t.data)

    def test_orthogonal_vectors(self):
        a = make_tensor((0,), [1, 0])
        b = make_tensor((0,), [0, 1])
        net = TensorNetwork((a, b))
        out = contract(net, plan_contraction(net))
        assert out.data == pytest.approx(0.0)

    def test_random_networks_match_brute_force(self):
        rng = np.random.default_rng(4)
        for _ in range(60):
            net = random_network(rng, max_tensors=5, max_indices=8)
            plan = plan_contraction(net)
            got = contract(net, plan).data
            want = brute_force_contract(net).data
            assert rel_err(got, want) < 1e-12

    def test_property_replay_equivalence_1000(self):
        # core planning/execution property at the sizes the engine uses
        rng = np.random.default_rng(5)
        for trial in range(1000):
            net = random_network(rng)
            plan = plan_contraction(net)
            got = contract(net, plan).data
            want = brute_force_contract(net).data
            assert rel_err(got, want) < 1e-12, trial

    def test_plan_reuse_on_new_values(self):
        rng = np.random.default_rng(6)
        for _ in range(40):
            net = random_network(rng)
            plan = plan_contraction(net)
            fresh = TensorNetwork(
                tuple(
                    Tensor(
                        t.indices,
                        (rng.normal(size=t.data.shape) + 1j * rng.normal(size=t.data.shape)),
                    )
                    for t in net.tensors
                ),
                net.open_indices,
            )
            got = contract(fresh, plan).data
            want = brute_force_contract(fresh).data
            assert rel_err(got, want) < 1e-12

    def test_structure_mismatch_rejected(self):
        a = make_tensor((0, 1), np.eye(2))
        b = make_tensor((1, 2), np.eye(2))
        net = TensorNetwork((a, b), (0, 2))
        other = TensorNetwork((a, b, make_tensor((2,), [1, 1])))
        plan = plan_contraction(net)
        with pytest.raises(PlanMismatchError):
            contract(other, plan)

    def test_est_flops_tracks_actual_multiplies(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            net = random_network(rng)
            plan = plan_contraction(net)
            stats = {}
            contract(net, plan, stats=stats)
            actual = stats["multiplies"]
            assert actual > 0
            assert plan.est_flops <= 4 * actual
            assert actual <= 4 * plan.est_flops

    def test_hyperedge_shared_by_three(self):
        # one variable joint across three factors: sum_z a_z b_z c_z
        rng = np.random.default_rng(8)
        vecs = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3)]
        net = TensorNetwork(tuple(make_tensor((0,), v) for v in vecs))
        got = contract(net, plan_contraction(net)).data
        want = sum(vecs[0][z] * vecs[1][z] * vecs[2][z] for z in (0, 1))
        assert abs(got - want) < 1e-12

    def test_disconnected_components(self):
        a = make_tensor((0,), [1, 2])
        b = make_tensor((1,), [3, 4])
        net = TensorNetwork((a, b))
        got = contract(net, plan_contraction(net)).data
        assert got == pytest.approx((1 + 2) * (3 + 4))
