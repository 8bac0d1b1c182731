import math

import numpy as np
import pytest

from conecut import Graph, QubitLimitError, random_regular
from conecut.qaoa_types import AngleSequence
from conecut.statevec import StateVector, cut_values, energy_sv, evolve, sample


def k2():
    return Graph.from_edges(2, [(0, 1)])


def single_edge_energy(gamma, beta):
    # closed form for one isolated unit edge at depth 1, derived by expanding
    # the four amplitudes by hand: <C> = 1/2 + 1/2 sin(4 beta) sin(gamma)
    return 0.5 + 0.5 * math.sin(4 * beta) * math.sin(gamma)


def random_graph(rng, n, frac=0.5, weighted=False):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < frac:
                w = rng.uniform(0.2, 2.0) if weighted else 1.0
                edges.append((u, v, w))
    if not edges:
        edges = [(0, 1, 1.0)]
    return Graph.from_edges(n, edges)


class TestAngleSequence:
    def test_canonical_mod_2pi(self):
        a = AngleSequence((2 * math.pi + 0.5, -0.5), (7.0, 0.0))
        assert a.gamma[0] == pytest.approx(0.5)
        assert a.gamma[1] == pytest.approx(2 * math.pi - 0.5)
        assert a.beta[0] == pytest.approx(7.0 - 2 * math.pi)

    def test_flat_round_trip(self):
        a = AngleSequence((0.1, 0.2), (0.3, 0.4))
        assert AngleSequence.from_flat(a.to_flat()) == a

    def test_depth_mismatch(self):
        with pytest.raises(Exception):
            AngleSequence((0.1,), (0.2, 0.3))


class TestEvolve:
    def test_zero_angles_uniform(self):
        g = random_graph(np.random.default_rng(0), 5)
        s = evolve(g, AngleSequence((0.0,), (0.0,)))
        assert np.allclose(s.amplitudes, 2.0 ** (-g.n / 2))

    def test_k2_analytic_optimum(self):
        # beta = pi/8, gamma = pi/2 puts all probability on the cut states
        s = evolve(k2(), AngleSequence((math.pi / 2,), (math.pi / 8,)))
        probs = np.abs(s.amplitudes) ** 2
        assert probs[0b01] + probs[0b10] == pytest.approx(1.0, abs=1e-10)

    def test_norm_preserved_100_random(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            n = int(rng.integers(2, 7))
            g = random_graph(rng, n, weighted=bool(rng.integers(2)))
            p = int(rng.integers(1, 4))
            a = AngleSequence(tuple(rng.uniform(0, 2 * math.pi, p)), tuple(rng.uniform(0, 2 * math.pi, p)))
            s = evolve(g, a)
            assert np.linalg.norm(s.amplitudes) == pytest.approx(1.0, abs=1e-10)

    def test_phase_layer_preserves_moduli(self):
        g = random_graph(np.random.default_rng(2), 5)
        cuts = cut_values(g)
        amps = np.full(1 << g.n, 2.0 ** (-g.n / 2), dtype=complex)
        phased = amps * np.exp(-1j * 1.234 * cuts)
        assert np.allclose(np.abs(phased), np.abs(amps), atol=1e-12)

    def test_qubit_limit(self):
        g = Graph.from_edges(30, [(i, i + 1) for i in range(29)])
        with pytest.raises(QubitLimitError):
            evolve(g, AngleSequence((0.1,), (0.2,)))

    def test_bitflip_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            g = random_graph(rng, 6)
            a = AngleSequence(tuple(rng.uniform(0, 6.28, 2)), tuple(rng.uniform(0, 6.28, 2)))
            s = evolve(g, a)
            probs = np.abs(s.amplitudes) ** 2
            flipped = probs[::-1]  # complementing all bits reverses the index
            assert np.allclose(probs, flipped, atol=1e-10)


class TestEnergy:
    def test_zero_angles_half_weight(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            g = random_graph(rng, int(rng.integers(2, 8)), weighted=True)
            r = energy_sv(g, AngleSequence((0.0, 0.0), (0.0, 0.0)))
            assert r.total == pytest.approx(g.total_weight / 2, abs=1e-12)

    def test_k2_matches_closed_form(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            gamma = rng.uniform(0, 2 * math.pi)
            beta = rng.uniform(0, 2 * math.pi)
            r = energy_sv(k2(), AngleSequence((gamma,), (beta,)))
            assert r.total == pytest.approx(single_edge_energy(gamma, beta), abs=1e-10)

    def test_k2_optimum_value_one(self):
        r = energy_sv(k2(), AngleSequence((math.pi / 2,), (math.pi / 8,)))
        assert r.total == pytest.approx(1.0, abs=1e-10)
        assert r.ratio == pytest.approx(1.0, abs=1e-10)

    def test_per_edge_sums_to_total(self):
        rng = np.random.default_rng(6)
        g = random_graph(rng, 7, weighted=True)
        a = AngleSequence((0.7, 1.1), (0.3, 2.2))
        r = energy_sv(g, a)
        assert r.total == sum(r.per_edge)

    def test_edge_subset(self):
        g = random_graph(np.random.default_rng(7), 6)
        a = AngleSequence((0.9,), (0.4,))
        full = energy_sv(g, a)
        sub = energy_sv(g, a, edges=[0, 2])
        assert sub.per_edge == (full.per_edge[0], full.per_edge[2])
        assert sub.total == pytest.approx(full.per_edge[0] + full.per_edge[2])

    def test_depth1_triangle_free_closed_form(self):
        # independent depth-1 closed form for triangle-free graphs:
        # <C_uv> = 1/2 + (sin 4b sin g / 4) (cos^(du-1) g + cos^(dv-1) g)
        rng = np.random.default_rng(8)
        for seed in range(10):
            g = random_regular(10, 3, seed=seed)
            from conecut import triangle_count

            if triangle_count(g) != 0:
                continue
            gamma = rng.uniform(0, 2 * math.pi)
            beta = rng.uniform(0, 2 * math.pi)
            r = energy_sv(g, AngleSequence((gamma,), (beta,)))
            for (u, v, w), got in zip(g.edges, r.per_edge):
                du, dv = g.degrees[u], g.degrees[v]
                want = 0.5 + 0.25 * math.sin(4 * beta) * math.sin(gamma) * (
                    math.cos(gamma) ** (du - 1) + math.cos(gamma) ** (dv - 1)
                )
                assert got == pytest.approx(want, abs=1e-9)


class TestSampling:
    def test_basis_state_deterministic(self):
        amps = np.zeros(16, dtype=complex)
        amps[0b0110] = 1.0
        s = StateVector(4, amps)
        out = sample(s, 20, np.random.default_rng(0))
        assert set(out) == {"0110"}  # qubit 0 first: bits 1,2 set

    def test_uniform_marginals(self):
        n = 6
        s = StateVector(n, np.full(1 << n, 2.0 ** (-n / 2), dtype=complex))
        shots = 100_000
        out = sample(s, shots, np.random.default_rng(42))
        arr = np.array([[c == "1" for c in b] for b in out], dtype=float)
        marginals = arr.mean(axis=0)
        assert np.all(marginals > 0.49) and np.all(marginals < 0.51)

    def test_empirical_mean_within_3_sigma(self):
        g = random_graph(np.random.default_rng(9), 6)
        a = AngleSequence((0.8,), (0.6,))
        s = evolve(g, a)
        cuts = cut_values(g)
        probs = np.abs(s.amplitudes) ** 2
        mean = float(probs @ cuts)
        var = float(probs @ (cuts - mean) ** 2)
        shots = 100_000
        out = sample(s, shots, np.random.default_rng(10))
        values = []
        for b in out:
            z = sum(1 << i for i, c in enumerate(b) if c == "1")
            values.append(cuts[z])
        emp = float(np.mean(values))
        sigma = math.sqrt(var / shots)
        assert abs(emp - mean) < 3 * sigma + 1e-12

    def test_shots_validated(self):
        s = StateVector(1, np.array([1.0, 0.0], dtype=complex))
        with pytest.raises(ValueError):
            sample(s, 0, np.random.default_rng(0))
