import json
import math

import pytest

import graphon_ldp as g


def test_graphon_and_graph_objects():
    f = g.StepGraphon(["1/3", "2/3"], [[0.0, 0.5], [0.5, 0.2]])
    assert f.block_count == 2
    assert f.widths == ["1/3", "2/3"]
    assert g.StepGraphon.from_json(f.to_json()) == f
    assert json.loads(f.to_json())["values"] == [[0.0, 0.5], [0.5, 0.2]]
    c4 = g.Graph.cycle(4)
    assert (c4.vertex_count, c4.edge_count) == (4, 4)
    assert g.Graph.parse("3 2\n1 2\n2 3\n").edge_count == 2
    assert g.Graph(3, [(0, 1), (1, 2)]).edge_count == 2


def test_errors_map_to_exception_types():
    with pytest.raises(g.ValidationError):
        g.StepGraphon(["1/2", "1/3"], [[0, 0], [0, 0]])
    with pytest.raises(g.ValidationError):
        g.Graph.parse("3 1\n1 1\n")
    with pytest.raises(g.DomainError):
        g.bernoulli_kl(0.0, 0.5)
    with pytest.raises(g.CapacityError):
        g.exact_tail(g.StepGraphon.constant(0.5), g.Graph.named("edge"), 0.3, 8)
    assert issubclass(g.DomainError, g.Error)
    assert issubclass(g.Error, RuntimeError)


def test_graphon_core_functions():
    f = g.StepGraphon.bipartite("1/3", 0.6)
    c4 = g.Graph.cycle(4)
    assert g.hom_density(c4, f) == pytest.approx(2 * (2 / 9) ** 2 * 0.6**4, rel=1e-13)
    assert g.operator_norm(f) == pytest.approx(0.6 * math.sqrt(2 / 9), rel=1e-12)
    w0 = g.StepGraphon.bipartite("1/3", 0.2)
    assert g.relative_entropy(w0, f) == pytest.approx(2 / 9 * g.bernoulli_kl(0.2, 0.6), rel=1e-12)
    assert g.in_omega(w0, f)
    assert not g.in_omega(w0, g.StepGraphon.constant(0.5))
    assert g.cut_norm_distance(f, f) == 0.0
    lower, upper = g.delta_cut_bounds(f, w0)
    assert 0 <= lower <= upper
    assert g.relevant_blocks(c4, w0) == [(0, 1)]
    fmax, tmax = g.f_max_graphon(c4, w0)
    assert tmax == pytest.approx(g.hom_density(c4, fmax))


def test_entropy_and_solver():
    assert g.p_zero(2) == pytest.approx(1 / (1 + math.e**2), abs=1e-12)
    prof = g.analyze_psi(0.05, 2)
    assert prof["convexity"] == "NonConvex"
    assert not g.on_minorant(0.05, 2, 0.5)
    sol = g.symmetric_min(g.StepGraphon.constant(0.3), g.Graph.named("edge"), 0.5, restarts=4)
    assert sol["objective"] == pytest.approx(0.5 * g.bernoulli_kl(0.3, 0.5), rel=1e-10)
    assert g.bipartite_phase(0.05, 0.5, g.Graph.cycle(4), 0.5) == "Broken"
    csv = g.phase_scan(0.05, "1/2", g.Graph.cycle(4), [0.1, 0.5, 0.9])
    assert csv.splitlines()[0].startswith("r,")


def test_witnesses():
    w = g.witness_geps(0.05, "1/2", g.Graph.cycle(4), 0.5)
    assert w["valid"]
    assert w["entropy_witness"] < w["entropy_symmetric"]
    clique = g.witness_clique("independent", "1/2", 0.01, g.Graph.cycle(4), 1e-4)
    assert clique["valid"]
    planted = g.witness_planted("1/2", 0.5, g.Graph.cycle(4), 1e-4)
    assert planted["limit_ratio_witness"] < planted["limit_ratio_symmetric"]


def test_sampler():
    bip = g.StepGraphon.bipartite("1/2", 0.5)
    assert g.exact_tail(bip, g.Graph.named("edge"), 0.25, 4)["p_hat"] == pytest.approx(11 / 16)
    edges = g.sample_edges(bip, 10, seed=3, index=1)
    assert edges == g.sample_edges(bip, 10, seed=3, index=1)
    assert all((a < 5) != (b < 5) for a, b in edges)
    est = g.tail_estimate(bip, g.Graph.named("edge"), 0.25, 4, 2000, seed=1)
    assert est["wilson_interval"][0] <= est["p_hat"] <= est["wilson_interval"][1]
