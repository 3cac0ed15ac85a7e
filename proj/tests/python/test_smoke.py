"""Smoke tests for the python bindings: a few end-to-end facts per surface."""

import math

import pytest

import riemann_ineq as ri


def test_manifold_catalog_and_volume():
    sph = ri.manifold("sphere:1.0")
    assert sph.dim == 2
    assert sph.known_volume == pytest.approx(4 * math.pi)
    assert ri.volume(sph) == pytest.approx(4 * math.pi, rel=1e-9)

    torus = ri.flat_torus(2, [2 * math.pi, 2 * math.pi])
    assert ri.volume(torus) == pytest.approx(4 * math.pi**2, rel=1e-12)

    with pytest.raises(ri.ConfigError):
        ri.manifold("sphere:-1")


def test_geometry_values():
    torus = ri.flat_torus(2, [2 * math.pi, 2 * math.pi])
    assert all(v == 0.0 for v in ri.christoffel(torus, [1.0, 2.0]))
    assert all(v == 0.0 for v in ri.ricci(torus, [1.0, 2.0]))

    sph = ri.sphere(1.0)
    ric = ri.ricci(sph, [1.1, 0.3])
    # unit sphere: Ric = g = diag(1, sin^2 theta)
    assert ric[0] == pytest.approx(1.0, abs=1e-9)
    assert ric[3] == pytest.approx(math.sin(1.1) ** 2, abs=1e-9)
    assert ri.volume_density(sph, [1.1, 0.3]) == pytest.approx(math.sin(1.1))


def test_pointwise_residuals_and_chain():
    sph = ri.sphere(1.0)
    u = ri.family_field(sph, "shifted-trig", [2.0, 1.0])  # u = 2 + cos theta
    res = ri.residuals(sph, u, [1.0, 0.7])
    for key in ("lemma", "bochner", "log", "sqrt"):
        assert abs(res[key]) < 1e-8
    assert res["trace_lhs"] <= res["trace_rhs"] * (1 + 1e-12)

    chain = ri.identity_chain(sph, u)
    assert [c["name"] for c in chain] == ["drugie", "trzecie", "czwarte", "piate"]
    assert all(c["pass"] for c in chain)
    assert all(c["rel_residual"] < 1e-7 for c in chain)


def test_functionals_and_small_amplitude_ratio():
    torus = ri.flat_torus(2, [2 * math.pi, 2 * math.pi])
    u = ri.family_field(torus, "exp-trig", [1e-3])
    f = ri.functionals(torus, u)
    assert f["B"] == pytest.approx(2 * math.pi**2 * 1e-6, rel=2e-3)
    r = ri.ratios(torus, u)
    assert r["main"] == pytest.approx(0.25, abs=1e-5)

    one = ri.family_field(torus, "exp-trig", [])
    with pytest.raises(ri.DegenerateRatio):
        ri.ratios(torus, one)


def test_byparts_sign_conventions():
    torus = ri.flat_torus(2, [2 * math.pi, 2 * math.pi])
    f = ri.mode_field(torus, 0)
    u = ri.family_field(torus, "exp-trig", [0.5])
    assert abs(ri.byparts_residual(torus, f, u)) < 1e-10
    assert abs(ri.byparts_residual(torus, f, u, printed_sign=True)) > 1e-2


def test_estimate_constant_small_budget():
    torus = ri.flat_torus(2, [2 * math.pi, 2 * math.pi])
    rep = ri.estimate_constant(
        torus, "exp-trig", 2, budget=150, seed=0, restarts=3, resolution=[16, 16]
    )
    assert rep["best_ratio"] > 0.2
    assert not rep["unresolved"]
    rep2 = ri.estimate_constant(
        torus, "exp-trig", 2, budget=150, seed=0, restarts=3, resolution=[16, 16]
    )
    assert rep2["best_ratio"] == rep["best_ratio"]
    assert rep2["best_params"] == rep["best_params"]
