"""Smoke tests for the Python module: the bindings load and the core
operations return the known closed-form values."""

import math

import numpy as np
import pytest

import biortho


PI = math.pi


def test_version_and_names():
    assert biortho.__version__ == "0.1.0"
    assert set(biortho.model_names()) == {"s4", "s2xs2", "s2xt2", "t4", "s3xs1", "cp2"}
    assert len(biortho.suite_names()) == 10


def test_blocks_compose_roundtrip():
    blocks = biortho.CurvatureBlocks()
    blocks.s = 12.0
    op = biortho.compose(blocks)
    assert op.shape == (6, 6)
    assert np.allclose(op, np.eye(6), atol=1e-14)

    back = biortho.decompose(op)
    assert back.s == pytest.approx(12.0, abs=1e-13)
    assert back.wnorm2() == pytest.approx(0.0, abs=1e-13)
    assert back.bnorm2() == pytest.approx(0.0, abs=1e-13)


def test_spectral_and_bruteforce_extremes():
    blocks = biortho.CurvatureBlocks()
    blocks.s = 12.0
    blocks.wplus = np.diag([-2.0, 1.0, 1.0])
    summary = biortho.kperp_spectral(blocks)
    assert summary.k1perp == pytest.approx(0.0, abs=1e-13)
    assert summary.k3perp == pytest.approx(1.5, abs=1e-13)

    search = biortho.kperp_bruteforce(blocks, starts=128)
    assert search.lo.value == pytest.approx(summary.k1perp, abs=1e-6)
    assert search.hi.value == pytest.approx(summary.k3perp, abs=1e-6)


def test_plane_values_from_span():
    model = biortho.make_model("s2xs2", {"a": 1.0, "b": 2.0, "n": 6.0})
    factor_x = np.array([1.0, 0.0, 0.0, 0.0])
    factor_y = np.array([0.0, 1.0, 0.0, 0.0])
    mixed_y = np.array([0.0, 0.0, 1.0, 0.0])
    assert biortho.sectional_from_span(model.blocks, factor_x, factor_y) == pytest.approx(
        1.0, abs=1e-12
    )
    assert biortho.biortho_from_span(model.blocks, factor_x, factor_y) == pytest.approx(
        5.0 / 8.0, abs=1e-12
    )
    assert biortho.biortho_from_span(model.blocks, factor_x, mixed_y) == pytest.approx(
        0.0, abs=1e-12
    )


def test_model_catalog_and_predicates():
    s4 = biortho.make_model("s4")
    assert s4.chi == 2
    assert s4.volume == pytest.approx(8.0 * PI**2 / 3.0, rel=1e-12)

    preds = biortho.predicates(s4.blocks)
    assert preds.einstein
    assert preds.positive_isotropic
    assert preds.pinched_quarter_one

    prod = biortho.make_model("s2xs2", {"a": 1.0, "b": 0.5})
    assert not biortho.predicates(prod.blocks).einstein

    with pytest.raises(ValueError):
        biortho.make_model("nosuch")


def test_integral_reports():
    gb = biortho.gauss_bonnet_check(biortho.make_model("s4", {"n": 12.0}))
    assert gb["chi"] == 2
    assert gb["residuals"]["gauss_bonnet_rel"] < 1e-10
    assert gb["integrals"]["total_s2"] == pytest.approx(384.0 * PI**2, rel=1e-12)

    bound = biortho.euler_bound_check(biortho.make_model("s2xs2", {"n": 12.0}))
    assert bound["hypotheses_met"]
    assert bound["integrals"]["bound_sharp"] == pytest.approx(
        (176.0 / 3.0) * PI**2, rel=1e-12
    )

    threshold = biortho.scalar_energy_threshold(biortho.make_model("s2xs2", {"n": 12.0}))
    assert threshold["exclusion_respected"]
    assert threshold["total_s2"] == pytest.approx(256.0 * PI**2, rel=1e-12)


def test_mesh_and_minimize():
    model = biortho.make_model("s4", {"n": 6.0})
    mesh = biortho.make_mesh(model, (8, 8, 8, 8))
    assert mesh.size == 8**4
    assert mesh.weights.sum() == pytest.approx(mesh.volume, rel=1e-12)

    ones = np.ones(mesh.size)
    assert abs(mesh.laplacian(ones)).max() < 1e-8
    anchor = 8.0 * math.sqrt(6.0) * PI
    assert biortho.functional_value(mesh, "y", ones) == pytest.approx(anchor, rel=1e-9)

    nodes = mesh.nodes()
    start = 1.0 + 0.1 * np.cos(nodes[:, 0])
    result = biortho.minimize(mesh, "y", start, max_iterations=50)
    assert result.value <= anchor + 1e-3
    assert result.total_clamps == 0
    trace = result.trace_values
    assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))
    assert result.value <= biortho.functional_value(mesh, "y", start) + 1e-12

    with pytest.raises(ValueError):
        biortho.make_mesh(biortho.make_model("cp2"), (8, 8, 8, 8))


def test_property_suites():
    report = biortho.run_suite("trace-sum", seed=3, count=200)
    assert report.passed
    assert report.failures == 0
    assert report.counterexample == ""

    with pytest.raises(ValueError):
        biortho.run_suite("nosuch")
