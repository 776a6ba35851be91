"""Sampled verification harness: determinism, gating, violations, reports."""

import json

import numpy as np
import pytest

from hypcontract.catalog import get
from hypcontract.disk import sigma
from hypcontract.harness import (
    CHUNK_SIZE,
    KV_FACTOR,
    CaseSpec,
    ConfigError,
    InequalityCase,
    SampleSpec,
    SuiteConfig,
    default_config,
    disk_pair_chunk,
    polar_grid,
    run_suite,
    validate_config,
    verify_abs_inequalities,
    verify_kv_factor,
    verify_pavlovic,
    verify_pointwise_gradient,
    verify_proof_chain,
    verify_re_contraction,
    verify_schwarz_pick,
)
from hypcontract.weights import half_plane_weight, omega_distance, strip_weight


class TestSampleSpec:
    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            SampleSpec(count=0)

    def test_rejects_bad_radius_cap(self):
        with pytest.raises(ValueError):
            SampleSpec(count=10, radius_cap=1.0)
        with pytest.raises(ValueError):
            SampleSpec(count=10, radius_cap=0.0)

    def test_rejects_unknown_scheme(self):
        with pytest.raises(ValueError):
            SampleSpec(count=10, scheme="sobol")


class TestSampling:
    def test_chunk_content_depends_only_on_seed_and_index(self):
        spec_a = SampleSpec(count=10_000, seed=5)
        spec_b = SampleSpec(count=99, seed=5)
        za, wa = disk_pair_chunk(spec_a, 0, 64, False)
        zb, wb = disk_pair_chunk(spec_b, 0, 64, False)
        np.testing.assert_array_equal(za, zb)
        np.testing.assert_array_equal(wa, wb)

    def test_final_pair_is_degenerate(self):
        z, w = disk_pair_chunk(SampleSpec(count=100), 0, 100, True)
        assert z[-1] == w[-1]
        assert np.all(z[:-1] != w[:-1])

    def test_radius_cap_respected(self):
        for scheme in ("uniform_disk", "boundary_biased"):
            z, w = disk_pair_chunk(SampleSpec(count=500, scheme=scheme, radius_cap=0.9), 0, 500, False)
            assert max(np.max(np.abs(z)), np.max(np.abs(w))) <= 0.9 + 1e-15

    def test_polar_grid_layout(self):
        g = polar_grid(11, 7, 0.95)
        assert g.shape == (77,)
        assert np.min(np.abs(g)) == 0.0
        assert np.max(np.abs(g)) <= 0.95 + 1e-15


class TestCaseIds:
    def test_case_id_join(self):
        assert CaseSpec(op="re_contraction", function="strip_map", weight="strip").case_id == (
            "re_contraction:strip_map:strip"
        )
        assert CaseSpec(op="abs_inequalities").case_id == "abs_inequalities"

    def test_default_config_ids_unique(self):
        cfg = default_config()
        ids = [cs.case_id for cs in cfg.cases]
        assert len(ids) == len(set(ids))


class TestValidation:
    def test_default_config_is_clean(self):
        assert validate_config(default_config()) == []

    def test_all_errors_reported_at_once(self):
        cfg = SuiteConfig(
            sample=SampleSpec(count=10),
            cases=(
                CaseSpec(op="nope"),
                CaseSpec(op="re_contraction", function="strip_map"),
                CaseSpec(op="re_contraction", function="ghost", weight="strip"),
                CaseSpec(op="kv_factor", function="cayley"),
            ),
        )
        errors = validate_config(cfg)
        assert len(errors) == 4
        text = "\n".join(errors)
        assert "unknown op" in text
        assert "missing weight" in text
        assert "unknown catalog function" in text
        assert "Re-image must be (-1, 1)" in text

    def test_codomain_weight_compatibility(self):
        # cayley maps into the right half-plane; the strip weight on (-1, 1)
        # cannot host its Re-image
        cfg = SuiteConfig(
            sample=SampleSpec(count=10),
            cases=(CaseSpec(op="re_contraction", function="cayley", weight="strip"),),
        )
        errors = validate_config(cfg)
        assert len(errors) == 1 and "not contained" in errors[0]

    def test_run_suite_raises_config_error(self):
        cfg = SuiteConfig(sample=SampleSpec(count=10), cases=(CaseSpec(op="nope"),))
        with pytest.raises(ConfigError) as exc:
            run_suite(cfg)
        assert exc.value.errors and "unknown op" in exc.value.errors[0]

    def test_empty_suite_rejected(self):
        assert validate_config(SuiteConfig(sample=SampleSpec(count=10), cases=())) == [
            "cases: empty suite"
        ]


class TestReContraction:
    def test_passes_for_strip_map(self):
        case = InequalityCase(
            id="re_contraction:strip_map:strip",
            function=get("strip_map"),
            target=strip_weight(),
        )
        rep = verify_re_contraction(case, SampleSpec(count=2048))
        assert rep.status == "pass"
        assert rep.samples_used == 2048
        assert rep.min_margin >= -1e-9
        # stream ends with the degenerate pair, whose margin is exactly zero
        assert rep.margins[-1] == 0.0

    def test_passes_for_cayley_half_plane(self):
        case = InequalityCase(
            id="re_contraction:cayley:half_plane",
            function=get("cayley"),
            target=half_plane_weight(),
        )
        rep = verify_re_contraction(case, SampleSpec(count=2048))
        assert rep.status == "pass"
        assert rep.min_margin >= -1e-9

    def test_spot_pair_consistent_with_modules(self):
        # one concrete pair away from the harness: the weighted distance of
        # the Re-images must sit below the hyperbolic distance
        f = get("strip_map")
        w = strip_weight()
        z, zw = 0.1 + 0.2j, -0.5 + 0.4j
        lhs = omega_distance(w, float(np.real(f.eval(z))), float(np.real(f.eval(zw))))
        assert lhs <= float(sigma(z, zw))

    def test_curvature_gate(self):
        # 2/(1-t^2) has curvature -(1+t^2)/2 > -1: hypothesis fails cleanly
        from hypcontract.weights import disk_diameter_weight

        case = InequalityCase(
            id="re_contraction:strip_map:disk_diameter",
            function=get("strip_map"),
            target=disk_diameter_weight(),
        )
        rep = verify_re_contraction(case, SampleSpec(count=64))
        assert rep.status == "hypothesis-not-met"
        assert rep.samples_used == 0
        assert rep.min_margin is None
        assert rep.extras["required"] == "curv_w <= -1"
        assert rep.extras["max_curvature"] == pytest.approx(-0.5, abs=1e-6)


class TestPointwiseGradient:
    def test_strip_map_touches_but_never_exceeds_one(self):
        case = InequalityCase(
            id="pointwise_gradient:strip_map:strip",
            function=get("strip_map"),
            target=strip_weight(),
        )
        rep = verify_pointwise_gradient(case)
        assert rep.status == "pass"
        assert rep.extras["max_lhs"] <= 1.0 + 1e-9
        # the bound is saturated (equality case), not slack
        assert rep.extras["max_lhs"] > 1.0 - 1e-6

    def test_cayley_half_plane(self):
        case = InequalityCase(
            id="pointwise_gradient:cayley:half_plane",
            function=get("cayley"),
            target=half_plane_weight(),
        )
        rep = verify_pointwise_gradient(case)
        assert rep.status == "pass"
        assert rep.extras["max_lhs"] <= 1.0 + 1e-9


class TestSchwarzPick:
    def test_blaschke_is_an_isometry(self):
        case = InequalityCase(id="schwarz_pick:blaschke", function=get("blaschke"))
        rep = verify_schwarz_pick(case, SampleSpec(count=4096))
        assert rep.status == "pass"
        assert float(np.max(np.abs(rep.margins))) < 1e-10

    def test_constant_map_collapses_lhs(self):
        case = InequalityCase(id="schwarz_pick:constant", function=get("constant"))
        rep = verify_schwarz_pick(case, SampleSpec(count=1024))
        assert rep.status == "pass"
        assert rep.min_margin >= 0.0


class TestPavlovic:
    def test_identity_zero_branch_at_origin(self):
        case = InequalityCase(id="pavlovic:identity", function=get("identity"))
        rep = verify_pavlovic(case)
        assert rep.status == "pass"
        assert rep.extras["n_zero_branch"] >= 1
        # at the origin both sides equal 1, so the zero-branch margin is 0
        assert rep.extras["min_margin_zero"] == pytest.approx(0.0, abs=1e-15)

    def test_blaschke_tight(self):
        # the zero of this factor misses the grid, so only the nonzero branch
        # is exercised; equality still holds there up to rounding
        case = InequalityCase(id="pavlovic:blaschke", function=get("blaschke"))
        rep = verify_pavlovic(case)
        assert rep.status == "pass"
        assert rep.extras["n_nonzero_branch"] == rep.samples_used
        assert rep.min_margin >= -1e-9


class TestKvFactor:
    def test_four_over_pi_passes(self):
        case = InequalityCase(id="kv_factor:strip_map", function=get("strip_map"), factor=KV_FACTOR)
        rep = verify_kv_factor(case, SampleSpec(count=4096, scheme="boundary_biased"))
        assert rep.status == "pass"
        assert 1.0 < rep.extras["sup_ratio"] <= KV_FACTOR + 1e-9
        assert len(rep.extras["sup_ratio_pair"]) == 2

    def test_factor_one_is_violated(self):
        # shrinking the factor to 1 must produce violations: the sup of the
        # ratio genuinely exceeds 1
        case = InequalityCase(id="kv_factor:strip_map", function=get("strip_map"), factor=1.0)
        rep = verify_kv_factor(case, SampleSpec(count=2048, scheme="boundary_biased"))
        assert rep.status == "violated"
        assert len(rep.violations) > 0
        v = rep.violations[0]
        assert set(v) == {"index", "z", "w", "lhs", "rhs", "margin"}
        tol = case.tol_abs + case.tol_rel * abs(v["rhs"])
        assert v["margin"] < -tol
        assert rep.margins[v["index"]] == v["margin"]


class TestProofChain:
    def test_strip_map_links(self):
        case = InequalityCase(
            id="proof_chain:strip_map:strip",
            function=get("strip_map"),
            target=strip_weight(),
            tol_abs=1e-6,
        )
        rep = verify_proof_chain(case, SampleSpec(count=4096))
        assert rep.status == "pass"
        assert rep.extras["min_first_link"] > -1e-6
        assert rep.extras["min_second_link"] > -1e-6

    def test_cayley_links(self):
        case = InequalityCase(
            id="proof_chain:cayley:half_plane",
            function=get("cayley"),
            target=half_plane_weight(),
            tol_abs=1e-6,
        )
        rep = verify_proof_chain(case, SampleSpec(count=2048))
        assert rep.status == "pass"

    def test_gated_on_curvature(self):
        from hypcontract.weights import disk_diameter_weight

        case = InequalityCase(
            id="proof_chain:strip_map:disk_diameter",
            function=get("strip_map"),
            target=disk_diameter_weight(),
            tol_abs=1e-6,
        )
        rep = verify_proof_chain(case, SampleSpec(count=64))
        assert rep.status == "hypothesis-not-met"


class TestAbsInequalities:
    def test_ids_and_margins(self):
        reports = verify_abs_inequalities(SampleSpec(count=2048), dims=(1, 2, 3))
        assert [r.case_id for r in reports] == [
            "abs_rho_disk",
            "abs_sigma_disk",
            "abs_beta_ball_n1",
            "abs_beta_ball_n2",
            "abs_beta_ball_n3",
        ]
        for r in reports:
            assert r.status == "pass"
            assert r.min_margin >= -1e-12

    def test_dims_subset(self):
        reports = verify_abs_inequalities(SampleSpec(count=256), dims=(2,))
        assert [r.case_id for r in reports] == ["abs_rho_disk", "abs_sigma_disk", "abs_beta_ball_n2"]


class TestDeterminism:
    def test_data_json_independent_of_workers(self):
        # odd count exercises a partial final chunk
        r1 = run_suite(default_config(count=4097, workers=1))
        r4 = run_suite(default_config(count=4097, workers=4))
        assert r1.overall_pass and r4.overall_pass
        assert r1.data_json() == r4.data_json()

    def test_chunk_prefix_invariance(self):
        # margins of the first full chunk do not depend on the total count
        case = InequalityCase(id="schwarz_pick:power", function=get("power"))
        small = verify_schwarz_pick(case, SampleSpec(count=CHUNK_SIZE))
        large = verify_schwarz_pick(case, SampleSpec(count=2 * CHUNK_SIZE))
        np.testing.assert_array_equal(small.margins[:-1], large.margins[: CHUNK_SIZE - 1])

    def test_repeat_run_identical(self):
        cfg = default_config(count=1537)
        assert run_suite(cfg).data_json() == run_suite(cfg).data_json()


@pytest.fixture(scope="module")
def result():
    return run_suite(default_config(count=1024))


class TestSuiteResult:
    def test_overall_pass_and_report_count(self, result):
        assert result.overall_pass
        assert len(result.reports) == 30

    def test_report_dict_shape(self, result):
        d = result.reports[0].to_dict()
        assert set(d) == {
            "case_id",
            "status",
            "samples_used",
            "min_margin",
            "mean_margin",
            "n_violations",
            "violations",
            "seed",
            "extras",
        }
        assert "wall_time" not in d

    def test_data_json_has_no_timing(self, result):
        payload = json.loads(result.data_json())
        assert set(payload) == {"schema_version", "seed", "overall_pass", "cases"}
        assert "wall_time" not in json.dumps(payload)

    def test_to_json_separates_meta(self, result):
        full = json.loads(result.to_json())
        assert set(full) == {"data", "meta"}
        assert "wall_time" in full["meta"]
        assert full["data"] == json.loads(result.data_json())

    def test_margins_csv_layout(self, result):
        csv = result.margins_csv()
        lines = csv.strip().split("\n")
        assert lines[0] == "case_id,sample_index,margin"
        expected_rows = sum(len(r.margins) for r in result.reports if r.margins is not None)
        assert len(lines) - 1 == expected_rows
        case_id, idx, margin = lines[1].split(",")
        assert idx == "0"
        float(margin)  # repr round-trips
