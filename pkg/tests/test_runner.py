import pytest

from metaline.runner import CHECK_NAMES, run_verification
from metaline.varieties import builtin_chart

GOLDEN_DIMS = {
    "dimW": 4,
    "dimU": 1,
    "dimWprime": 5,
    "d": 1,
    "n": 5,
    "familyDim": 5,
}


@pytest.fixture(scope="module")
def cubic_report():
    chart, explicit = builtin_chart("veronese-2-3")
    return run_verification(chart, explicit, seed=42, samples=30)


def test_all_checks_present_and_pass(cubic_report):
    assert [c.name for c in cubic_report.checks] == list(CHECK_NAMES)
    assert cubic_report.passed
    for check in cubic_report.checks:
        assert check.failures == 0, check.name
        assert check.passes + check.skips == check.samples


def test_golden_dims(cubic_report):
    assert cubic_report.dims == GOLDEN_DIMS


def test_no_skips_on_clean_fixture(cubic_report):
    assert all(c.skips == 0 for c in cubic_report.checks)


def test_reports_are_reproducible():
    chart, explicit = builtin_chart("veronese-2-3")
    again = run_verification(chart, explicit, seed=42, samples=30)
    reference = run_verification(chart, explicit, seed=42, samples=30)
    assert again.to_json() == reference.to_json()


def test_seed_changes_samples_not_verdict():
    chart, explicit = builtin_chart("flat-conic")
    a = run_verification(chart, explicit, seed=1, samples=10)
    b = run_verification(chart, explicit, seed=2, samples=10)
    assert a.passed and b.passed


def test_checks_filter_preserves_results(cubic_report):
    chart, explicit = builtin_chart("veronese-2-3")
    subset = run_verification(
        chart, explicit, seed=42, samples=30, checks=["levi-tensor", "slide-identity"]
    )
    assert [c.name for c in subset.checks] == ["levi-tensor", "slide-identity"]
    full = {c.name: c.to_dict() for c in cubic_report.checks}
    for check in subset.checks:
        assert check.to_dict() == full[check.name]


def test_unknown_check_rejected():
    chart, explicit = builtin_chart("veronese-2-3")
    with pytest.raises(ValueError):
        run_verification(chart, explicit, checks=["nonsense"])


def test_parallel_matches_serial():
    chart, explicit = builtin_chart("veronese-2-3")
    serial = run_verification(chart, explicit, seed=42, samples=16, jobs=1)
    parallel = run_verification(chart, explicit, seed=42, samples=16, jobs=3)
    assert serial.to_json() == parallel.to_json()


def test_adversarial_fixture_fails_isotropy_and_skips_geometry():
    chart, explicit = builtin_chart("nonisotropic-cubic")
    report = run_verification(chart, explicit, seed=42, samples=10)
    assert not report.passed
    by_name = {c.name: c for c in report.checks}
    isotropy = by_name["isotropy"]
    assert isotropy.failures == 1
    assert isotropy.witness is not None
    for name in ("slide-identity", "pencil-split", "boundary-cosets", "line-boundary"):
        check = by_name[name]
        assert check.skips == check.samples
        assert "isotropy" in check.witness
    # algebra checks are independent of isotropy and still pass
    for name in ("group-law", "maurer-cartan", "levi-tensor"):
        assert by_name[name].failures == 0
        assert by_name[name].passes == by_name[name].samples


def test_explicit_omega_reported_without_construction():
    chart, explicit = builtin_chart("nonisotropic-cubic")
    report = run_verification(chart, explicit, seed=42, samples=5)
    assert report.dims["dimWprime"] is None
    assert report.dims["dimU"] == 1


def test_flat_linear_boundary_cosets_have_fallback():
    """Full projectivization leaves no W-escape; the distinct-coset
    samples fall back to distinct parameters instead of skipping."""
    chart, explicit = builtin_chart("flat-linear")
    report = run_verification(chart, explicit, seed=42, samples=20)
    cosets = next(c for c in report.checks if c.name == "boundary-cosets")
    assert cosets.failures == 0
    assert cosets.passes == cosets.samples
