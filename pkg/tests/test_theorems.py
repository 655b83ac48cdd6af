import pytest

from app.services.chern import build_context
from app.services.theorems import (
    THEOREM_IDS,
    run_verifier,
    verify_lipman,
    verify_modified_koszul,
)
from app.utils.exceptions import ClosureUnsupported, InvalidField

from tests.conftest import job

CUSP = dict(vars=["a", "b"], quotient=["b^2 - a^3"], ideal=["a", "b"], reduction=["a"], max_n=10)
SEMIGROUP = dict(vars=["a", "b", "c"], quotient=["b^2 - a*c", "a^3 - c^2"], ideal=["a", "b", "c"],
                 reduction=["a"], max_n=10)
EMBEDDED_POINT = dict(vars=["x", "y"], quotient=["y^2", "x*y"], ideal=["x", "y"], reduction=["x"], max_n=10)
PLANE_SQUARE = dict(vars=["x", "y"], ideal=["x^2", "x*y", "y^2"], reduction=["x^2", "y^2"], max_n=10)
QUARTIC = dict(vars=["x", "y"], ideal=["x^4", "x^3*y", "x*y^3", "y^4"], reduction=["x^4", "y^4"], max_n=10)


def verdict(theorem_id, **document):
    return run_verifier(theorem_id, job(**document)).verdict


def test_cusp_verdicts():
    assert verdict("huneke-dim1", **CUSP) == "verified"
    assert verdict("lipman", **CUSP) == "verified"
    assert verdict("sally", **CUSP) == "hypothesis-not-met"


def test_semigroup_verdicts():
    assert verdict("sally", **SEMIGROUP) == "verified"
    assert verdict("lipman", **SEMIGROUP) == "verified"
    assert verdict("huneke-dim1", **SEMIGROUP) == "hypothesis-not-met"


def test_sally_reports_the_colength():
    report = run_verifier("sally", job(**SEMIGROUP))
    assert report.values["length_I2_over_xI"] == 1
    assert report.values["e0"] == 4
    assert report.values["e1"] == 4
    assert all(row.status == "verified" for row in report.conclusions)


def test_lipman_needs_a_nonzerodivisor():
    report = run_verifier("lipman", job(**EMBEDDED_POINT))
    assert report.verdict == "hypothesis-not-met"
    assert report.conclusions == []
    assert report.hypotheses[-1].status == "failed"


def test_lipman_equality_starts_where_the_reduction_does():
    report = verify_lipman(build_context(job(**CUSP)))
    assert report.values == {"e0": 2, "first_equality": 2}


def test_dimension_mismatch_is_not_a_violation():
    assert verdict("lipman", **PLANE_SQUARE) == "hypothesis-not-met"
    assert verdict("modified-koszul", **CUSP) == "hypothesis-not-met"


def test_fundamental_lemma_and_koszul_identity():
    report = run_verifier("fundamental-lemma", job(**PLANE_SQUARE))
    assert report.verdict == "verified"
    assert report.values == {"e1": 1, "tail": 0}
    assert verdict("modified-koszul", **PLANE_SQUARE) == "verified"
    assert verdict("fundamental-lemma", **QUARTIC) == "verified"
    assert verdict("modified-koszul", **QUARTIC) == "verified"


def test_koszul_identity_at_a_single_n():
    report = verify_modified_koszul(build_context(job(**PLANE_SQUARE)), n=1)
    assert len(report.conclusions) == 1
    assert report.conclusions[0].witness == "3 vs 3 - 0 + 0"


def test_rees():
    assert verdict("rees", **CUSP) == "verified"
    report = run_verifier("rees", job(vars=["x"], ideal=["x^2"], reduction=["x^3"], max_n=10))
    assert report.verdict == "hypothesis-not-met"
    assert report.values == {"e0_J": 3, "e0_F": 2, "colength_J": 3}
    e0_row = report.hypotheses[-1]
    assert e0_row.name == "e_0(J) = e_0(F)"
    assert e0_row.witness == "3 vs 2"


def test_rees_needs_a_candidate():
    with pytest.raises(InvalidField):
        run_verifier("rees", job(vars=["x"], ideal=["x^2"], max_n=10))


def test_closure_dim2():
    report = run_verifier("closure-dim2", job(vars=["x", "y"], ideal=["x^3", "y^2"], max_n=10))
    assert report.verdict == "verified"
    assert report.values == {"e0": 6, "e1": 1, "term_sum": 1}


def test_closure_dim2_rejections():
    with pytest.raises(ClosureUnsupported):
        run_verifier("closure-dim2", job(vars=["x", "y"], ideal=["x^3", "x*y", "y^2"], max_n=10))
    with pytest.raises(ClosureUnsupported):
        run_verifier("closure-dim2", job(vars=["x", "y"], ideal=["y^2", "x^3"], max_n=10))
    with pytest.raises(ClosureUnsupported):
        run_verifier("closure-dim2", job(**EMBEDDED_POINT))


def test_unknown_theorem():
    assert "sally" in THEOREM_IDS
    with pytest.raises(InvalidField):
        run_verifier("briancon-skoda", job(**CUSP))
