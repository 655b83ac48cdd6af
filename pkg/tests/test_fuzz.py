import random

import pytest

from app.services.fuzz import random_dim1_job, random_dim2_job, run_campaign
from app.utils.exceptions import InvalidField


def test_dim2_jobs_are_m_primary_staircases():
    rng = random.Random(3)
    for case_seed in range(5):
        job = random_dim2_job(rng, 4, case_seed)
        assert job.vars == ["x", "y"]
        assert job.seed == case_seed
        assert any(g.startswith("x") and "y" not in g for g in job.ideal)
        assert any(g.startswith("y") for g in job.ideal)


def test_dim1_jobs_live_on_a_monomial_curve():
    rng = random.Random(5)
    for case_seed in range(5):
        job = random_dim1_job(rng, 4, case_seed)
        assert len(job.quotient) == 1
        assert len(job.reduction) == 1


def test_campaign_is_reproducible():
    first = run_campaign(2, 3, seed=1, max_deg=3, workers=1)
    second = run_campaign(2, 3, seed=1, max_deg=3, workers=1)
    assert [c.job for c in first.cases] == [c.job for c in second.cases]
    assert [c.e for c in first.cases] == [c.e for c in second.cases]
    assert [c.index for c in first.cases] == [0, 1, 2]


def test_small_campaigns_are_clean():
    for dim in (1, 2):
        report = run_campaign(dim, 3, seed=2, max_deg=3, workers=1)
        assert report.consistent_count == 3
        assert report.violation_count == 0


def test_threaded_campaign_keeps_case_order():
    report = run_campaign(2, 2, seed=4, max_deg=3, workers=2)
    assert [c.index for c in report.cases] == [0, 1]


@pytest.mark.parametrize("kwargs", [
    dict(dim=3, count=1),
    dict(dim=2, count=-1),
    dict(dim=2, count=1, max_deg=0),
])
def test_invalid_campaigns(kwargs):
    with pytest.raises(InvalidField):
        run_campaign(**kwargs)
