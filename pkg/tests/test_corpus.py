import json
import shutil

import pytest

from app.services.corpus import SIDECAR_SUFFIX, check_case, load_corpus, run_corpus


def test_corpus_loads_jobs_only(corpus_dir):
    cases = load_corpus(corpus_dir)
    names = [c.name for c in cases]
    assert names == sorted(names)
    assert "E1_regular_plane_square" in names
    assert not any(name.endswith(".expected") for name in names)
    assert all(c.sidecar_path.name == c.name + SIDECAR_SUFFIX for c in cases)


@pytest.mark.parametrize("name", [
    "E1_regular_plane_square",
    "E2_plane_quartic_staircase",
    "E3_embedded_point_line",
    "E4_cusp_maximal_ideal",
    "E5_semigroup_4_5_6",
    "E6_closure_x3_y2",
    "E7_cusp_rees",
    "E7_line_rees_negative",
])
def test_shipped_case_matches_its_sidecar(corpus_dir, name):
    case = next(c for c in load_corpus(corpus_dir) if c.name == name)
    result = check_case(case)
    assert result.passed, result.mismatches


def test_bless_then_check(tmp_path, corpus_dir):
    shutil.copy(corpus_dir / "E4_cusp_maximal_ideal.json", tmp_path)
    missing = run_corpus(tmp_path)
    assert not missing[0].passed
    assert "missing sidecar" in missing[0].mismatches[0]

    blessed = run_corpus(tmp_path, bless=True)
    assert blessed[0].blessed
    sidecar = json.loads((tmp_path / ("E4_cusp_maximal_ideal" + SIDECAR_SUFFIX)).read_text())
    assert set(sidecar) == {"hilbert", "e", "routes", "consistent"}
    assert sidecar["e"] == ["2", "1"]
    assert all(r.passed for r in run_corpus(tmp_path))


def test_mismatch_is_reported(tmp_path, corpus_dir):
    shutil.copy(corpus_dir / "E7_cusp_rees.json", tmp_path)
    (tmp_path / ("E7_cusp_rees" + SIDECAR_SUFFIX)).write_text(json.dumps({"e": ["2", "2"]}))
    [result] = run_corpus(tmp_path)
    assert not result.passed
    assert result.mismatches == ["e: expected ['2', '2'], got ['2', '1']"]
