import json
import shutil

import pytest

from iqhecke.bundle import DEFAULT_BUNDLE_DIR, BundleError, FixtureBundle
from iqhecke.verify import run_checks


def test_default_bundle_loads(bundle):
    assert bundle.group.h == 4
    assert set(bundle.eigensystem_tables) == {"2.1", "16.1", "25.1", "7.2", "64.1"}
    assert len(bundle.dimension_rows) == 65
    assert len(bundle.hecke_field_rows) == 78
    assert "2.0.68.1-7.2-a2" in bundle.curves


def test_newform_records_shapes(bundle):
    from iqhecke.quadfield import label

    records = bundle.newform_records()
    lev21 = [r for r in records if label(r.level) == "2.1"]
    assert len(lev21) == 1 and lev21[0].shape == "joined"
    lev71 = [r for r in records if label(r.level) == "7.1"]
    assert len(lev71) == 1 and lev71[0].shape == "split"
    st = [r for r in records if r.selftwist is not None]
    assert len(st) == 2
    assert all(r.shape == "selftwist" and label(r.level) == "64.1" for r in st)
    # both involution sides carry one self-twist record of degree 1
    assert sorted(r.side for r in st) == ["minus", "plus"]


def test_bundle_detects_broken_pin(tmp_path):
    target = tmp_path / "bundle"
    shutil.copytree(DEFAULT_BUNDLE_DIR, target)
    field = json.loads((target / "field_68.json").read_text())
    field["class_group"]["h"] = 5
    (target / "field_68.json").write_text(json.dumps(field))
    with pytest.raises(BundleError):
        FixtureBundle(target)


def test_bundle_missing_hecke_fields_skips_check(tmp_path):
    target = tmp_path / "bundle"
    shutil.copytree(DEFAULT_BUNDLE_DIR, target)
    (target / "hecke_fields_68.json").unlink()
    b = FixtureBundle(target)
    assert b.hecke_field_rows is None
    results = run_checks(b, ["hecke-fields"])
    assert len(results) == 1 and results[0].skipped
    # the dimension table still validates without shape pins
    results2 = run_checks(b, ["dimension-table"])
    assert results2[0].passed


def test_mutated_alpha_fails_exactly_affected_checks(tmp_path):
    target = tmp_path / "bundle"
    shutil.copytree(DEFAULT_BUNDLE_DIR, target)
    data = json.loads((target / "eigensystems_2.1.json").read_text())
    assert data["systems"][0]["alpha"]["3.1"] == "2*sqrt2"
    data["systems"][0]["alpha"]["3.1"] = "3*sqrt2"
    (target / "eigensystems_2.1.json").write_text(json.dumps(data))
    b = FixtureBundle(target)
    results = run_checks(b)
    failed = {r.name for r in results if not r.passed and not r.skipped}
    assert failed == {"recovery-2.1", "structure-detectors"}


def test_bundle_rejects_bad_json(tmp_path):
    target = tmp_path / "bundle"
    shutil.copytree(DEFAULT_BUNDLE_DIR, target)
    (target / "eigensystems_2.1.json").write_text("{not json")
    with pytest.raises(Exception):
        FixtureBundle(target)


def test_missing_directory():
    with pytest.raises(BundleError):
        FixtureBundle("/nonexistent/bundle/dir")
