import json
import math

import pytest

from mie_nd.report import FLAGGED, MATCH, MISMATCH, SweepConfig, build_report

SMALL = SweepConfig(potentials=((2.0, 1.0, 0.0),), dims=(3,), ells=(1,), n_r_max=1, ladder_n_max=3,
                    matrix_n_max=3)


@pytest.fixture(scope="module")
def default_report():
    return build_report()


def test_default_report_has_no_mismatch(default_report):
    counts = default_report.counts()
    assert counts[MISMATCH] == 0
    assert counts[MATCH] > 1000


@pytest.mark.parametrize("name", [
    "probe/alpha_definition",
    "probe/epsilon_decay_rate",
    "probe/laguerre_norm_integral",
    "probe/rddr_identity_sign",
    "probe/modified_kratzer_mapping",
    "probe/creation_operator_constant",
    "probe/degeneracy_table_entry",
])
def test_named_probes_are_flagged(default_report, name):
    item = next(it for it in default_report.items if it.name == name)
    assert item.status == FLAGGED
    assert item.rel_error <= item.tolerance
    assert item.literal_error > item.tolerance
    assert item.corrected_form and item.paper_value_or_form


def test_items_sorted_and_statuses_consistent(default_report):
    names = [it.name for it in default_report.items]
    assert names == sorted(names)
    for it in default_report.items:
        assert it.rel_error >= 0
        if it.status == MATCH:
            assert it.rel_error <= it.tolerance


def test_empty_sweep_gives_empty_report():
    assert build_report(SweepConfig.empty()).items == ()


def test_corrupted_decay_rate_is_caught():
    rep = build_report(SweepConfig(potentials=SMALL.potentials, dims=(3,), ells=(1,), n_r_max=1,
                                   ladder_n_max=2, matrix_n_max=2, epsilon_scale=1.3, probes=False))
    assert rep.counts()[MISMATCH] > 0
    assert not rep.ok


def test_strict_literal_turns_flags_into_mismatches():
    rep = build_report(SweepConfig.empty().__class__(potentials=(), strict_literal=True))
    assert rep.counts()[FLAGGED] == 0
    assert any(it.name == "probe/epsilon_decay_rate" for it in rep.mismatches())


def test_deterministic_serialisation():
    a = build_report(SMALL)
    b = build_report(SMALL)
    assert a.to_json() == b.to_json()
    assert a.to_jsonl() == b.to_jsonl()


def test_json_round_trips_numbers():
    rep = build_report(SMALL)
    doc = json.loads(rep.to_json())
    assert "config" in doc["header"]
    for item, raw in zip(rep.items, doc["items"]):
        for key in ("computed", "oracle", "rel_error"):
            value = getattr(item, key)
            assert raw[key] == value or (math.isnan(value) and math.isnan(raw[key]))


def test_jsonl_lines_parse():
    lines = build_report(SMALL).to_jsonl().splitlines()
    parsed = [json.loads(line) for line in lines]
    assert "header" in parsed[0]
    assert all("name" in p for p in parsed[1:])


def test_tolerance_override_is_applied():
    rep = build_report(SweepConfig(potentials=SMALL.potentials, dims=(3,), ells=(1,), n_r_max=0,
                                   ladder_n_max=1, matrix_n_max=1, probes=False,
                                   tolerances={"energy": 1e-30}))
    energy_items = [it for it in rep.items if it.name.startswith("energy/")]
    assert energy_items and all(it.status == MISMATCH for it in energy_items)


def test_unphysical_channels_are_skipped():
    rep = build_report(SweepConfig(potentials=((1.0, -5.0, 0.0),), dims=(3,), ells=(0,), probes=False))
    assert rep.items == ()
