import json

import pytest

import rdbound


def test_r7_chain():
    cert = rdbound.bound_f(42, 0, [1, 1, 1, 1, 1], table="builtin-prior", fastpath=False)
    assert cert.value == 73
    assert cert.chain().endswith("f^42_5(0) + 68 = 73")
    assert cert.replay() == 73
    assert cert.stats["inequalities"] == 6


def test_json_round_trip():
    cert = rdbound.bound_f(203, 0, "1,1,1,1,1,1", table="builtin-new")
    back = rdbound.certificate_from_json(cert.to_json())
    assert back.value == cert.value == 154
    assert json.loads(cert.to_json())["header"]["value"] == "154"


def test_big_integers():
    level = 2**100 - 31
    assert rdbound.rd(2**100, table="builtin-new") == level
    assert rdbound.bound_f(level, 0, [4320], table="builtin-new").value == 9120320
    assert rdbound.coarse_bound_f(level, 0, [4320], table="builtin-new") == 9333360


def test_types():
    assert rdbound.endo([1, 1, 1], 2) == [6, 3, 1]
    assert rdbound.norm([6, 3, 1]) == 10
    assert rdbound.prefix_norm_sum([1, 1, 1], 2) == 9


def test_errors():
    with pytest.raises(rdbound.LevelTooLow):
        rdbound.bound_f(1, 0, [0] * 10 + [1])
    with pytest.raises(rdbound.StepBudgetExceeded):
        rdbound.bound_f(42, 0, [1] * 5, max_steps=3)
    with pytest.raises(ValueError):
        rdbound.bound_f(1, 0, "1,x")


def test_sharpen_and_tables():
    assert rdbound.hamilton("builtin-new")[7] == 75
    report = rdbound.sharpen(7)
    assert report["best_bound"] == "75"
    sweep = rdbound.sharpen_all(11, 12)
    assert [r["best_bound"] for r in sweep["reports"]] == ["59050", "332641"]


def test_sporadic():
    rows = {v["name"]: v for v in rdbound.sporadic()}
    assert len(rows) == 26
    assert rows["M"]["f_bound"] == "168825"
    assert all(v["ok"] for v in rows.values())
