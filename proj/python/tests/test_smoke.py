import math
import random

import pytest

import advice_lab as al


def test_grover_matches_closed_form():
    perm = list(range(64))
    random.Random(1).shuffle(perm)
    res = al.grover_invert(perm, 17, 6)
    expected = math.sin(13 * math.asin(1 / 8)) ** 2
    assert res["success_probability"] == pytest.approx(expected, abs=1e-9)
    assert res["queries"] == 12
    assert sum(res["magnitudes"]) == pytest.approx(12.0)
    assert perm[res["candidate"]] == 17


def test_parity_worked_example():
    pad = al.parity_preprocess("10110100", 2)
    assert pad["parities"] == "11"
    assert al.parity_answer(2, pad, "10110100") == (1, 3)


def test_iterate_table_anchors():
    perm = [(x + 1) % 8 for x in range(8)]
    table = al.hellman_build(perm, 3)
    assert table["cycles"][0]["anchors"] == [[0, 3, 3], [3, 6, 3], [6, 0, 2]]
    assert al.hellman_invert(4, table, perm) == (3, 3)


def test_rank_codecs_use_python_ints():
    big = list(range(30))[::-1]
    r = al.rank_perm(big)
    assert r == math.factorial(30) - 1
    assert al.unrank_perm(r, 30) == big
    assert al.rank_set([0, 1, 2], 6) == 0
    assert al.unrank_set(19, 6, 3) == [3, 4, 5]


def test_collision():
    x, y = al.collision_in_window([0b0000, 0b0110, 0b1001], 4, [1, 2])
    assert {x, y} == {0b0000, 0b0110}


def test_compress_roundtrip():
    perm = list(range(16))
    random.Random(5).shuffle(perm)
    out = al.compress_roundtrip(perm, 2, [1, 4, 9, 13])
    assert out["envelope"] is not None
    assert set(out["envelope"]) >= {"S", "good_count", "r_size", "ranks", "advice", "logical_bits"}
    assert out["decoded"] == perm


def test_run_command_reports_violations_list():
    table = al.run_command("verify", suite="codec", trials=5)
    assert table["violations"] == []
    assert len(table["rows"]) == 5


def test_bad_input_raises():
    with pytest.raises(ValueError):
        al.grover_invert([0, 0, 1, 2], 1)
