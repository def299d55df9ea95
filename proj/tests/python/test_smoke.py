import json
from fractions import Fraction

import pytest

import lonely_spectrum as ls


def test_known_values():
    assert ls.ml([8, 3, 11, 19]).value == Fraction(7, 30)
    assert ls.ml([5, 6, 11, 17, 23, 28]).value == Fraction(8, 51)
    assert ls.ml([1, 2, 3]).value == Fraction(1, 4)
    assert ls.ml([5, 20]).value == Fraction(2, 5)


def test_witness_and_floor():
    r = ls.ml([1, 2, 3])
    assert r.exact
    assert r.witness_time == Fraction(1, 4)
    assert r.witness_pair == (0, 2)
    assert ls.loneliness_at([1, 2, 3], r.witness_time) == r.value

    early = ls.ml([1, 3, 5, 7], floor=Fraction(1, 4))
    assert not early.exact
    assert early.value == Fraction(1, 4)


def test_oracle_agrees():
    for t in ls.enumerate_primitive(3, 15):
        assert ls.ml(t).value == ls.oracle_ml(t).value


def test_classify():
    c = ls.classify(4, Fraction(7, 30))
    assert (c.kind, c.s, c.k_min, c.all_k) == ("spectrum-point", 7, 2, [2, 4])
    assert ls.spectrum_value(4, 7, 2) == Fraction(7, 30)
    assert ls.classify(4, Fraction(1, 3)).kind == "at-least-floor"


def test_shifted_and_lemmas():
    assert ls.shifted_ml([1, 2, 3], [0, 0, 0]).value == Fraction(1, 4)
    assert ls.shifted_ml([1, 2, 3], [Fraction(1, 2), 0, Fraction(1, 2)]).value == Fraction(1, 4)
    assert ls.lemma3_min_speed(Fraction(1, 3), Fraction(1, 12), 5) == 15
    assert ls.lemma4_condition(Fraction(2, 5), 4, 20, 100)
    assert not ls.lemma4_condition(Fraction(2, 5), 4, 20, 99)
    assert ls.prejump_invariant(6, 9, 3, Fraction(2, 7), 1)


def test_reports():
    assert ls.verify_family(0, 20)["all_pass"]
    t4 = ls.verify_theorem(4, 24)
    assert t4["claim_holds"]
    assert [e["speeds"] for e in t4["exceptions_found"]] == [[1, 2, 3, 12], [1, 2, 3, 24]]


def test_scan(tmp_path):
    out = tmp_path / "n4.jsonl"
    summary = ls.scan(4, 16, str(out), workers=2)
    assert summary["complete"]
    lines = out.read_text().splitlines()
    assert summary["total"] == len(lines) == len(ls.enumerate_primitive(4, 16))
    assert json.loads(lines[0])["speeds"] == [1, 2, 3, 4]


def test_errors():
    with pytest.raises(ValueError):
        ls.ml([0, 3])
    with pytest.raises(ValueError):
        ls.ml([2, 2])
    with pytest.raises(OverflowError):
        ls.ml([1, 2**31])
    with pytest.raises(ValueError):
        ls.classify(4, Fraction(2, 3))
    with pytest.raises(OSError):
        ls.scan(3, 10, "/nonexistent/dir/out.jsonl")
