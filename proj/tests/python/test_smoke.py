import os
import pathlib

import pytest

import omegatrans as ot

MACHINES = pathlib.Path(
    os.environ.get("OMEGATRANS_MACHINES", pathlib.Path(__file__).resolve().parents[2] / "machines")
)


def machine(name):
    return ot.load(str(MACHINES / name))


def test_map_copy_reverse():
    mcr = machine("mcr_rbt.json")
    assert isinstance(mcr, ot.Transducer)
    assert mcr.is_reversible()
    r = ot.evaluate(mcr, "(ab#)")
    assert r.verdict == "Accepted"
    assert r.output == "(ab#ba#)"
    assert str(r) == "Accepted output=(ab#ba#)"
    assert ot.evaluate(mcr, "ab#(a)").output == "ab#ba#(a)"


def test_sst_and_equivalence():
    sst = machine("mcr_sst.json")
    assert isinstance(sst, ot.Sst)
    assert sst.registers == ["out", "X"]
    rep = ot.equiv(machine("mcr_rbt.json"), sst, exhaustive=(2, 3))
    assert rep["disagreements"] == []
    assert rep["inconclusive"] == 0
    rev = ot.sst_to_reversible(sst)
    assert rev.is_reversible()
    assert ot.equiv(rev, sst, random=(40, 1))["disagreements"] == []


def test_constructions():
    mcr = machine("mcr_rbt.json")
    assert ot.compose(mcr, mcr).num_states == 9
    assert ot.buchi_to_noacc(mcr, "all").num_states == 9
    assert ot.two_way_to_sst(mcr).is_copyless()
    fm = machine("finitely_many_a.json")
    rev = ot.one_way_to_reversible(fm)
    assert rev.is_reversible()
    assert ot.evaluate(rev, "ab(b)").output == "a(b)"
    assert ot.evaluate(rev, "(ab)").verdict == "RejectedParity"
    assert ot.evaluate(ot.drop_acceptance(fm), "(ab)").output == "(ab)"
    d = ot.dbt_to_rbt(ot.generate("2dpt", seed=4, n=3))
    assert d.is_reversible()


def test_errors():
    fm = machine("finitely_many_a.json")
    with pytest.raises(ot.NotReversible):
        ot.compose(fm, fm)
    with pytest.raises(ot.ParseError):
        ot.evaluate(fm, "(c)")
    with pytest.raises(ot.ParseError):
        ot.parse("{")
    with pytest.raises(ot.Error):
        ot.two_way_to_sst(machine("mcr_rbt.json"), max_states=0)


def test_round_trip_and_lassos():
    g = ot.generate("cpsst", seed=3, registers=3)
    again = ot.parse(g.to_json())
    assert again.to_json() == g.to_json()
    assert len(ot.canonical_lassos(["a", "b"], 2, 2)) == 16
    assert ot.generate("1dpt", seed=9).to_json() == ot.generate("1dpt", seed=9).to_json()
