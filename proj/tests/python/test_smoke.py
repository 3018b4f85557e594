import pytest

import anosovkit as ak


@pytest.fixture(autouse=True)
def _cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ANOSOVKIT_CACHE_DIR", str(tmp_path / "cache"))


def test_weyl_info():
    info = ak.weyl_info("B3")
    assert info["order"] == 48
    assert info["positive_roots"] == 9


def test_a2_unique_ideal():
    fc = ak.FlagConfiguration("A2")
    assert fc.flag_dimension == 3
    res = ak.enumerate_ideals(fc)
    assert res["count"] == 1
    assert res["ideals"][0]["ell"] == 1


def test_count_only_and_extremes():
    fc = ak.FlagConfiguration("A4")
    full = ak.enumerate_ideals(fc, threads=2)
    counted = ak.enumerate_ideals(fc, count_only=True)
    assert counted["count"] == full["count"] == len(full["ideals"])
    assert counted["ideals"] == []
    e = ak.length_extremes(fc)
    ells = [b["ell"] for b in full["ideals"]]
    assert (e["min_ell"], e["max_ell"]) == (min(ells), max(ells))


def test_length_bound():
    assert not ak.verify_length_bound(ak.FlagConfiguration("B2"))["pass"]
    report = ak.verify_length_bound(ak.FlagConfiguration("F4"))
    assert report["pass"] and report["complete"]


def test_certify_and_presets():
    qf = ak.resolve_preset("qf")
    assert qf["strict"] is True
    v = ak.certify(10, 7, qf["value"], qf["strict"], 4)
    assert v["certified"]
    assert ak.max_certified_k(3, 1, "2", False) == 1
    lattice = ak.resolve_preset("son1-lattice(3)")
    assert lattice["value"] == "2"


def test_sweep_and_moduli():
    rows = ak.sweep(["A2", "G2"], threads=2)
    assert [r["all_certified"] for r in rows] == [False, True]
    m = ak.moduli(2, "A1")
    assert (m["qf_surface_complex_dim"], m["hitchin_real_dim"]) == (9, 12)


def test_homalg_round_trip():
    dc = ak.random_complex(7, width=4, height=4, max_dim=8, pieces=4)
    assert ak.validate_complex(dc)["ok"]
    limit = ak.limit_page(dc, "vertical")
    totals = ak.total_cohomology(dc)
    for n, h in enumerate(totals):
        assert h == sum(limit["dims"][p][n - p] for p in range(len(limit["dims"])) if 0 <= n - p < len(limit["dims"][p]))
    assert ak.ldt(dc)["exact"]


def test_group_cohomology():
    pres = ak.surface_presentation(2)
    c = ak.group_cohomology(pres, ak.trivial_representation(4, 1))
    assert (c["z1"], c["b1"], c["h1"], c["h0"]) == (4, 0, 4, 1)


def test_errors():
    with pytest.raises(ak.ParseError):
        ak.FlagConfiguration("Z9")
    with pytest.raises(ak.ValidationError):
        ak.FlagConfiguration("A2", pa="1")
    with pytest.raises(ak.SearchLimitError):
        ak.enumerate_ideals(ak.FlagConfiguration("D4"), max_nodes=50)
    assert issubclass(ak.SearchLimitError, ak.ResourceLimitError)


def test_configuration_presets():
    fc, bound = ak.configuration("ghys")
    ideals = ak.enumerate_ideals(fc)["ideals"]
    assert len(ideals) == 1
    assert ak.max_certified_k(fc.flag_dimension, ideals[0]["ell"], bound["value"], bound["strict"]) == 1
    lh = ak.resolve_configuration("line-hyperplane(4)")
    assert (lh["type"], lh["pa"], lh["pd"]) == ("A4", "2,3", "")
