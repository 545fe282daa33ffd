import csv
import io

from gallai_lab import checks
from gallai_lab.constructions import construct_G1


def test_scenario_registry_ids():
    assert {"gr3-k13-2k2", "gm6-k3-2k2-upper", "broom-factor2", "formula-ledger"} <= set(checks.SCENARIOS)


def test_small_sweeps_have_no_failures():
    assert not checks.gallai_sweep(n_max=5, k_max=3)["failures"]
    assert not checks.k13_sweep(ns=(4, 5), k_max=4)["failures"]
    assert not checks.p5_sweep(ns=(5,), k_max=4)["failures"]
    assert not checks.broom_sweep(n_max=6)["failures"]


def test_canonical_avoider_counts():
    from gallai_lab.patterns import SubgraphPattern
    levels = checks.canonical_avoiders(SubgraphPattern.triangle(), 5, 4)
    assert [len(levels[n]) for n in range(2, 6)] == [1, 2, 8, 36]


def test_g1_clause_validator():
    c = construct_G1(6, (2, 2, 2))
    parts = [[0, 1], [2, 3], [4, 5]]
    ident = {1: 1, 2: 2, 3: 3}
    assert checks.g1_clauses_hold(c, parts, ident)
    assert not checks.g1_clauses_hold(c, [[0, 2], [1, 3], [4, 5]], ident)


def test_broom_table_shows_factor_two():
    rows = checks.broom_factor_table()
    assert len(rows) == 25
    assert all(r["factor_two"] for r in rows)


def test_ledger_rows_are_complete_and_parse_as_csv():
    rows = checks.formula_ledger()
    assert len(rows) > 40
    for r in rows:
        assert set(r) == set(checks.LEDGER_FIELDS)
        assert r["formula_value"] not in ("", "None")
        assert r["oracle_value"] not in ("", "None")
    parsed = list(csv.DictReader(io.StringIO(checks.ledger_csv(rows))))
    assert len(parsed) == len(rows)
    lem = {(r["params"], r["variant"]): r for r in rows if r["formula"] == "lemcount"}
    assert lem[("k=3;i=2", "statement")]["oracle_value"] == "2"


def test_check_result_serialization():
    res = checks.run_scenario("stripes-2-2")
    d = res.to_dict(deterministic=True)
    assert "elapsed" not in d and d["passed"] is True
    assert "elapsed" in res.to_dict()
