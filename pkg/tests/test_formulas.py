import itertools
from fractions import Fraction
from math import comb, factorial, sqrt, ceil

import pytest
from hypothesis import given, strategies as st

from gallai_lab import formulas as F


def test_binomial_edge_cases():
    assert F.binom(5, 2) == 10
    assert F.binom(3, 5) == 0
    assert F.binom(3, -1) == 0
    assert F.binom(-2, 1) == 0


@given(st.integers(-1, 30))
def test_double_factorial_recurrence(m):
    if m <= 0:
        assert F.double_factorial(m) == 1
    else:
        assert F.double_factorial(m) == m * F.double_factorial(m - 2)


def test_double_factorial_rejects_below_minus_one():
    with pytest.raises(F.FormulaError):
        F.double_factorial(-3)


@given(st.integers(1, 5000))
def test_threshold_is_smallest_m_with_enough_edges(k):
    m = F.n_k_threshold(k)
    assert comb(m, 2) >= k > comb(m - 1, 2) or m == 2
    assert m == max(2, ceil((1 + sqrt(1 + 8 * k)) / 2 - 1e-12))


def _perfect_matchings(n):
    verts = list(range(n))

    def rec(vs):
        if not vs:
            return 1
        rest = vs[1:]
        return sum(rec(rest[:i] + rest[i + 1:]) for i in range(len(rest)))
    return rec(verts)


@pytest.mark.parametrize("n1", [1, 2, 3, 4, 5])
def test_stripes_bound_counts_perfect_matchings(n1):
    assert F.stripes_multiplicity_bound(n1) == _perfect_matchings(2 * n1)
    assert F.stripes_multiplicity_bound(n1) == factorial(2 * n1) // (2 ** n1 * factorial(n1))


def test_ramsey_matchings_values():
    assert F.ramsey_matchings([2, 2]) == 5
    assert F.ramsey_matchings([2, 2, 2]) == 6
    assert F.ramsey_matchings([3]) == 6
    with pytest.raises(F.FormulaError):
        F.ramsey_matchings([])


def test_gallai_ramsey_tables():
    assert F.gr_k13_matching(3, 2) == 6
    assert F.gr_k13_matching(4, 3) == 4
    assert F.gr_p5_matching(5, 2) == 5
    assert F.gr_p5_matching(3, 2) == 6
    assert F.gr_k3_matching(2, 3) == F.ramsey_matchings([3, 3])
    with pytest.raises(F.RegimeGap):
        F.gr_p5_matching(5, 6)  # 2k = n + 4 falls between the intervals


@pytest.mark.parametrize("n", range(2, 8))
def test_local_ramsey_two_colors_is_3n_minus_1(n):
    assert F.local_ramsey_matching(2, n) == 3 * n - 1


@pytest.mark.parametrize("k,n", [(k, n) for k in range(4, 12) for n in range(2, 12)])
def test_p5_table_dominates_k13_table_where_both_defined(k, n):
    try:
        a, b = F.gr_p5_matching(k, n), F.gr_k13_matching(k, n)
    except F.RegimeGap:
        return
    assert a >= b


def test_gr_p5_general_branches():
    assert F.gr_p5_general(6, 5, True) == max(F.n_k_threshold(6), 5)
    assert F.gr_p5_general(5, 5, True) == 17
    assert F.gr_p5_general(5, 5, False) == 6


def test_gm3_k13_lower_small_values():
    assert F.gm3_k13_lower(2) == 1
    terms = F.gm3_k13_lower_terms(2)
    assert len(terms) == 7
    assert terms[0] == comb(2, 2)


def test_lemcount_values_and_variants():
    assert F.lemcount_formula(3, 0) == 1
    assert F.lemcount_formula(3, 2, "statement") == 52
    assert F.lemcount_formula(3, 2, "proof") == 52
    assert F.lemcount_formula(4, 2, "statement") != F.lemcount_formula(4, 2, "proof")
    with pytest.raises(F.FormulaError):
        F.lemcount_formula(3, 2, "other")


def test_gm_p5_upper_bounds():
    assert F.gm_p5_upper_small(5, 4) == 183528
    assert F.gm_p5_upper_large(5, 6, "statement") == 0
    assert F.gm_p5_upper_large(5, 6, "lemma") == 0
    with pytest.raises(F.FormulaError):
        F.gm_p5_upper_small(5, 7)


def test_tau_helpers():
    assert F.tau_complete(4) == 3
    assert F.tau_complete(6) == 45
    assert F.tau_recursion_lower(3, 6) == Fraction(5, 2)
    assert F.tau_recursion_lower(5, 8) == 3


@pytest.mark.parametrize("m,leaves", list(itertools.product(range(2, 7), range(0, 5))))
def test_broom_expression_counts_ordered_pairs(m, leaves):
    # the expression counts each 2-matching once per ordering of its edges
    edges = [(i, i + 1) for i in range(m)] + [(m, m + 1 + j) for j in range(leaves)]
    ordered = sum(1 for e, f in itertools.permutations(edges, 2) if not set(e) & set(f))
    assert F.broom_two_matchings_formula(m, leaves) == ordered


def test_registry_evaluate():
    r = F.evaluate("gr-k13-matching", {"k": 3, "n": 2})
    assert r.value == 6
    assert F.evaluate("lemcount", {"k": 3, "i": 2}).variant == "statement"
    assert F.evaluate("tau-recursion-lower", {"k": 3, "n": 6}).to_dict()["value"] == "5/2"
    with pytest.raises(F.FormulaError):
        F.evaluate("nope", {})
    with pytest.raises(F.FormulaError):
        F.evaluate("gr-k3-matching", {"k": 2})
