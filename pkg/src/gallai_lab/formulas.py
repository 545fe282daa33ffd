"""Closed-form values: Ramsey/Gallai-Ramsey numbers and multiplicity bounds.

All arithmetic is exact.  Binomials with out-of-range arguments are 0 and
``(-1)!! = 0!! = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb as _comb, factorial, isqrt


class FormulaError(ValueError):
    pass


class RegimeGap(FormulaError):
    """(k, n) falls between the intervals of a piecewise table."""


@dataclass(frozen=True)
class FormulaResult:
    id: str
    params: dict = field(hash=False)
    value: int | Fraction
    variant: str | None = None

    def to_dict(self) -> dict:
        v = self.value
        return {"id": self.id, "params": dict(self.params), "variant": self.variant,
                "value": v if isinstance(v, int) else str(v)}


def binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return _comb(a, b)


@lru_cache(maxsize=None)
def double_factorial(m: int) -> int:
    if m < -1:
        raise FormulaError(f"double factorial undefined for {m}")
    if m <= 0:
        return 1
    return m * double_factorial(m - 2)


def n_k_threshold(k: int) -> int:
    """Smallest m with C(m, 2) >= k; equals ceil((1 + sqrt(1 + 8k)) / 2)."""
    if k < 1:
        raise FormulaError("k must be >= 1")
    m = 2
    while m * (m - 1) // 2 < k:
        m += 1
    assert m == ceil_half_one_plus_sqrt(k)
    return m


def ceil_half_one_plus_sqrt(k: int) -> int:
    """ceil((1 + sqrt(1 + 8k)) / 2) in integer arithmetic."""
    s = 1 + 8 * k
    r = isqrt(s)
    if r * r == s:
        return (1 + r + 1) // 2
    return (1 + r) // 2 + 1


def ramsey_matchings(n_list) -> int:
    ns = list(n_list)
    if not ns:
        raise FormulaError("need at least one matching size")
    if any(x < 1 for x in ns):
        raise FormulaError("matching sizes must be positive")
    return max(ns) + 1 + sum(x - 1 for x in ns)


def gr_p5_general(k: int, t: int, h_is_complete: bool) -> int:
    if k < 5 or k < t:
        raise FormulaError("requires k >= 5 and k >= t")
    if k >= t + 1:
        return max(ceil_half_one_plus_sqrt(k), 5)
    return (t - 1) ** 2 + 1 if h_is_complete else t + 1


def gr_p5_matching(k: int, n: int) -> int:
    if k < 3 or n < 2:
        raise FormulaError("requires k >= 3 and n >= 2")
    if k == 3:
        return 4 * n - 2
    if 4 <= k and 2 * k <= n + 3:
        return 3 * n - 1
    if n + 5 <= 2 * k and k <= 2 * n:
        return 2 * n + 1
    if k >= 2 * n + 1:
        return max(ceil_half_one_plus_sqrt(k), 5)
    raise RegimeGap(f"gr_k(P5:nK2) table has no regime for k={k}, n={n}")


def gr_k13_matching(k: int, n: int) -> int:
    # the k = 3 column takes precedence where it overlaps k >= n + 1 (n = 2)
    if k < 3 or n < 2:
        raise FormulaError("requires k >= 3 and n >= 2")
    if k == 3:
        return 4 * n - 2
    if 4 <= k and 2 * k <= n + 3:
        return 3 * n - 1
    if n + 4 <= 2 * k and k <= n:
        return 2 * n
    if k >= n + 1:
        return ceil_half_one_plus_sqrt(k)
    raise RegimeGap(f"gr_k(K13:nK2) table has no regime for k={k}, n={n}")


def gr_k3_matching(k: int, n: int) -> int:
    if k < 1 or n < 1:
        raise FormulaError("requires k >= 1 and n >= 1")
    return (k + 1) * (n - 1) + 2


def local_ramsey_matching(k: int, n: int) -> int:
    if k < 1 or n < 2:
        raise FormulaError("requires k >= 1 and n >= 2")
    return n + 1 + k * (n - 1)


def stripes_multiplicity_bound(n1: int) -> int:
    if n1 < 1:
        raise FormulaError("n1 must be >= 1")
    value = factorial(2 * n1) // (2 ** n1 * factorial(n1))
    assert value == double_factorial(2 * n1 - 1)
    return value


def gm3_k13_lower_terms(n: int) -> list[int]:
    return [binom((4 * n - 1 - r) // 3, n) + r * (4 * n - 5) for r in range(0, 4 * n - 1)]


def gm3_k13_lower(n: int) -> int:
    if n < 2:
        raise FormulaError("n must be >= 2")
    return min(gm3_k13_lower_terms(n))


def _lemcount_term(k1: int, x: int, i: int, variant: str) -> int:
    if variant == "statement":
        return (binom(k1, x) * binom(k1 - x, i - x) * 2 ** x * 4 ** (i - 2 * x)
                * double_factorial(2 * x - 1) * double_factorial(2 * i - 4 * x - 1))
    if variant == "proof":
        y = i - 2 * x
        return (binom(k1, x) * binom(k1 - x, y) * 2 ** x * 4 ** y
                * double_factorial(2 * x - 1) * double_factorial(2 * y - 1))
    raise FormulaError(f"unknown variant {variant!r}")


def lemcount_formula(k: int, i: int, variant: str = "statement") -> int:
    """Claimed number of color-1 ``i``-matchings in the rainbow-matching coloring of K_{2k-2}."""
    if k < 2 or not 0 <= i <= k:
        raise FormulaError("requires k >= 2 and 0 <= i <= k")
    return sum(_lemcount_term(k - 1, x, i, variant) for x in range(i // 2 + 1))


def _x_factor(k: int, i: int) -> int:
    return sum(binom(k - 1, x) * binom(k - 1 - x, i - 2 * x) * 2 ** x * 4 ** (i - 2 * x)
               * double_factorial(2 * x - 1) * double_factorial(2 * i - 4 * x - 1)
               for x in range(i // 2 + 1))


def gm_p5_upper_small(k: int, n: int) -> int:
    """Upper bound on GM_k(P5:nK2) for n <= 2k - 4; the i-dependent factor sits inside the sum."""
    if k < 5 or n < 2 or n > 2 * k - 4:
        raise FormulaError("requires k >= 5 and 2 <= n <= 2k - 4")
    return sum(_x_factor(k, i) * binom(2 * k - 4, n - i) * binom(n, n - i) * factorial(n - i)
               for i in range(1, n + 1))


def _l_factor(k: int, i: int, variant: str) -> int:
    total = 0
    for x in range(i // 2 + 1):
        base = binom(k - 3, x) * binom(k - 3 - x, i - 2 * x) * 2 ** x * 4 ** (i - 2 * x)
        if variant == "statement":
            total += base * double_factorial(x - 1) * double_factorial(i - 2 * x - 1)
        elif variant == "lemma":
            total += base * double_factorial(2 * x - 1) * double_factorial(2 * i - 4 * x - 1)
        else:
            raise FormulaError(f"unknown variant {variant!r}")
    return total


def gm_p5_upper_large(k: int, n: int, variant: str = "statement") -> int:
    """Double-sum upper bound on GM_k(P5:nK2) for n >= 2k - 4.

    ``variant="statement"`` uses (x-1)!!(i-2x-1)!! as displayed;
    ``variant="lemma"`` uses the (2x-1)!!(2i-4x-1)!! factors of the counting lemma.
    """
    if k < 5 or n < 2 * k - 4:
        raise FormulaError("requires k >= 5 and n >= 2k - 4")
    total = 0
    for i in range(1, k - 2):
        L = _l_factor(k, i, variant)
        for j in range(1, n - 2 * k + 7):
            M = binom(n - 2 * k + 6, j) * binom(2 * k - 6 - 2 * i, j) * factorial(j)
            r = n - i - j
            if r < 0:
                continue
            total += L * M * binom(2 * n - 1, r) * binom(n - 2 * k + 6 - 2 * i - 2 * j, r) * factorial(r)
    return total


def tau_complete(m: int) -> int:
    """2-matchings of a monochromatic K_m."""
    return 3 * binom(m, 4)


def tau_recursion_lower(k: int, n: int) -> int | Fraction:
    if k < 3 or n < k + 3:
        raise FormulaError("requires k >= 3 and n >= k + 3")
    third = Fraction((2 * n - k - 4) * (k - 2), 2) + tau_complete(n - k)
    value = min(Fraction(2 * (n - 3)), Fraction(tau_complete(n - k + 1)), third)
    return int(value) if value.denominator == 1 else value


def broom_two_matchings_formula(m: int, leaves: int) -> int:
    if m < 2 or leaves < 0:
        raise FormulaError("requires m >= 2 and leaves >= 0")
    return (m - 1) * (m + 2 * leaves - 2)


# registry used by the CLI: id -> (callable, ordered parameter names)
FORMULAS = {
    "ramsey-matchings": (lambda n_list: ramsey_matchings(n_list), ("n_list",)),
    "gr-p5-general": (gr_p5_general, ("k", "t", "h_is_complete")),
    "gr-p5-matching": (gr_p5_matching, ("k", "n")),
    "gr-k13-matching": (gr_k13_matching, ("k", "n")),
    "gr-k3-matching": (gr_k3_matching, ("k", "n")),
    "local-ramsey-matching": (local_ramsey_matching, ("k", "n")),
    "stripes-multiplicity-bound": (stripes_multiplicity_bound, ("n1",)),
    "gm3-k13-lower": (gm3_k13_lower, ("n",)),
    "lemcount": (lemcount_formula, ("k", "i", "variant")),
    "gm-p5-upper-small": (gm_p5_upper_small, ("k", "n")),
    "gm-p5-upper-large": (gm_p5_upper_large, ("k", "n", "variant")),
    "tau-recursion-lower": (tau_recursion_lower, ("k", "n")),
    "broom-two-matchings": (broom_two_matchings_formula, ("m", "l")),
    "n-k-threshold": (n_k_threshold, ("k",)),
}


def evaluate(formula_id: str, params: dict) -> FormulaResult:
    if formula_id not in FORMULAS:
        raise FormulaError(f"unknown formula {formula_id!r}; known: {', '.join(sorted(FORMULAS))}")
    fn, names = FORMULAS[formula_id]
    args = []
    for name in names:
        if name in params:
            args.append(params[name])
        elif name == "variant":
            args.append("statement")
        else:
            raise FormulaError(f"formula {formula_id!r} needs parameter {name!r}")
    value = fn(*args)
    variant = params.get("variant", "statement") if "variant" in names else None
    return FormulaResult(formula_id, dict(params), value, variant)
