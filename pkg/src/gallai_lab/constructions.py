"""Extremal colorings built from cliques joined by homogeneous colors.

Every generator returns an :class:`EdgeColoring`; :func:`build_construction`
adds the self-check of the properties the construction is meant to have.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import formulas
from .coloring import EdgeColoring, pair_table
from .patterns import (SubgraphPattern, count_monochromatic, count_rainbow)


class ConstructionError(ValueError):
    pass


class ConstructionClaimError(RuntimeError):
    pass


def blow_up(sizes, internal, between: Callable[[int, int], int], k: int | None = None) -> EdgeColoring:
    """Join cliques of the given sizes.

    ``internal[i]`` colors the edges inside part ``i``; ``between(i, j)`` with
    ``i < j`` colors every edge from part ``i`` to part ``j``.
    """
    owner = []
    for part, size in enumerate(sizes):
        owner.extend([part] * size)
    n = len(owner)
    cols = []
    for u, v in pair_table(n)[0]:
        a, b = owner[u], owner[v]
        cols.append(internal[a] if a == b else between(min(a, b), max(a, b)))
    if k is None:
        k = max(cols, default=1)
    return EdgeColoring(n, k, tuple(cols))


def part_vertices(sizes) -> list[list[int]]:
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


# ---------------------------------------------------------------------------
# lower-bound colorings for Gallai-Ramsey numbers
# ---------------------------------------------------------------------------

def construct_cyclic_blowup_3col(n: int) -> EdgeColoring:
    """Cliques of orders 2n-1, n-1, n-1 in colors 1, 2, 3 with between-colors 3, 1, 2."""
    if n < 2:
        raise ConstructionError("cyclic blow-up needs n >= 2")
    table = {(0, 1): 3, (1, 2): 1, (0, 2): 2}
    return blow_up((2 * n - 1, n - 1, n - 1), (1, 2, 3), lambda i, j: table[i, j], k=3)


def construct_dominant_matching(k: int, n: int) -> EdgeColoring:
    big = 2 * n - 2 * k + 3
    if k < 3 or big < 1:
        raise ConstructionError(f"need k >= 3 and 2n - 2k + 3 >= 1 (got k={k}, n={n})")
    sizes = (big,) + (2,) * (k - 2)
    return blow_up(sizes, tuple(range(2, k + 1)), lambda i, j: 1, k=k)


def construct_cone(k: int, n: int) -> EdgeColoring:
    """K_{2n-1} in color 1 plus one vertex whose edges cycle through colors 2..k."""
    if n < 1 or k < 2:
        raise ConstructionError("cone needs n >= 1 and k >= 2")
    if k - 1 > 2 * n - 1:
        raise ConstructionError(f"{k - 1} cone colors do not fit on {2 * n - 1} cone edges")
    apex = 2 * n - 1

    cols = []
    for u, v in pair_table(2 * n)[0]:
        cols.append(2 + u % (k - 1) if v == apex else 1)
    return EdgeColoring(2 * n, k, tuple(cols))


def construct_dominant_big(k: int, n: int) -> EdgeColoring:
    if k < 4 or n < 2 * k - 3:
        raise ConstructionError(f"need k >= 4 and n >= 2k - 3 (got k={k}, n={n})")
    sizes = (2 * n - 1, n - 2 * k + 5) + (2,) * (k - 3)
    return blow_up(sizes, tuple(range(2, k + 1)), lambda i, j: 1, k=k)


def construct_G1(n: int, sizes, mixed_seed: int | None = None) -> EdgeColoring:
    """Three-part coloring: V_i to V_{i+1} in color i, inside V_{i+1} color i or i+1.

    By default the inside color is i + 1; ``mixed_seed`` picks each inside
    edge's color at random from {i, i + 1}.
    """
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != 3 or sum(sizes) != n or min(sizes) < 0:
        raise ConstructionError(f"sizes {sizes} do not split {n} vertices into three parts")
    if sum(1 for s in sizes if s) < 2:
        raise ConstructionError("at least two parts must be non-empty")
    parts = part_vertices(sizes)
    owner = {v: p for p, vs in enumerate(parts) for v in vs}
    rng = random.Random(mixed_seed) if mixed_seed is not None else None
    cols = []
    for u, v in pair_table(n)[0]:
        a, b = owner[u], owner[v]
        if a == b:
            # part index a is V_{a+1}; inside V_{i+1} the choices are i or i+1
            i_plus_1 = a + 1
            i = (i_plus_1 - 2) % 3 + 1
            cols.append(rng.choice((i, i_plus_1)) if rng else i_plus_1)
        else:
            x, y = sorted((a, b))
            # V_1-V_2 -> 1, V_2-V_3 -> 2, V_3-V_1 -> 3
            cols.append({(0, 1): 1, (1, 2): 2, (0, 2): 3}[x, y])
    return EdgeColoring(n, 3, tuple(cols))


# ---------------------------------------------------------------------------
# upper-bound colorings for multiplicities
# ---------------------------------------------------------------------------

def construct_GM3_K13(n: int) -> EdgeColoring:
    if n < 2:
        raise ConstructionError("needs n >= 2")
    table = {(0, 1): 3, (1, 2): 1, (0, 2): 2}
    return blow_up((2 * n, n - 1, n - 1), (1, 2, 3), lambda i, j: table[i, j], k=3)


def construct_stripes_multiplicity(n_list) -> EdgeColoring:
    ns = [int(x) for x in n_list]
    if not ns or min(ns) < 1:
        raise ConstructionError("matching sizes must be positive")
    if ns[0] != max(ns):
        raise ConstructionError("the first matching size must be the largest")
    sizes = (2 * ns[0],) + tuple(x - 1 for x in ns[1:])
    # part j (0-based) carries color j + 1; part i joins earlier parts in color i + 1
    return blow_up(sizes, tuple(range(1, len(ns) + 1)), lambda i, j: j + 1, k=len(ns))


def construct_sequential_cones(k: int, base: int = 4) -> EdgeColoring:
    if k < 2 or base < 2:
        raise ConstructionError("needs k >= 2 and base >= 2")
    sizes = (base,) + (1,) * (k - 1)
    return blow_up(sizes, (1,) * (k + 0), lambda i, j: j + 1, k=k)


def construct_gm_k3_matching(k: int, n: int) -> EdgeColoring:
    if k < 2 or n < 2:
        raise ConstructionError("needs k >= 2 and n >= 2")
    sizes = (2 * n,) + (n - 1,) * (k - 1)
    return blow_up(sizes, tuple(range(1, k + 1)), lambda i, j: j + 1, k=k)


def construct_prop_k2n(k: int, n: int) -> EdgeColoring:
    """K_n in color 2 plus pairs in colors 3..k, everything between in color 1."""
    if k < 5 or n < 2 or n > 2 * k - 4:
        raise ConstructionError(f"needs k >= 5 and 2 <= n <= 2k - 4 (got k={k}, n={n})")
    sizes = (n,) + (2,) * (k - 2)
    return blow_up(sizes, tuple(range(2, k + 1)), lambda i, j: 1, k=k)


def construct_thm_k3n1(k: int, n: int) -> EdgeColoring:
    if k < 5 or n < 2 * k - 4:
        raise ConstructionError(f"needs k >= 5 and n >= 2k - 4 (got k={k}, n={n})")
    sizes = (2 * n - 1, n - 2 * k + 6) + (2,) * (k - 3)
    return blow_up(sizes, tuple(range(2, k + 1)), lambda i, j: 1, k=k)


def construct_lemcount(k: int) -> EdgeColoring:
    """Rainbow (k-1)-matching in colors 2..k on K_{2k-2}; all other edges color 1."""
    if k < 2:
        raise ConstructionError("needs k >= 2")
    n = 2 * k - 2
    cols = []
    for u, v in pair_table(n)[0]:
        cols.append(u // 2 + 2 if v == u + 1 and u % 2 == 0 else 1)
    return EdgeColoring(n, k, tuple(cols))


# ---------------------------------------------------------------------------
# claims and self-verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    kind: str  # no_rainbow | no_mono | mono_total | rainbow_total | exact
    pattern: SubgraphPattern | None = None
    expected: int | None = None
    colors: tuple[int, ...] | None = None  # restrict monochromatic checks
    per_color: tuple[SubgraphPattern, ...] | None = None  # Ramsey-style targets

    def describe(self) -> str:
        if self.kind == "exact":
            return "uses every color"
        if self.kind == "no_rainbow":
            return f"no rainbow {self.pattern}"
        if self.kind == "rainbow_total":
            return f"rainbow {self.pattern} count = {self.expected}"
        if self.per_color is not None:
            return f"sum of per-color targets ({', '.join(map(str, self.per_color))}) = {self.expected}"
        where = f" in colors {list(self.colors)}" if self.colors else ""
        if self.kind == "no_mono":
            return f"no monochromatic {self.pattern}{where}"
        return f"monochromatic {self.pattern}{where} count = {self.expected}"


@dataclass
class ClaimResult:
    claim: Claim
    observed: int | bool
    holds: bool

    def to_dict(self) -> dict:
        return {"claim": self.claim.describe(), "observed": self.observed, "holds": self.holds}


def check_claim(c: EdgeColoring, claim: Claim) -> ClaimResult:
    if claim.kind == "exact":
        ok = c.is_exact()
        return ClaimResult(claim, ok, ok)
    if claim.kind in ("no_rainbow", "rainbow_total"):
        obs = count_rainbow(c, claim.pattern)
        target = 0 if claim.kind == "no_rainbow" else claim.expected
        return ClaimResult(claim, obs, obs == target)
    if claim.per_color is not None:
        obs = sum(count_monochromatic(c, h, i + 1) for i, h in enumerate(claim.per_color))
        return ClaimResult(claim, obs, obs == claim.expected)
    colors = claim.colors or tuple(range(1, c.k + 1))
    obs = sum(count_monochromatic(c, claim.pattern, col) for col in colors)
    target = 0 if claim.kind == "no_mono" else claim.expected
    return ClaimResult(claim, obs, obs == target)


M = SubgraphPattern.matching
STAR3 = SubgraphPattern.star(3)
P5 = SubgraphPattern.path(5)
K3 = SubgraphPattern.triangle()


@dataclass(frozen=True)
class ConstructionDef:
    func: Callable[..., EdgeColoring]
    params: tuple[str, ...]
    order: Callable[..., int]
    claims: Callable[..., list[Claim]]
    role: str
    in_range: Callable[..., bool] = lambda **_: True
    notes: Callable[..., list[str]] = lambda **_: []


def _gm_k3_claims(k, n):
    return [Claim("no_rainbow", K3), Claim("no_mono", M(n), colors=tuple(range(2, k + 1))),
            Claim("mono_total", M(n), formulas.double_factorial(2 * n - 1), colors=(1,)), Claim("exact")]


def _prop_notes(k, n):
    if n + 2 * k - 4 != 2 * n:
        return [f"host has {n + 2 * k - 4} vertices; the bound is stated for K_{2 * n}"]
    return []


CONSTRUCTIONS: dict[str, ConstructionDef] = {
    "cyclic-blowup-3col": ConstructionDef(
        construct_cyclic_blowup_3col, ("n",), lambda n: 4 * n - 3,
        lambda n: [Claim("no_rainbow", STAR3), Claim("no_mono", M(n)), Claim("exact")],
        "lower-bound"),
    "dominant-matching": ConstructionDef(
        construct_dominant_matching, ("k", "n"), lambda k, n: 2 * n - 1,
        lambda k, n: [Claim("no_rainbow", STAR3), Claim("no_mono", M(n)), Claim("exact")],
        "lower-bound", in_range=lambda k, n: k >= 4 and n >= k,
        notes=lambda k, n: [] if (k >= 4 and n >= k) else ["parameters outside the lemma's range k >= 4, n >= k"]),
    "cone": ConstructionDef(
        construct_cone, ("k", "n"), lambda k, n: 2 * n,
        lambda k, n: [Claim("no_rainbow", P5), Claim("no_mono", M(n)), Claim("exact")],
        "lower-bound", in_range=lambda k, n: k >= 5),
    "dominant-big": ConstructionDef(
        construct_dominant_big, ("k", "n"), lambda k, n: 3 * n - 2,
        lambda k, n: [Claim("no_rainbow", P5), Claim("no_rainbow", STAR3), Claim("no_mono", M(n)), Claim("exact")],
        "lower-bound"),
    "G1": ConstructionDef(
        construct_G1, ("n", "sizes"), lambda n, sizes: n,
        lambda n, sizes: [Claim("no_rainbow", STAR3)] + ([Claim("exact")] if min(sizes) > 0 else []),
        "lower-bound"),
    "GM3-K13": ConstructionDef(
        construct_GM3_K13, ("n",), lambda n: 4 * n - 2,
        lambda n: [Claim("no_rainbow", STAR3),
                   Claim("mono_total", M(n), formulas.double_factorial(2 * n - 1)), Claim("exact")],
        "upper-bound"),
    "stripes-multiplicity": ConstructionDef(
        construct_stripes_multiplicity, ("n_list",), lambda n_list: formulas.ramsey_matchings(n_list),
        lambda n_list: [Claim("mono_total", per_color=tuple(M(x) for x in n_list),
                              expected=formulas.stripes_multiplicity_bound(n_list[0]))],
        "upper-bound"),
    "sequential-cones": ConstructionDef(
        construct_sequential_cones, ("k", "base"), lambda k, base=4: base + k - 1,
        lambda k, base=4: [Claim("no_rainbow", K3),
                           Claim("mono_total", M(2), formulas.tau_complete(base)), Claim("exact")],
        "upper-bound"),
    "gm-k3-matching": ConstructionDef(
        construct_gm_k3_matching, ("k", "n"), lambda k, n: formulas.gr_k3_matching(k, n),
        _gm_k3_claims, "upper-bound"),
    "prop-k2n": ConstructionDef(
        construct_prop_k2n, ("k", "n"), lambda k, n: n + 2 * k - 4,
        lambda k, n: [Claim("no_rainbow", P5), Claim("no_mono", M(n), colors=tuple(range(2, k + 1))),
                      Claim("exact")],
        "upper-bound", notes=_prop_notes),
    "thm-k3n1": ConstructionDef(
        construct_thm_k3n1, ("k", "n"), lambda k, n: 3 * n - 1,
        lambda k, n: [Claim("no_rainbow", P5), Claim("no_mono", M(n), colors=tuple(range(2, k + 1))),
                      Claim("exact")],
        "upper-bound"),
    "lemcount": ConstructionDef(
        construct_lemcount, ("k",), lambda k: 2 * k - 2,
        lambda k: [Claim("no_mono", M(k - 1), colors=tuple(range(2, k + 1)))] if k > 2 else [],
        "auxiliary"),
}


@dataclass
class ConstructionReport:
    id: str
    params: dict
    coloring: EdgeColoring
    declared_order: int
    claims: list[ClaimResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    in_range: bool = True

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.claims)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": {k: list(v) if isinstance(v, tuple) else v for k, v in self.params.items()},
            "order": self.coloring.n,
            "declared_order": self.declared_order,
            "in_range": self.in_range,
            "claims": [r.to_dict() for r in self.claims],
            "claims_hold": self.all_hold,
            "notes": self.notes,
            "coloring": self.coloring.to_dict(),
        }


def build_construction(cid: str, params: dict, verify: bool = True, strict: bool = False) -> ConstructionReport:
    if cid not in CONSTRUCTIONS:
        raise ConstructionError(f"unknown construction {cid!r}; known: {', '.join(sorted(CONSTRUCTIONS))}")
    d = CONSTRUCTIONS[cid]
    kwargs = {name: params[name] for name in d.params if name in params}
    missing = [name for name in d.params if name not in kwargs and name != "base"]
    if missing:
        raise ConstructionError(f"construction {cid!r} needs parameters {missing}")
    coloring = d.func(**kwargs)
    claim_kwargs = {k: v for k, v in kwargs.items() if k in d.params}
    report = ConstructionReport(cid, kwargs, coloring, d.order(**claim_kwargs),
                               in_range=d.in_range(**claim_kwargs), notes=list(d.notes(**claim_kwargs)))
    if report.declared_order != coloring.n:
        report.notes.append(f"generated order {coloring.n} differs from declared {report.declared_order}")
    if verify:
        report.claims = [check_claim(coloring, cl) for cl in d.claims(**claim_kwargs)]
        if strict and not report.all_hold:
            failed = "; ".join(f"{r.claim.describe()} (observed {r.observed})" for r in report.claims if not r.holds)
            raise ConstructionClaimError(f"{cid} {kwargs}: {failed}")
    return report
