"""Structure of colorings avoiding rainbow triangles, rainbow P5 or rainbow K_{1,3}.

Includes Gallai partitions via modular decomposition, the case analysis for
rainbow-P5-free and rainbow-K_{1,3}-free colorings, partitions of local
colorings by color neighborhood, and the small K_4 checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .coloring import EdgeColoring
from .patterns import (SubgraphPattern, TheoremContradiction, count_rainbow,
                       find_rainbow_copy, find_rainbow_triangle, has_monochromatic)


class PreconditionError(ValueError):
    """The input lacks a property the analysis assumes; ``witness`` shows why."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


# ---------------------------------------------------------------------------
# Gallai partitions
# ---------------------------------------------------------------------------

@dataclass
class GallaiPartition:
    parts: list[list[int]]
    reduced: dict[tuple[int, int], int]

    @property
    def reduced_colors(self) -> frozenset[int]:
        return frozenset(self.reduced.values())

    def to_dict(self) -> dict:
        return {
            "parts": self.parts,
            "reduced": [[i, j, col] for (i, j), col in sorted(self.reduced.items())],
            "reduced_colors": sorted(self.reduced_colors),
        }


def module_closure(c: EdgeColoring, seed) -> frozenset[int]:
    """Smallest set containing ``seed`` that every outside vertex sees in one color."""
    S = set(seed)
    changed = True
    while changed:
        changed = False
        for w in range(c.n):
            if w in S:
                continue
            if len({c.chi(w, s) for s in S}) > 1:
                S.add(w)
                changed = True
    return frozenset(S)


def _components(n: int, adjacent) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(n):
                if not seen[v] and v != u and adjacent(u, v):
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def reduced_coloring(c: EdgeColoring, parts) -> dict[tuple[int, int], int] | None:
    """Between-part colors, or None when some part pair is not joined in one color."""
    out = {}
    for i, j in combinations(range(len(parts)), 2):
        cols = {c.chi(u, v) for u in parts[i] for v in parts[j]}
        if len(cols) != 1:
            return None
        out[i, j] = cols.pop()
    return out


def is_gallai_partition(c: EdgeColoring, parts) -> bool:
    parts = [list(p) for p in parts]
    if len(parts) < 2 or any(not p for p in parts):
        return False
    flat = sorted(v for p in parts for v in p)
    if flat != list(range(c.n)):
        return False
    red = reduced_coloring(c, parts)
    return red is not None and len(set(red.values())) <= 2


def gallai_partition(c: EdgeColoring) -> GallaiPartition:
    """A coarsest Gallai partition of a coloring with no rainbow triangle.

    If for some color the edges of all other colors form a disconnected
    graph, the component of vertex 0 against the rest is returned.
    Otherwise the quotient by maximal strong modules is prime, and those
    modules form the unique coarsest partition.
    """
    if c.n < 2:
        raise PreconditionError("a Gallai partition needs at least two vertices")
    tri = find_rainbow_triangle(c)
    if tri is not None:
        raise PreconditionError(f"rainbow triangle on {tri}", witness=tri)

    parts = None
    for col in sorted(c.used_colors):
        comps = _components(c.n, lambda u, v: c.chi(u, v) != col)
        if len(comps) > 1:
            first = comps[0]
            rest = sorted(v for comp in comps[1:] for v in comp)
            parts = [first, rest]
            break
    if parts is None:
        parts = []
        covered: set[int] = set()
        for u in range(c.n):
            if u in covered:
                continue
            block = {u}
            for v in range(c.n):
                if v != u:
                    clo = module_closure(c, (u, v))
                    if len(clo) < c.n:
                        block |= clo
            parts.append(sorted(block))
            covered |= block
    parts.sort()

    red = reduced_coloring(c, parts)
    if red is None or len(parts) < 2:
        raise TheoremContradiction(f"modular decomposition produced a non-homogeneous partition {parts}")
    if len(set(red.values())) > 2:
        raise TheoremContradiction(f"reduced coloring on {parts} uses {sorted(set(red.values()))}")
    return GallaiPartition(parts, red)


# ---------------------------------------------------------------------------
# classification of rainbow-P5-free and rainbow-K_{1,3}-free colorings
# ---------------------------------------------------------------------------

@dataclass
class StructureCase:
    case: str
    renumbering: dict[int, int] = field(default_factory=dict)  # original color -> new label
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"case": self.case,
                "renumbering": {str(k): v for k, v in sorted(self.renumbering.items())},
                "witness": _jsonable(self.witness)}


def _color_edges(c: EdgeColoring) -> dict[int, set[tuple[int, int]]]:
    out: dict[int, set] = {}
    for u, v, col in c.edges():
        out.setdefault(col, set()).add((u, v))
    return out


def _renumber(first: list[int], used) -> dict[int, int]:
    """Map ``first`` to 1, 2, ... and the remaining used colors after them."""
    mapping = {col: i + 1 for i, col in enumerate(first)}
    nxt = len(first) + 1
    for col in sorted(used):
        if col not in mapping:
            mapping[col] = nxt
            nxt += 1
    return mapping


def dominant_structure(c: EdgeColoring, d: int) -> dict | None:
    """Classes A, V^j when color ``d`` is dominant, else None.

    Checked as stated: the V^j (j != d) are pairwise disjoint, edges inside
    V^j use d or j, edges meeting A and edges between classes use d.
    """
    classes: dict[int, set[int]] = {}
    for u, v, col in c.edges():
        if col != d:
            classes.setdefault(col, set()).update((u, v))
    owner: dict[int, int] = {}
    for col, vs in classes.items():
        for v in vs:
            if v in owner:
                return None
            owner[v] = col
    for u, v, col in c.edges():
        ou, ov = owner.get(u), owner.get(v)
        if ou is None or ov is None or ou != ov:
            if col != d:
                return None
        elif col not in (d, ou):
            return None
    A = sorted(v for v in range(c.n) if v not in owner)
    return {"dominant": d, "A": A, "classes": {col: sorted(vs) for col, vs in sorted(classes.items())}}


def _case_d(c, E):
    n = c.n
    for v1, v2, v3 in permutations(range(n), 3):
        c2, c3, c4 = c.chi(v1, v2), c.chi(v1, v3), c.chi(v2, v3)
        if len({c2, c3, c4}) < 3:
            continue
        if E[c2] != {tuple(sorted((v1, v2)))} or E[c3] != {tuple(sorted((v1, v3)))}:
            continue
        if any(e != tuple(sorted((v2, v3))) and v1 not in e for e in E[c4]):
            continue
        rest = {col for col in E if col not in (c2, c3, c4)}
        if len(rest) > 1:
            continue
        mapping = {c2: 2, c3: 3, c4: 4, **{col: 1 for col in rest}}
        return StructureCase("d", mapping, {"special": [v1, v2, v3]})
    return None


def _case_e(c, E):
    n = c.n
    for v1, v2, v3, v4 in permutations(range(n), 4):
        e12, e34 = tuple(sorted((v1, v2))), tuple(sorted((v3, v4)))
        c2 = c.chi(v1, v2)
        c3 = c.chi(v1, v3)
        c4 = c.chi(v1, v4)
        if len({c2, c3, c4}) < 3:
            continue
        if not E[c2] <= {e12, e34}:
            continue
        if E[c3] != {tuple(sorted((v1, v3))), tuple(sorted((v2, v4)))}:
            continue
        if E[c4] != {tuple(sorted((v1, v4))), tuple(sorted((v2, v3)))}:
            continue
        rest = {col for col in E if col not in (c2, c3, c4)}
        if len(rest) > 1:
            continue
        mapping = {c2: 2, c3: 3, c4: 4, **{col: 1 for col in rest}}
        return StructureCase("e", mapping, {"special": [v1, v2, v3, v4]})
    return None


def _case_f(c, E):
    if c.n != 5:
        return None
    for v in permutations(range(5)):
        def s(a, b):
            return tuple(sorted((v[a - 1], v[b - 1])))
        want = [
            {s(1, 4), s(1, 5), s(2, 3)},
            {s(2, 4), s(2, 5), s(1, 3)},
            {s(3, 4), s(3, 5), s(1, 2)},
            {s(4, 5)},
        ]
        cols = [c.chi(*next(iter(w))) for w in want]
        if len(set(cols)) == 4 and all(E[col] == w for col, w in zip(cols, want)):
            return StructureCase("f", {col: i + 1 for i, col in enumerate(cols)}, {"special": list(v)})
    return None


P5 = SubgraphPattern.path(5)
STAR3 = SubgraphPattern.star(3)


def classify_rainbow_p5_free(c: EdgeColoring) -> list[StructureCase]:
    """Every case (a)-(f) that some renumbering of colors satisfies.

    Instead of sweeping color permutations, each case is searched directly
    over the choices that fix its renumbering (dominant color, special
    vertices), which is exhaustive for any number of colors.
    """
    if c.n < 5:
        raise PreconditionError("the rainbow-P5-free classification needs n >= 5")
    wit = find_rainbow_copy(c, P5)
    if wit is not None:
        raise PreconditionError(f"rainbow P5 on {wit}", witness=wit)
    E = _color_edges(c)
    used = sorted(E)
    found = []
    if len(used) <= 3:
        found.append(StructureCase("a", {col: i + 1 for i, col in enumerate(used)},
                                   {"colors_used": len(used)}))
    for d in used:
        dom = dominant_structure(c, d)
        if dom is not None:
            found.append(StructureCase("b", _renumber([d], used), dom))
            break
    for v in range(c.n):
        rest = [u for u in range(c.n) if u != v]
        if c.induced(rest).num_colors <= 1:
            col = c.chi(rest[0], rest[1])
            found.append(StructureCase("c", _renumber([col], used), {"vertex": v}))
            break
    for fn in (_case_d, _case_e, _case_f):
        case = fn(c, E)
        if case is not None:
            found.append(case)
    if not found:
        raise TheoremContradiction(f"no case applies to rainbow-P5-free coloring {c.to_dict()}")
    return found


def find_g1_partition(c: EdgeColoring):
    """Recover (V_1, V_2, V_3) and a color renumbering exhibiting the three-part family.

    Between V_i and V_{i+1} the color is i; inside V_{i+1} it is i or i+1
    (indices mod 3).  Returns (parts, renumbering) or None.
    """
    used = sorted(c.used_colors)
    if len(used) > 3:
        return None
    pool = used + [-1] * (3 - len(used))  # placeholder labels for absent colors
    n = c.n
    for perm in sorted(set(permutations(pool))):
        label = {col: i + 1 for i, col in enumerate(perm) if col != -1}

        def allowed(pa, pb, col):
            lab = label[col]
            if pa == pb:
                # inside V_{pa+1}: labels pa or pa+1, with V_1 = V_{3+1}
                return lab in ((pa - 1) % 3 + 1, pa + 1)
            x, y = sorted((pa, pb))
            return lab == {(0, 1): 1, (1, 2): 2, (0, 2): 3}[x, y]

        part = [-1] * n

        def rec(v):
            if v == n:
                return sum(1 for p in range(3) if p in part) >= 2
            for p in range(3):
                if all(allowed(part[u], p, c.chi(u, v)) for u in range(v)):
                    part[v] = p
                    if rec(v + 1):
                        return True
            part[v] = -1
            return False

        if rec(0):
            parts = [[v for v in range(n) if part[v] == p] for p in range(3)]
            return parts, {col: lab for col, lab in label.items()}
    return None


def classify_rainbow_k13_free(c: EdgeColoring) -> StructureCase:
    for v in range(c.n):
        cn = {}
        for u in range(c.n):
            if u != v:
                cn.setdefault(c.chi(u, v), u)
        if len(cn) >= 3:
            nbrs = sorted(cn.values())[:3]
            wit = {"center": v, "edges": [[v, u, c.chi(u, v)] for u in nbrs]}
            raise PreconditionError(f"rainbow K_1,3 centred at {v}", witness=wit)
    used = sorted(c.used_colors)
    k = len(used)
    if k <= 2 or c.n <= 3:
        return StructureCase("a", {col: i + 1 for i, col in enumerate(used)},
                             {"colors_used": k, "n": c.n})
    if k == 3:
        g1 = find_g1_partition(c)
        if g1 is not None:
            parts, lab = g1
            return StructureCase("b", lab, {"parts": parts})
    else:
        for d in used:
            dom = dominant_structure(c, d)
            if dom is not None:
                return StructureCase("c", _renumber([d], used), dom)
    raise TheoremContradiction(f"no case applies to rainbow-K_1,3-free coloring {c.to_dict()}")


# ---------------------------------------------------------------------------
# local colorings
# ---------------------------------------------------------------------------

@dataclass
class LocalPartition:
    classes: dict[tuple[int, ...], list[int]]
    shape: str
    k: int
    m: int
    core: tuple[int, ...] = ()
    core_holds: bool | None = None

    def to_dict(self) -> dict:
        return {"shape": self.shape, "k": self.k, "m": self.m,
                "classes": [[list(key), vs] for key, vs in sorted(self.classes.items())],
                "core": list(self.core), "core_holds": self.core_holds}


def local_partition(c: EdgeColoring, k: int) -> LocalPartition:
    """Group vertices by a k-set of colors containing their color neighborhood.

    Vertices with fewer than k incident colors join the smallest existing
    class that fits, else the smallest fitting k-set (preferring one that
    contains the common core of the full classes).
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    cns = [c.color_neighborhood(v) for v in range(c.n)]
    for v, cn in enumerate(cns):
        if len(cn) > k:
            raise PreconditionError(f"vertex {v} sees {len(cn)} colors {sorted(cn)} > {k}", witness=v)
    used = sorted(c.used_colors)
    m = len(used)
    if m <= k:
        return LocalPartition({tuple(used): list(range(c.n))}, "m <= k", k, m)

    classes: dict[tuple[int, ...], list[int]] = {}
    short = []
    for v, cn in enumerate(cns):
        if len(cn) == k:
            classes.setdefault(tuple(sorted(cn)), []).append(v)
        else:
            short.append(v)
    core = set(used)
    for key in classes:
        core &= set(key)
    for v in short:
        cn = cns[v]
        fit = [key for key in sorted(classes) if cn <= set(key)]
        if not fit:
            options = [key for key in combinations(used, k) if cn <= set(key)]
            pref = [key for key in options if core <= set(key)]
            fit = pref or options
        classes.setdefault(fit[0], []).append(v)
    for vs in classes.values():
        vs.sort()

    common = set(used)
    for key in classes:
        common &= set(key)
    shape = "m = k+1" if m == k + 1 else "m >= k+2"
    holds = None if m == k + 1 else len(common) >= k - 1
    return LocalPartition(dict(sorted(classes.items())), shape, k, m, tuple(sorted(common)), holds)


# ---------------------------------------------------------------------------
# four-vertex checks
# ---------------------------------------------------------------------------

def _has_mono_path4_or_c4(c: EdgeColoring):
    for col in sorted(c.used_colors):
        for perm in permutations(range(4)):
            if perm[0] > perm[3]:
                continue
            if all(c.chi(perm[i], perm[i + 1]) == col for i in range(3)):
                closed = c.chi(perm[3], perm[0]) == col
                return {"color": col, "path": list(perm), "cycle": closed}
    return None


def observation_checks(c: EdgeColoring) -> dict:
    """Clause checks on a K_4 with a monochromatic 2-matching, keyed by the number of colors."""
    if c.n != 4:
        raise PreconditionError(f"host must be K_4, got K_{c.n}")
    if not has_monochromatic(c, SubgraphPattern.matching(2)):
        raise PreconditionError("no monochromatic 2-matching")
    i = c.num_colors
    tri = count_rainbow(c, SubgraphPattern.triangle())
    report = {"colors": i, "rainbow_triangles": tri}
    if i == 2:
        found = _has_mono_path4_or_c4(c)
        report.update(clause="mono P4 or C4", observed=found, holds=found is not None)
    elif i == 3:
        report.update(clause="at least 2 rainbow triangles", observed=tri, holds=tri >= 2)
    elif i == 4:
        report.update(clause="at least 3 rainbow triangles", observed=tri, holds=tri >= 3)
    else:
        report.update(clause="not applicable", observed=None, holds=None)
    return report
