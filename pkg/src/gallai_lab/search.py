"""Exhaustive and heuristic searches over colorings of K_n.

Three reductions are available: ``labeled`` (plain depth-first search over
edge colors), ``color-canonical`` (restricted-growth color labels) and
``full-canonical`` (hereditary growth one vertex at a time, one
representative per class under vertex relabeling and color permutation).
Every objective here is a count of completed copies, so it can only grow as
edges or vertices are added; that is what makes both pruning and
vertex-by-vertex growth sound.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import formulas
from .coloring import (EdgeColoring, GrowthStats, _pair_arrays, _rgs_rows, canonical_form,
                       extend_by_vertex, grow_canonical, pair_table, rgs_relabel)
from .patterns import (SubgraphPattern, copies_in_complete, count_monochromatic, count_rainbow)

log = logging.getLogger(__name__)

INF = float("inf")
DEFAULT_MAX_NODES = 10 ** 9
DEFAULT_MAX_SECONDS = 600.0
LABELED_ORBIT_MAX_N = 8


class SearchError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


class Budget:
    def __init__(self, max_nodes: int | None = None, max_seconds: float | None = None):
        env = os.environ.get("GALLAI_LAB_BUDGET_SECONDS")
        if max_seconds is None:
            max_seconds = float(env) if env else DEFAULT_MAX_SECONDS
        self.max_nodes = DEFAULT_MAX_NODES if max_nodes is None else max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget {self.max_nodes} exhausted")
        if self.nodes & 0x3FFF == 0 and time.monotonic() - self.start > self.max_seconds:
            raise BudgetExhausted(f"time budget {self.max_seconds}s exhausted")

    def check_time(self):
        if time.monotonic() - self.start > self.max_seconds:
            raise BudgetExhausted(f"time budget {self.max_seconds}s exhausted")

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


# ---------------------------------------------------------------------------
# objectives: counts of rainbow / monochromatic copies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObjectiveSpec:
    """What to count: rainbow ``G``, monochromatic ``H`` in any color, ``per_color[i]`` in color i+1."""
    rainbow: SubgraphPattern | None = None
    mono: SubgraphPattern | None = None
    per_color: tuple[SubgraphPattern, ...] = ()

    @property
    def color_symmetric(self) -> bool:
        return len(set(self.per_color)) <= 1 if self.per_color else True

    def groups(self, n: int):
        out = []
        if self.rainbow is not None:
            out.append(("rainbow", 0, copies_in_complete(self.rainbow, n)))
        if self.mono is not None:
            out.append(("mono", 0, copies_in_complete(self.mono, n)))
        for i, p in enumerate(self.per_color):
            out.append(("color", i + 1, copies_in_complete(p, n)))
        return out

    def to_dict(self) -> dict:
        return {"rainbow": str(self.rainbow) if self.rainbow else None,
                "mono": str(self.mono) if self.mono else None,
                "per_color": [str(p) for p in self.per_color]}


def _hit(mode: str, color: int, cols) -> bool:
    if mode == "rainbow":
        return len(set(cols)) == len(cols)
    if mode == "mono":
        first = cols[0]
        return all(x == first for x in cols)
    return all(x == color for x in cols)


def objective_value(spec: ObjectiveSpec, n: int, colors) -> int:
    total = 0
    for mode, color, copies in spec.groups(n):
        for cp in copies:
            if _hit(mode, color, [colors[r] for r in cp]):
                total += 1
    return total


def objective_report(spec: ObjectiveSpec, c: EdgeColoring) -> dict:
    """The same objective, recomputed independently through the pattern counters."""
    out = {"rainbow": 0, "mono": {}}
    if spec.rainbow is not None:
        out["rainbow"] = count_rainbow(c, spec.rainbow)
    if spec.mono is not None:
        for col in range(1, c.k + 1):
            out["mono"][col] = count_monochromatic(c, spec.mono, col)
    for i, p in enumerate(spec.per_color):
        out["mono"][i + 1] = out["mono"].get(i + 1, 0) + count_monochromatic(c, p, i + 1)
    out["total"] = out["rainbow"] + sum(out["mono"].values())
    out["mono"] = {str(k): v for k, v in sorted(out["mono"].items())}
    return out


@lru_cache(maxsize=None)
def _row_groups(spec: ObjectiveSpec, m: int):
    """Copies in K_{m+1} through vertex ``m``, grouped by their largest neighbour of ``m``.

    Each entry is (mode, color, base pair ranks in K_m, row indices).
    """
    pairs = pair_table(m + 1)[0]
    base_idx = pair_table(m)[1] if m > 1 else None
    groups = [[] for _ in range(m)]
    for mode, color, copies in spec.groups(m + 1):
        for cp in copies:
            base, row = [], []
            for r in cp:
                u, v = pairs[r]
                if v == m:
                    row.append(u)
                else:
                    base.append(base_idx[u][v])
            if row:
                groups[max(row)].append((mode, color, tuple(base), tuple(row)))
    return tuple(tuple(g) for g in groups)


@lru_cache(maxsize=None)
def _last_edge_groups(spec: ObjectiveSpec, n: int):
    """Copies in K_n grouped by their largest pair rank: (mode, color, all ranks)."""
    E = comb(n, 2)
    groups = [[] for _ in range(E)]
    for mode, color, copies in spec.groups(n):
        for cp in copies:
            groups[max(cp)].append((mode, color, cp))
    return tuple(tuple(g) for g in groups)


class _RowCounter:
    """Row check for ``extend_by_vertex`` that keeps the running objective.

    After a full row has been accepted ``value`` holds the objective of the
    extended coloring.
    """

    def __init__(self, spec: ObjectiveSpec, m: int, bound, budget: Budget | None, base_values: dict):
        self.spec = spec
        self.m = m
        self.groups = _row_groups(spec, m)
        self.bound = bound
        self.budget = budget
        self.base_values = base_values
        self.acc = [0] * max(m, 1)

    def base_value(self, base: EdgeColoring) -> int:
        v = self.base_values.get(base.colors)
        if v is None:
            v = objective_value(self.spec, base.n, base.colors)
            self.base_values[base.colors] = v
        return v

    def __call__(self, base: EdgeColoring, row, i: int) -> bool:
        if self.budget is not None:
            self.budget.tick()
        prev = self.base_value(base) if i == 0 else self.acc[i - 1]
        bc = base.colors
        hits = 0
        for mode, color, bres, ridx in self.groups[i]:
            cols = [bc[r] for r in bres]
            cols.extend(row[j] for j in ridx)
            if _hit(mode, color, cols):
                hits += 1
        total = prev + hits
        self.acc[i] = total
        return total <= self.bound

    @property
    def value(self) -> int:
        return self.acc[self.m - 1]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class SearchReport:
    kind: str
    value: int | None
    side: str  # exact | upper | lower
    lower: int | None = None
    upper: int | None = None
    host_n: int | None = None
    complete: bool = True
    symmetry: str = "full-canonical"
    witnesses: list = field(default_factory=list)
    witness_checks: list = field(default_factory=list)
    nodes: int = 0
    elapsed: float = 0.0
    levels: dict = field(default_factory=dict)
    realizations: dict | None = None
    monotone: bool | None = None
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    coverage: dict = field(default_factory=dict)

    def to_dict(self, deterministic: bool = False) -> dict:
        out = {
            "kind": self.kind, "value": self.value, "side": self.side,
            "lower": self.lower, "upper": self.upper, "host_n": self.host_n,
            "complete": self.complete, "symmetry": self.symmetry,
            "params": self.params,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "witness_checks": self.witness_checks,
            "nodes": self.nodes,
            "levels": {str(k): v for k, v in sorted(self.levels.items())},
            "realizations": self.realizations, "monotone": self.monotone,
            "coverage": self.coverage, "notes": self.notes,
        }
        if not deterministic:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _pattern_str(p):
    return str(p) if p is not None else None


# ---------------------------------------------------------------------------
# plain depth-first search (labeled or restricted-growth)
# ---------------------------------------------------------------------------

class _StopSearch(Exception):
    pass


def dfs_minimize(n: int, k: int, spec: ObjectiveSpec, *, rgs: bool, exact: bool,
                 bound=INF, first_only: bool = False, keep_argmins: bool = True,
                 budget: Budget | None = None):
    """Minimum objective over k-colorings of K_n by branch and bound.

    Returns ``(best, argmins)`` where ``argmins`` are color tuples; a branch
    is cut once its completed copies exceed the best value seen so far.
    With ``first_only`` the search stops at the first coloring within
    ``bound``.
    """
    E = comb(n, 2)
    groups = _last_edge_groups(spec, n) if n >= 2 else ()
    colors = [0] * E
    acc = [0] * (E + 1)
    counts = [0] * (k + 2)
    state = {"best": bound, "argmins": []}

    def rec(e: int, used: int):
        if exact and k - used > E - e:
            return
        if e == E:
            if exact and used < k:
                return
            v = acc[E]
            if v < state["best"]:
                state["best"] = v
                state["argmins"] = [tuple(colors)] if keep_argmins else []
            elif v == state["best"] and keep_argmins:
                state["argmins"].append(tuple(colors))
            if first_only:
                raise _StopSearch
            return
        top = min(k, used + 1) if rgs else k
        for col in range(1, top + 1):
            if budget is not None:
                budget.tick()
            colors[e] = col
            hits = 0
            for mode, color, cp in groups[e]:
                if _hit(mode, color, [colors[r] for r in cp]):
                    hits += 1
            acc[e + 1] = acc[e] + hits
            if acc[e + 1] > state["best"]:
                continue
            counts[col] += 1
            new_used = used + (1 if counts[col] == 1 else 0)
            rec(e + 1, new_used)
            counts[col] -= 1
        colors[e] = 0

    try:
        rec(0, 0)
    except _StopSearch:
        pass
    return state["best"], state["argmins"]


# ---------------------------------------------------------------------------
# orbit sizes and realization counts
# ---------------------------------------------------------------------------

def automorphism_count(c: EdgeColoring, color_symmetric: bool = True) -> int:
    """Vertex permutations preserving ``c`` (up to renaming colors if ``color_symmetric``)."""
    n = c.n
    if n < 2:
        return 1
    I, J, index = _pair_arrays(n)
    ref = np.asarray(rgs_relabel(c.colors) if color_symmetric else c.colors, dtype=np.int64)
    colors = np.asarray(c.colors, dtype=np.int64)
    total = 0
    perms = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(perms, 20000))
        if not chunk:
            break
        P = np.array(chunk, dtype=np.int64)
        seq = colors[index[P[:, I], P[:, J]]]
        if color_symmetric:
            seq = _rgs_rows(seq)
        total += int((seq == ref).all(axis=1).sum())
    return total


def labeled_orbit_size(c: EdgeColoring, k: int, color_symmetric: bool = True) -> int:
    """Number of labeled colorings with colors in 1..k equivalent to ``c``."""
    aut = automorphism_count(c, color_symmetric)
    if not color_symmetric:
        return factorial(c.n) // aut
    j = c.num_colors
    return factorial(c.n) * factorial(k) // (aut * factorial(k - j))


def _labeled_from_rgs(colors, k: int) -> int:
    j = len(set(colors))
    return factorial(k) // factorial(k - j)


# ---------------------------------------------------------------------------
# simulated annealing (upper bounds only)
# ---------------------------------------------------------------------------

def anneal(n: int, k: int, spec: ObjectiveSpec, *, exact: bool = True, seed: int = 0,
           restarts: int = 32, steps: int | None = None, t0: float = 2.0, cooling: float | None = None,
           starts=(), budget: Budget | None = None):
    """Single-edge recoloring with geometric cooling; returns (best value, best colorings).

    ``starts`` are optional colorings used as the initial state of the first
    restarts; remaining restarts begin from random (exact) colorings.
    """
    E = comb(n, 2)
    if exact and k > E:
        raise SearchError(f"no exact {k}-coloring of K_{n}")
    rng = random.Random(seed)
    copies_by_edge = [[] for _ in range(E)]
    for mode, color, copies in spec.groups(n):
        for cp in copies:
            for r in cp:
                copies_by_edge[r].append((mode, color, cp))
    steps = steps or 200 * E
    cooling = cooling or (0.01 / t0) ** (1.0 / steps)

    def local(colors, e):
        return sum(1 for mode, color, cp in copies_by_edge[e] if _hit(mode, color, [colors[r] for r in cp]))

    def random_start():
        while True:
            cols = [rng.randint(1, k) for _ in range(E)]
            if exact:
                slots = rng.sample(range(E), k)
                for col, s in enumerate(slots, start=1):
                    cols[s] = col
            if not exact or len(set(cols)) == k:
                return cols

    best_val, best = INF, {}
    starts = [list(s.colors) for s in starts]
    for r in range(restarts):
        cols = starts[r] if r < len(starts) else random_start()
        usage = [0] * (k + 1)
        for x in cols:
            usage[x] += 1
        cur = objective_value(spec, n, cols)
        t = t0
        if cur < best_val:
            best_val, best = cur, {}
        if cur == best_val:
            best[tuple(cols)] = True
        for _ in range(steps):
            if budget is not None:
                budget.tick()
            e = rng.randrange(E)
            old = cols[e]
            new = rng.randint(1, k - 1) if k > 1 else 1
            if k > 1 and new >= old:
                new += 1
            if new == old or (exact and usage[old] == 1):
                continue
            before = local(cols, e)
            cols[e] = new
            delta = local(cols, e) - before
            if delta <= 0 or rng.random() < math.exp(-delta / t):
                usage[old] -= 1
                usage[new] += 1
                cur += delta
                if cur < best_val:
                    best_val, best = cur, {}
                if cur == best_val and len(best) < 64:
                    best[tuple(cols)] = True
            else:
                cols[e] = old
            t *= cooling
    return best_val, [tuple(b) for b in best]


# ---------------------------------------------------------------------------
# hereditary growth helpers
# ---------------------------------------------------------------------------

def _grow_levels(spec: ObjectiveSpec, n: int, max_colors: int, *, color_symmetric: bool,
                 local_bound=None, bound=0, budget=None, on_level=None, stats=None):
    base_values: dict = {}

    def factory(m):
        return _RowCounter(spec, m - 1, bound, budget, base_values) if m >= 2 else None

    return grow_canonical(n, max_colors, color_symmetric=color_symmetric, local_bound=local_bound,
                          check_factory=factory, on_level=on_level, stats=stats)


def _extend_shard(spec: ObjectiveSpec, base: EdgeColoring, max_colors: int, *, color_symmetric: bool,
                  exact_k: int | None, bound, keep: str, budget: Budget | None, local_bound=None):
    """Extend one base coloring by a vertex; return (min, {key: colors}, nodes).

    ``keep="min"`` retains only minimizers; ``keep="all"`` every survivor.
    """
    counter = _RowCounter(spec, base.n, bound, budget, {})
    stats = GrowthStats()
    best = INF
    kept: dict = {}
    for cols in extend_by_vertex(base, max_colors, color_symmetric=color_symmetric,
                                 local_bound=local_bound, check=counter, stats=stats):
        v = counter.value
        if exact_k is not None and len(set(cols)) != exact_k:
            continue
        if keep == "min":
            if v > best:
                continue
            cand = EdgeColoring(base.n + 1, max_colors, cols)
            key = canonical_form(cand, color_symmetric)
            if v < best:
                best, kept = v, {}
            kept.setdefault(key, key[2])
        else:
            best = min(best, v)
            cand = EdgeColoring(base.n + 1, max_colors, cols)
            key = canonical_form(cand, color_symmetric)
            kept.setdefault(key, (v, key[2]))
    return best, kept, stats.candidates


def _shard_worker(args):
    spec, base_cols, n_base, max_colors, color_symmetric, exact_k, bound = args
    base = EdgeColoring(n_base, max_colors, base_cols)
    best, kept, nodes = _extend_shard(spec, base, max_colors, color_symmetric=color_symmetric,
                                      exact_k=exact_k, bound=bound, keep="min", budget=None)
    return best, sorted(kept.values()), nodes


# ---------------------------------------------------------------------------
# checkpoints
# ---------------------------------------------------------------------------

class Checkpoint:
    """JSON-lines file: one header line describing the task, one line per finished shard."""

    def __init__(self, path, task: dict):
        self.path = path
        self.task = task
        self.done: dict[int, dict] = {}
        if path and os.path.exists(path) and os.path.getsize(path) > 0:
            with open(path) as fh:
                lines = [ln for ln in fh.read().splitlines() if ln.strip()]
            header = json.loads(lines[0])
            if header.get("task") != task:
                raise SearchError(f"checkpoint {path} belongs to a different task")
            for ln in lines[1:]:
                try:
                    rec = json.loads(ln)
                except json.JSONDecodeError:
                    break  # torn final line from an interrupted write
                self.done[rec["shard"]] = rec
        elif path:
            with open(path, "w") as fh:
                fh.write(json.dumps({"task": task}) + "\n")

    def record(self, shard: int, best, argmins, nodes: int):
        rec = {"shard": shard, "best": None if best == INF else best,
               "argmins": [list(a) for a in argmins], "nodes": nodes}
        self.done[shard] = rec
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(json.dumps(rec) + "\n")


# ---------------------------------------------------------------------------
# Ramsey-type scans
# ---------------------------------------------------------------------------

def _verify_witness(spec: ObjectiveSpec, c: EdgeColoring, expected: int) -> dict:
    rep = objective_report(spec, c)
    return {"expected": expected, "recount": rep, "ok": rep["total"] == expected}


def _scan(kind, spec, n_max, max_colors, *, color_symmetric, exact_k=None, n_start=1,
          local_bound=None, budget=None, params=None, symmetry="full-canonical") -> SearchReport:
    """Smallest n in [n_start, n_max] with no (exact) coloring free of every counted copy."""
    budget = budget or Budget()
    levels: dict = {}
    report = SearchReport(kind, None, "exact", symmetry=symmetry, params=params or {})
    stats = GrowthStats()
    found = {}

    def on_level(m, reps):
        good = [r for r in reps if exact_k is None or r.num_colors == exact_k]
        levels[m] = {"avoiding": len(reps), "avoiding_exact": len(good)} if exact_k else {"avoiding": len(reps)}
        if m >= n_start and not good and "value" not in found:
            found["value"] = m
        elif good:
            found.setdefault("witness_at", {})[m] = good[0]
        budget.check_time()
        if "value" in found and m >= found["value"] + 1:
            raise _StopSearch  # one level past the value is enough to check monotonicity

    try:
        _grow_levels(spec, n_max, max_colors, color_symmetric=color_symmetric,
                     local_bound=local_bound, bound=0, budget=budget, on_level=on_level, stats=stats)
    except _StopSearch:
        pass
    except BudgetExhausted as exc:
        report.complete = False
        report.notes.append(str(exc))
    report.nodes = stats.candidates
    report.levels = levels
    report.elapsed = budget.elapsed
    witnesses = found.get("witness_at", {})
    if "value" in found:
        v = found["value"]
        report.value, report.lower, report.upper = v, v, v
        w = witnesses.get(v - 1)
        if w is not None:
            k_w = exact_k or max(w.colors, default=1)
            w = EdgeColoring(w.n, max(k_w, 1), w.colors)
            report.witnesses.append(w)
            report.witness_checks.append(_verify_witness(spec, w, 0))
        # every scanned level at or beyond the value must have no exact avoider
        report.monotone = all(levels[m].get("avoiding_exact", levels[m]["avoiding"]) == 0
                              for m in levels if m >= v)
        report.host_n = v
    else:
        scanned = [m for m in witnesses if m >= n_start]
        report.side = "lower"
        report.value = None
        report.lower = (max(scanned) + 1) if scanned else n_start
        report.notes.append("no value found within the scanned range")
    if not report.complete:
        report.side = "lower"
        report.value = None
    return report


def _dfs_scan(kind, spec, n_start, n_max, k, *, rgs, exact, budget, params, symmetry) -> SearchReport:
    budget = budget or Budget()
    report = SearchReport(kind, None, "exact", symmetry=symmetry, params=params)
    witness = None
    try:
        for n in range(n_start, n_max + 1):
            best, arg = dfs_minimize(n, k, spec, rgs=rgs, exact=exact, bound=0, first_only=True, budget=budget)
            report.levels[n] = {"avoider_found": bool(arg)}
            if not arg:
                report.value = report.lower = report.upper = report.host_n = n
                if witness is not None:
                    w = EdgeColoring(witness[0], k, witness[1])
                    report.witnesses.append(w)
                    report.witness_checks.append(_verify_witness(spec, w, 0))
                break
            witness = (n, arg[0])
    except BudgetExhausted as exc:
        report.complete = False
        report.notes.append(str(exc))
    if report.value is None:
        report.side = "lower"
        report.lower = (witness[0] + 1) if witness else n_start
    report.nodes = budget.nodes
    report.elapsed = budget.elapsed
    return report


def compute_ramsey(patterns, n_max: int | None = None, symmetry: str = "full-canonical",
                   budget: Budget | None = None) -> SearchReport:
    """Smallest n such that every coloring of K_n with len(patterns) colors has patterns[i] in color i+1."""
    patterns = tuple(patterns)
    if not patterns:
        raise SearchError("need at least one pattern")
    k = len(patterns)
    spec = ObjectiveSpec(per_color=patterns)
    if n_max is None:
        if all(p.kind == "matching" for p in patterns):
            n_max = formulas.ramsey_matchings([p.params[0] for p in patterns]) + 1
        else:
            n_max = 10
    params = {"patterns": [str(p) for p in patterns], "k": k, "n_max": n_max, "exactness": "at-most"}
    sym = symmetry
    if symmetry == "color-canonical" and not spec.color_symmetric:
        sym = "labeled"
    if sym == "full-canonical":
        rep = _scan("ramsey", spec, n_max, k, color_symmetric=spec.color_symmetric,
                    budget=budget, params=params, symmetry=sym)
    else:
        rep = _dfs_scan("ramsey", spec, 1, n_max, k, rgs=sym == "color-canonical", exact=False,
                        budget=budget, params=params, symmetry=sym)
    if sym != symmetry:
        rep.notes.append(f"patterns differ by color, symmetry downgraded to {sym}")
    elif sym == "full-canonical" and not spec.color_symmetric:
        rep.notes.append("patterns differ by color, reduction by vertex relabeling only")
    return rep


def compute_gallai_ramsey(G: SubgraphPattern, H: SubgraphPattern, k: int, n_max: int = 12,
                          symmetry: str = "full-canonical", budget: Budget | None = None) -> SearchReport:
    """Smallest n (with an exact k-coloring of K_n) such that every exact one has rainbow G or mono H."""
    if k < 1:
        raise SearchError("k must be >= 1")
    spec = ObjectiveSpec(rainbow=G, mono=H)
    n_start = max(2, formulas.n_k_threshold(k))
    params = {"G": str(G), "H": str(H), "k": k, "n_max": n_max, "exactness": "exact", "n_start": n_start}
    if symmetry == "full-canonical":
        rep = _scan("gallai_ramsey", spec, n_max, k, color_symmetric=True, exact_k=k,
                    n_start=n_start, budget=budget, params=params)
    else:
        rep = _dfs_scan("gallai_ramsey", spec, n_start, n_max, k, rgs=symmetry == "color-canonical",
                        exact=True, budget=budget, params=params, symmetry=symmetry)
    return rep


def compute_local_ramsey(H: SubgraphPattern, k: int, n_max: int = 10, budget: Budget | None = None,
                         symmetry: str = "full-canonical") -> SearchReport:
    """Smallest n such that every coloring of K_n with color degrees <= k has a mono H."""
    if k < 1:
        raise SearchError("k must be >= 1")
    spec = ObjectiveSpec(mono=H)
    params = {"H": str(H), "k": k, "n_max": n_max}
    if symmetry == "full-canonical":
        return _scan("local_ramsey", spec, n_max, comb(n_max, 2), color_symmetric=True,
                     local_bound=k, budget=budget, params=params)
    from .coloring import enumerate_local_colorings

    budget = budget or Budget()
    report = SearchReport("local_ramsey", None, "exact", symmetry="color-canonical", params=params)
    witness = None
    for n in range(2, n_max + 1):
        avoider = None
        for c in enumerate_local_colorings(n, k):
            budget.tick()
            if objective_value(spec, n, c.colors) == 0:
                avoider = c
                break
        report.levels[n] = {"avoider_found": avoider is not None}
        if avoider is None:
            report.value = report.lower = report.upper = report.host_n = n
            if witness is not None:
                report.witnesses.append(witness)
                report.witness_checks.append(_verify_witness(spec, witness, 0))
            break
        witness = avoider
    if report.value is None:
        report.side = "lower"
    report.nodes = budget.nodes
    report.elapsed = budget.elapsed
    return report


# ---------------------------------------------------------------------------
# multiplicities and realization counts
# ---------------------------------------------------------------------------

@dataclass
class SearchTask:
    kind: str  # ramsey | gallai_ramsey | multiplicity_M | multiplicity_GM | local_ramsey | realizations
    G: SubgraphPattern | None = None
    H: SubgraphPattern | None = None
    per_color: tuple[SubgraphPattern, ...] = ()
    k: int | None = None
    n: int | None = None
    n_max: int | None = None
    mode: str = "exhaustive"
    symmetry: str = "full-canonical"
    exact: bool | None = None
    jobs: int = 1
    checkpoint: str | None = None
    seed: int = 0
    restarts: int = 32
    steps: int | None = None
    max_nodes: int | None = None
    max_seconds: float | None = None
    starts: tuple = ()
    of: str = "GM"  # which multiplicity a realization task counts

    def objective(self) -> ObjectiveSpec:
        if self.per_color:
            return ObjectiveSpec(per_color=tuple(self.per_color))
        return ObjectiveSpec(rainbow=self.G, mono=self.H)

    def budget(self) -> Budget:
        return Budget(self.max_nodes, self.max_seconds)


def _multiplicity_setup(task: SearchTask):
    spec = task.objective()
    if task.per_color:
        k = len(task.per_color)
        exact = bool(task.exact) if task.exact is not None else False
    else:
        if task.k is None:
            raise SearchError("GM needs k")
        k = task.k
        exact = True if task.exact is None else task.exact
    n = task.n
    notes = []
    if n is None:
        if task.per_color:
            rep = compute_ramsey(task.per_color, budget=task.budget())
        else:
            rep = compute_gallai_ramsey(task.G, task.H, k, n_max=task.n_max or 12, budget=task.budget())
        if rep.value is None:
            raise SearchError("host size unknown and not computable within budget")
        n = rep.value
        notes.append(f"host size {n} computed by search")
    return spec, k, exact, n, notes


def compute_multiplicity(task: SearchTask) -> SearchReport:
    """Minimum copy count over k-colorings of a fixed K_n.

    GM tasks (rainbow G + mono H) range over exact k-colorings; M tasks
    (patterns per color) over all colorings with at most k colors unless
    ``task.exact`` says otherwise.
    """
    spec, k, exact, n, notes = _multiplicity_setup(task)
    kind = "multiplicity_M" if task.per_color else "multiplicity_GM"
    params = {"objective": spec.to_dict(), "k": k, "n": n, "exact": exact, "mode": task.mode}
    budget = task.budget()
    if exact and k > comb(n, 2):
        raise SearchError(f"no exact {k}-coloring of K_{n}")

    if task.mode == "heuristic":
        params.update(seed=task.seed, restarts=task.restarts)
        val, best = anneal(n, k, spec, exact=exact, seed=task.seed, restarts=task.restarts,
                           steps=task.steps, starts=task.starts)
        rep = SearchReport(kind, val, "upper", upper=val, host_n=n, complete=False,
                           symmetry="none", params=params, notes=notes)
        for cols in sorted(best)[:4]:
            w = EdgeColoring(n, k, cols)
            rep.witnesses.append(w)
            rep.witness_checks.append(_verify_witness(spec, w, val))
        rep.elapsed = budget.elapsed
        return rep
    if task.mode != "exhaustive":
        raise SearchError(f"unknown mode {task.mode!r}")

    bound = INF
    for s in task.starts:
        if not exact or s.is_exact(k):
            bound = min(bound, objective_value(spec, n, s.colors))
    if bound < INF:
        params["initial_bound"] = bound

    if task.symmetry in ("labeled", "color-canonical"):
        return _multiplicity_dfs(task, spec, k, exact, n, bound, budget, kind, params, notes)
    return _multiplicity_growth(task, spec, k, exact, n, bound, budget, kind, params, notes)


def _finish_multiplicity(rep: SearchReport, spec, k, n, best, argmin_cols, color_symmetric, labeled_count=None):
    if best == INF:
        rep.value = None
        rep.side = "upper"
        rep.notes.append("no coloring within the initial bound")
        return rep
    if rep.complete:
        rep.value, rep.lower, rep.upper, rep.side = best, best, best, "exact"
    else:
        rep.value, rep.upper, rep.side = best, best, "upper"
    reps = [EdgeColoring(n, k, cols) for cols in argmin_cols]
    keys = sorted({canonical_form(r, color_symmetric): r for r in reps}.items())
    classes = [r for _, r in keys]
    for w in classes[:8]:
        rep.witnesses.append(w)
        rep.witness_checks.append(_verify_witness(spec, w, best))
    real = {"canonical": len(classes)}
    if labeled_count is not None:
        real["labeled"] = labeled_count
    elif n <= LABELED_ORBIT_MAX_N:
        real["labeled"] = sum(labeled_orbit_size(r, k, color_symmetric) for r in classes)
    else:
        real["labeled"] = None
    rep.realizations = real
    return rep


def _multiplicity_dfs(task, spec, k, exact, n, bound, budget, kind, params, notes):
    rgs = task.symmetry == "color-canonical" and spec.color_symmetric
    sym = "color-canonical" if rgs else "labeled"
    rep = SearchReport(kind, None, "exact", host_n=n, symmetry=sym, params=params, notes=list(notes))
    try:
        best, arg = dfs_minimize(n, k, spec, rgs=rgs, exact=exact, bound=bound, budget=budget)
    except BudgetExhausted as exc:
        rep.complete = False
        rep.notes.append(str(exc))
        rep.nodes = budget.nodes
        rep.elapsed = budget.elapsed
        rep.side = "upper"
        return rep
    labeled = sum(_labeled_from_rgs(a, k) for a in arg) if rgs else len(arg)
    rep.nodes = budget.nodes
    rep.elapsed = budget.elapsed
    return _finish_multiplicity(rep, spec, k, n, best, arg, spec.color_symmetric, labeled_count=labeled)


def _multiplicity_growth(task, spec, k, exact, n, bound, budget, kind, params, notes):
    color_symmetric = spec.color_symmetric
    rep = SearchReport(kind, None, "exact", host_n=n, symmetry="full-canonical", params=params,
                       notes=list(notes))
    stats = GrowthStats()
    if n < 2:
        # K_1: a single empty coloring
        c = EdgeColoring(n, k, ())
        if exact and k > 0:
            return _finish_multiplicity(rep, spec, k, n, INF, [], color_symmetric)
        return _finish_multiplicity(rep, spec, k, n, 0, [c.colors], color_symmetric)
    try:
        bases = _grow_levels(spec, n - 1, k, color_symmetric=color_symmetric, bound=bound,
                             budget=budget, stats=stats,
                             on_level=lambda m, reps: rep.levels.__setitem__(m, {"surviving": len(reps)}))
    except BudgetExhausted as exc:
        rep.complete = False
        rep.notes.append(str(exc))
        rep.nodes = stats.candidates
        rep.elapsed = budget.elapsed
        rep.side = "upper"
        return rep

    task_id = {"objective": spec.to_dict(), "k": k, "n": n, "exact": exact,
               "bound": None if bound == INF else bound, "shards": len(bases)}
    ck = Checkpoint(task.checkpoint, task_id)
    exact_k = k if exact else None
    todo = [i for i in range(len(bases)) if i not in ck.done]
    nodes = stats.candidates
    try:
        if task.jobs > 1 and len(todo) > 1:
            args = [(spec, bases[i].colors, n - 1, k, color_symmetric, exact_k, bound) for i in todo]
            with ProcessPoolExecutor(max_workers=task.jobs) as pool:
                for i, (best, kept, cnt) in zip(todo, pool.map(_shard_worker, args, chunksize=8)):
                    ck.record(i, best, kept, cnt)
                    budget.check_time()
        else:
            for i in todo:
                best, kept, cnt = _extend_shard(spec, bases[i], k, color_symmetric=color_symmetric,
                                                exact_k=exact_k, bound=bound, keep="min", budget=budget)
                ck.record(i, best, sorted(kept.values()), cnt)
    except BudgetExhausted as exc:
        rep.complete = False
        rep.notes.append(str(exc))

    best = INF
    arg: dict = {}
    for i in sorted(ck.done):
        rec = ck.done[i]
        nodes += rec["nodes"]
        v = INF if rec["best"] is None else rec["best"]
        if v < best:
            best, arg = v, {}
        if v == best and v < INF:
            for cols in rec["argmins"]:
                arg[tuple(cols)] = True
    rep.nodes = nodes
    rep.elapsed = budget.elapsed
    rep.coverage = {"shards": len(bases), "completed": len(ck.done)}
    if not rep.complete and best == INF:
        rep.side = "upper"
        return rep
    return _finish_multiplicity(rep, spec, k, n, best, sorted(arg), color_symmetric)


def compute_realizations(task: SearchTask) -> SearchReport:
    """Argmin counts of an exhaustive multiplicity search, labeled and up to equivalence."""
    if task.mode != "exhaustive":
        raise SearchError("realization counts need an exhaustive multiplicity search")
    rep = compute_multiplicity(task)
    if not rep.complete:
        raise SearchError("multiplicity search did not complete; realization counts unavailable")
    rep.kind = "realizations"
    return rep


def verify_observation_2(H: SubgraphPattern, k: int, *, force: bool = False, n_max: int = 10,
                         budget_seconds: float | None = None) -> dict:
    """Compare gr and GM of rainbow P5 against rainbow K_{1,3} for the same H.

    The GM inequality is only asserted when k >= 4 and both gr values agree;
    ``force`` computes the comparison for k < 4 as information only.
    """
    out = {"H": str(H), "k": k}
    if k < 4 and not force:
        out.update(status="skipped", reason="the comparison is stated for k >= 4")
        return out
    P5 = SubgraphPattern.path(5)
    S3 = SubgraphPattern.star(3)
    b = Budget(max_seconds=budget_seconds)
    gr_p5 = compute_gallai_ramsey(P5, H, k, n_max=n_max, budget=b)
    gr_s3 = compute_gallai_ramsey(S3, H, k, n_max=n_max, budget=Budget(max_seconds=budget_seconds))
    out.update(gr_p5=gr_p5.value, gr_k13=gr_s3.value)
    if gr_p5.value is None or gr_s3.value is None:
        out.update(status="budget", reason="a Gallai-Ramsey search did not finish")
        return out
    out["gr_inequality_holds"] = gr_p5.value >= gr_s3.value
    if gr_p5.value != gr_s3.value:
        out.update(status="hypothesis-false")
        return out
    n = gr_p5.value
    gm_p5 = compute_multiplicity(SearchTask("multiplicity_GM", G=P5, H=H, k=k, n=n, max_seconds=budget_seconds))
    gm_s3 = compute_multiplicity(SearchTask("multiplicity_GM", G=S3, H=H, k=k, n=n, max_seconds=budget_seconds))
    out.update(gm_p5=gm_p5.value, gm_k13=gm_s3.value)
    if not (gm_p5.complete and gm_s3.complete):
        out.update(status="budget")
        return out
    holds = gm_p5.value <= gm_s3.value
    out.update(status="checked" if k >= 4 else "informational", holds=holds)
    return out


def run_task(task: SearchTask) -> SearchReport:
    budget = task.budget()
    if task.kind == "ramsey":
        return compute_ramsey(task.per_color, n_max=task.n_max, symmetry=task.symmetry, budget=budget)
    if task.kind == "gallai_ramsey":
        return compute_gallai_ramsey(task.G, task.H, task.k, n_max=task.n_max or 12,
                                     symmetry=task.symmetry, budget=budget)
    if task.kind == "local_ramsey":
        return compute_local_ramsey(task.H, task.k, n_max=task.n_max or 10, budget=budget,
                                    symmetry=task.symmetry)
    if task.kind in ("multiplicity_M", "multiplicity_GM"):
        return compute_multiplicity(task)
    if task.kind == "realizations":
        return compute_realizations(task)
    raise SearchError(f"unknown search kind {task.kind!r}")
