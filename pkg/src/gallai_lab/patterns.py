"""Monochromatic and rainbow copies of small target graphs.

A *copy* is a subgraph (vertex set plus edge set) of the host, not an
embedding; counts are embeddings divided by the pattern's automorphism count.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .coloring import EdgeColoring, pair_table


class PatternError(ValueError):
    pass


class TheoremContradiction(RuntimeError):
    """A structure theorem's conclusion failed on an instance meeting its hypothesis."""


@dataclass(frozen=True)
class SubgraphPattern:
    kind: str
    params: tuple
    edges: tuple[tuple[int, int], ...]
    n_vertices: int

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @classmethod
    def matching(cls, n: int) -> "SubgraphPattern":
        if n < 1:
            raise PatternError("matching size must be >= 1")
        return cls("matching", (n,), tuple((2 * i, 2 * i + 1) for i in range(n)), 2 * n)

    @classmethod
    def path(cls, m: int) -> "SubgraphPattern":
        if m < 2:
            raise PatternError("path needs at least 2 vertices")
        return cls("path", (m,), tuple((i, i + 1) for i in range(m - 1)), m)

    @classmethod
    def star(cls, s: int) -> "SubgraphPattern":
        if s < 1:
            raise PatternError("star needs at least one leaf")
        return cls("star", (s,), tuple((0, i) for i in range(1, s + 1)), s + 1)

    @classmethod
    def triangle(cls) -> "SubgraphPattern":
        return cls("triangle", (), ((0, 1), (0, 2), (1, 2)), 3)

    @classmethod
    def broom(cls, m: int, leaves: int) -> "SubgraphPattern":
        if m < 1 or leaves < 0:
            raise PatternError("broom needs m >= 1 and leaves >= 0")
        return cls("broom", (m, leaves), broom_edges(m, leaves), m + leaves + 1)

    @classmethod
    def arbitrary(cls, edges) -> "SubgraphPattern":
        norm = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise PatternError(f"loop ({u}, {v}) not allowed")
            norm.add((min(u, v), max(u, v)))
        if not norm:
            raise PatternError("pattern needs at least one edge")
        verts = sorted({x for e in norm for x in e})
        relabel = {v: i for i, v in enumerate(verts)}
        es = tuple(sorted((relabel[u], relabel[v]) for u, v in norm))
        return cls("arbitrary", (es,), es, len(verts))

    def __str__(self):
        if self.kind == "matching":
            return f"mK2:{self.params[0]}"
        if self.kind == "path":
            return f"P:{self.params[0]}"
        if self.kind == "star":
            return f"S:{self.params[0]}"
        if self.kind == "triangle":
            return "K3"
        if self.kind == "broom":
            return f"B:{self.params[0]},{self.params[1]}"
        return "edges:" + json.dumps([list(e) for e in self.edges])


def broom_edges(m: int, leaves: int) -> tuple[tuple[int, int], ...]:
    """Path 0-1-...-m with ``leaves`` extra vertices hanging off vertex ``m``."""
    path = [(i, i + 1) for i in range(m)]
    star = [(m, m + 1 + j) for j in range(leaves)]
    return tuple(path + star)


def parse_pattern(text: str) -> SubgraphPattern:
    """Parse the CLI mini-syntax: ``mK2:3``, ``P:5``, ``S:3``, ``K3``, ``B:3,2``, ``edges:[[0,1]]``."""
    s = text.strip()
    try:
        if s.upper() == "K3":
            return SubgraphPattern.triangle()
        head, _, body = s.partition(":")
        head = head.strip()
        if head.lower() in ("mk2", "nk2", "m"):
            return SubgraphPattern.matching(int(body))
        if head.upper() == "P":
            return SubgraphPattern.path(int(body))
        if head.upper() == "S":
            return SubgraphPattern.star(int(body))
        if head.upper() == "B":
            m, leaves = (int(x) for x in body.split(","))
            return SubgraphPattern.broom(m, leaves)
        if head.lower() == "edges":
            return SubgraphPattern.arbitrary(json.loads(body))
    except (ValueError, json.JSONDecodeError) as exc:
        raise PatternError(f"cannot parse pattern {text!r}: {exc}") from exc
    raise PatternError(f"unknown pattern syntax {text!r}")


# ---------------------------------------------------------------------------
# embedding machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _search_order(p: SubgraphPattern):
    """Vertex order (connected pieces grown breadth-first) and back-edges per step."""
    adj = {v: set() for v in range(p.n_vertices)}
    for u, v in p.edges:
        adj[u].add(v)
        adj[v].add(u)
    order: list[int] = []
    seen = set()
    for root in sorted(adj, key=lambda v: -len(adj[v])):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(tuple(pos[u] for u in adj[v] if pos[u] < pos[v]) for v in order)
    return tuple(order), back


@lru_cache(maxsize=None)
def automorphism_count(p: SubgraphPattern) -> int:
    order, back = _search_order(p)
    edges = {frozenset(e) for e in p.edges}
    nv = p.n_vertices
    img = [0] * nv
    used = [False] * nv
    count = 0

    def rec(i):
        nonlocal count
        if i == nv:
            count += 1
            return
        for x in range(nv):
            if used[x]:
                continue
            if all(frozenset((img[j], x)) in edges for j in back[i]):
                img[i] = x
                used[x] = True
                rec(i + 1)
                used[x] = False

    rec(0)
    return count


def _count_embeddings(c: EdgeColoring, p: SubgraphPattern, mode: str, color: int = 0,
                      stop_at_first: bool = False) -> int:
    """Count injective maps of ``p`` into K_n whose edges satisfy ``mode``.

    mode: "mono" (all edges ``color``), "rainbow" (pairwise distinct), "any".
    """
    n = c.n
    nv = p.n_vertices
    if nv > n:
        return 0
    _, back = _search_order(p)
    idx = pair_table(n)[1]
    cols = c.colors
    img = [0] * nv
    used = [False] * n
    seen_colors: list[int] = []
    count = 0

    class _Done(Exception):
        pass

    def rec(i):
        nonlocal count
        if i == nv:
            count += 1
            if stop_at_first:
                raise _Done
            return
        for x in range(n):
            if used[x]:
                continue
            ok = True
            pushed = 0
            row = idx[x]
            for j in back[i]:
                col = cols[row[img[j]]]
                if mode == "mono":
                    if col != color:
                        ok = False
                        break
                elif mode == "rainbow":
                    if col in seen_colors:
                        ok = False
                        break
                    seen_colors.append(col)
                    pushed += 1
            if ok:
                img[i] = x
                used[x] = True
                rec(i + 1)
                used[x] = False
            for _ in range(pushed):
                seen_colors.pop()

    try:
        rec(0)
    except _Done:
        pass
    return count


# ---------------------------------------------------------------------------
# matchings via twin-class compression
# ---------------------------------------------------------------------------

def count_matchings(masks: list[int], t: int) -> int:
    """Number of ``t``-edge matchings in the graph given by neighbourhood bitmasks.

    Vertices with identical open (or closed) neighbourhoods are interchangeable,
    so the recursion runs over per-class remaining counts instead of subsets.
    """
    n = len(masks)
    if t == 0:
        return 1
    if 2 * t > n:
        return 0
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault(("open", masks[v]), []).append(v)
    classes: list[list[int]] = []
    true_twin: list[bool] = []
    singles = []
    for (_, _), vs in groups.items():
        if len(vs) > 1:
            classes.append(vs)
            true_twin.append(False)
        else:
            singles.extend(vs)
    closed: dict[int, list[int]] = {}
    for v in singles:
        closed.setdefault(masks[v] | (1 << v), []).append(v)
    for vs in closed.values():
        classes.append(vs)
        true_twin.append(len(vs) > 1)
    q = len(classes)
    rep = [vs[0] for vs in classes]
    adj = [[bool(masks[rep[a]] >> rep[b] & 1) for b in range(q)] for a in range(q)]
    memo: dict = {}

    def f(state: tuple, need: int) -> int:
        if need == 0:
            return 1
        if 2 * need > sum(state):
            return 0
        key = (state, need)
        if key in memo:
            return memo[key]
        a = next(i for i, s in enumerate(state) if s)
        st = list(state)
        st[a] -= 1
        total = f(tuple(st), need)  # lowest remaining vertex of class a stays unmatched
        for b in range(q):
            if b == a:
                if true_twin[a] and st[a] > 0:
                    mult = st[a]
                    st[a] -= 1
                    total += mult * f(tuple(st), need - 1)
                    st[a] += 1
            elif st[b] and adj[a][b]:
                mult = st[b]
                st[b] -= 1
                total += mult * f(tuple(st), need - 1)
                st[b] += 1
        memo[key] = total
        return total

    return f(tuple(len(vs) for vs in classes), t)


# ---------------------------------------------------------------------------
# public counters
# ---------------------------------------------------------------------------

def count_monochromatic(c: EdgeColoring, p: SubgraphPattern, color: int) -> int:
    if p.n_vertices > c.n:
        return 0
    if p.kind == "matching":
        return count_matchings(c.adjacency_masks(color), p.params[0])
    return _count_embeddings(c, p, "mono", color) // automorphism_count(p)


def _elementary_symmetric(values, s: int) -> int:
    e = [1] + [0] * s
    for x in values:
        for j in range(s, 0, -1):
            e[j] += e[j - 1] * x
    return e[s]


def count_rainbow_stars(c: EdgeColoring, s: int) -> int:
    """Rainbow K_{1,s} count from per-vertex color multiplicities."""
    total = 0
    for v in range(c.n):
        mult: dict[int, int] = {}
        for col in c.incident_colors(v):
            mult[col] = mult.get(col, 0) + 1
        total += _elementary_symmetric(mult.values(), s)
    if s == 1:
        total //= 2  # a single edge is seen from both ends
    return total


def count_rainbow(c: EdgeColoring, p: SubgraphPattern) -> int:
    if p.n_vertices > c.n:
        return 0
    if p.kind == "star":
        return count_rainbow_stars(c, p.params[0])
    return _count_embeddings(c, p, "rainbow") // automorphism_count(p)


def has_monochromatic(c: EdgeColoring, p: SubgraphPattern, color: int | None = None) -> bool:
    colors = sorted(c.used_colors) if color is None else [color]
    for col in colors:
        if p.kind == "matching":
            if count_matchings(c.adjacency_masks(col), p.params[0]) > 0:
                return True
        elif _count_embeddings(c, p, "mono", col, stop_at_first=True) > 0:
            return True
    return False


def has_rainbow(c: EdgeColoring, p: SubgraphPattern) -> bool:
    if p.kind == "star":
        s = p.params[0]
        return any(len(c.color_neighborhood(v)) >= s for v in range(c.n))
    return _count_embeddings(c, p, "rainbow", stop_at_first=True) > 0


def find_rainbow_triangle(c: EdgeColoring) -> tuple[int, int, int] | None:
    for a, b, d in combinations(range(c.n), 3):
        if len({c.chi(a, b), c.chi(a, d), c.chi(b, d)}) == 3:
            return (a, b, d)
    return None


def find_rainbow_copy(c: EdgeColoring, p: SubgraphPattern) -> tuple[int, ...] | None:
    """Vertex images of one rainbow copy (in pattern vertex order), or None."""
    for verts in permutations(range(c.n), p.n_vertices):
        cols = [c.chi(verts[u], verts[v]) for u, v in p.edges]
        if len(set(cols)) == len(cols):
            return verts
    return None


@dataclass
class CopyCountReport:
    rainbow: int
    mono: dict[int, int] = field(default_factory=dict)

    @property
    def mono_total(self) -> int:
        return sum(self.mono.values())

    @property
    def total(self) -> int:
        return self.rainbow + self.mono_total

    def to_dict(self) -> dict:
        return {"rainbow": self.rainbow, "mono": {str(k): v for k, v in sorted(self.mono.items())},
                "total": self.total}


def gm_total(c: EdgeColoring, G: SubgraphPattern, H: SubgraphPattern) -> CopyCountReport:
    """Rainbow copies of ``G`` plus monochromatic copies of ``H`` over all colors."""
    mono = {col: count_monochromatic(c, H, col) for col in range(1, c.k + 1)}
    return CopyCountReport(count_rainbow(c, G), mono)


def ramsey_total(c: EdgeColoring, patterns) -> CopyCountReport:
    """Copies of ``patterns[i-1]`` in color ``i``, summed."""
    mono = {i + 1: count_monochromatic(c, h, i + 1) for i, h in enumerate(patterns)}
    return CopyCountReport(0, mono)


# ---------------------------------------------------------------------------
# copy lists inside K_n (used by the search engine)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def copies_in_complete(p: SubgraphPattern, n: int) -> tuple[tuple[int, ...], ...]:
    """All copies of ``p`` in K_n as sorted tuples of pair ranks."""
    if p.n_vertices > n:
        return ()
    idx = pair_table(n)[1]
    if p.kind == "matching":
        t = p.params[0]
        out = []

        def rec(start_mask: int, chosen: list[int], need: int):
            if need == 0:
                out.append(tuple(sorted(chosen)))
                return
            free = [v for v in range(n) if not start_mask >> v & 1]
            if 2 * need > len(free):
                return
            a = free[0]
            rec(start_mask | 1 << a, chosen, need)  # a left uncovered
            for b in free[1:]:
                chosen.append(idx[a][b])
                rec(start_mask | 1 << a | 1 << b, chosen, need - 1)
                chosen.pop()

        rec(0, [], t)
        return tuple(sorted(out))
    order, back = _search_order(p)
    nv = p.n_vertices
    edge_pairs = []
    for i in range(nv):
        for j in back[i]:
            edge_pairs.append((i, j))
    found = set()
    for verts in permutations(range(n), nv):
        found.add(tuple(sorted(idx[verts[i]][verts[j]] for i, j in edge_pairs)))
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# brooms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpanningBroom:
    color: int
    path: tuple[int, ...]
    leaves: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.path) - 1

    @property
    def center(self) -> int:
        return self.path[-1]

    def edges(self) -> list[tuple[int, int]]:
        es = [(self.path[i], self.path[i + 1]) for i in range(len(self.path) - 1)]
        es += [(self.center, x) for x in self.leaves]
        return es


def _hamiltonian_endpoints(adj: list[int], n: int) -> list[int]:
    """``dp[mask]`` = bitmask of vertices where some Hamiltonian path of ``mask`` ends."""
    dp = [0] * (1 << n)
    for v in range(n):
        dp[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        ends = dp[mask]
        if not ends:
            continue
        rest = ~mask & ((1 << n) - 1)
        e = ends
        while e:
            low = e & -e
            v = low.bit_length() - 1
            e ^= low
            nxt = adj[v] & rest
            while nxt:
                lw = nxt & -nxt
                dp[mask | lw] |= lw
                nxt ^= lw
    return dp


def _trace_path(dp: list[int], adj: list[int], mask: int, end: int) -> list[int]:
    path = [end]
    while mask != 1 << end:
        prev_mask = mask & ~(1 << end)
        cand = dp[prev_mask] & adj[end]
        nxt = (cand & -cand).bit_length() - 1
        path.append(nxt)
        mask, end = prev_mask, nxt
    return path[::-1]


MAX_BROOM_N = 14


@lru_cache(maxsize=None)
def _masks_by_size(n: int) -> tuple[int, ...]:
    return tuple(sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m)))


def find_mono_spanning_broom(c: EdgeColoring) -> SpanningBroom | None:
    """Find a spanning broom inside one color class.

    Warns when the input has a rainbow triangle (outside the theorem's
    hypothesis); raises :class:`TheoremContradiction` when the hypothesis
    holds but no broom exists.
    """
    n = c.n
    if n > MAX_BROOM_N:
        raise PatternError(f"spanning broom search is capped at n <= {MAX_BROOM_N}")
    tri = find_rainbow_triangle(c)
    if tri is not None:
        warnings.warn(f"coloring has rainbow triangle {tri}; broom theorem does not apply",
                      stacklevel=2)
    if n < 2:
        return None
    full = (1 << n) - 1
    for color in sorted(c.used_colors):
        adj = c.adjacency_masks(color)
        dp = _hamiltonian_endpoints(adj, n)
        for u in range(n):
            need = (full & ~adj[u]) | (1 << u)
            for mask in _masks_by_size(n):
                if mask & need != need or not dp[mask] >> u & 1 or mask == 1 << u:
                    continue
                path = _trace_path(dp, adj, mask, u)
                leaves = tuple(v for v in range(n) if not mask >> v & 1)
                return SpanningBroom(color, tuple(path), leaves)
    if tri is None:
        raise TheoremContradiction("rainbow-triangle-free coloring without a monochromatic spanning broom: "
                                   + c.to_json())
    return None


def is_spanning_broom(c: EdgeColoring, b: SpanningBroom) -> bool:
    verts = list(b.path) + list(b.leaves)
    if sorted(verts) != list(range(c.n)) or len(b.path) < 2:
        return False
    return all(c.chi(u, v) == b.color for u, v in b.edges())


def count_two_matchings_in_broom(m: int, leaves: int) -> int:
    if m < 1 or leaves < 0:
        raise PatternError("broom needs m >= 1 and leaves >= 0")
    es = broom_edges(m, leaves)
    return sum(1 for e, f in combinations(es, 2) if not set(e) & set(f))
