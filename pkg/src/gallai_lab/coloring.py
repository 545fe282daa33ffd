"""Edge-colorings of complete graphs, enumeration and canonical forms.

Colorings are stored as a flat tuple indexed by the lexicographic rank of the
vertex pair ``(u, v)``, ``u < v``.  Colors are 1-based.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np


class ColoringError(ValueError):
    """Malformed coloring input."""


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, ...], ...]]:
    """Return ``(pairs, index)`` where ``index[u][v]`` is the rank of pair {u, v}."""
    pairs = tuple(itertools.combinations(range(n), 2))
    index = [[-1] * n for _ in range(n)]
    for r, (u, v) in enumerate(pairs):
        index[u][v] = r
        index[v][u] = r
    return pairs, tuple(tuple(row) for row in index)


def pair_index(n: int, u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def rgs_relabel(colors: Sequence[int]) -> tuple[int, ...]:
    """Relabel colors by first occurrence (restricted-growth form)."""
    mapping: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in mapping:
            mapping[c] = len(mapping) + 1
        out.append(mapping[c])
    return tuple(out)


@dataclass(frozen=True)
class ColorClassView:
    color: int
    edges: frozenset[tuple[int, int]]
    vertices: frozenset[int]


@dataclass(frozen=True)
class EdgeColoring:
    """A coloring of every edge of K_n with colors from 1..k."""

    n: int
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ColoringError(f"vertex count must be positive, got {self.n}")
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if len(colors) != comb(self.n, 2):
            raise ColoringError(
                f"expected {comb(self.n, 2)} edge colors for n={self.n}, got {len(colors)}")
        for c in colors:
            if c < 1 or c > self.k:
                raise ColoringError(f"color {c} outside 1..{self.k}")

    # -- basic access -------------------------------------------------
    def chi(self, u: int, v: int) -> int:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ColoringError(f"no edge ({u}, {v}) in K_{self.n}")
        return self.colors[pair_table(self.n)[1][u][v]]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return pair_table(self.n)[0]

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, c) for (u, v), c in zip(self.pairs, self.colors)]

    @property
    def used_colors(self) -> frozenset[int]:
        return frozenset(self.colors)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def is_exact(self, k: int | None = None) -> bool:
        k = self.k if k is None else k
        return set(self.colors) == set(range(1, k + 1))

    def color_class(self, color: int) -> ColorClassView:
        edges = frozenset(p for p, c in zip(self.pairs, self.colors) if c == color)
        verts = frozenset(x for e in edges for x in e)
        return ColorClassView(color, edges, verts)

    def incident_colors(self, v: int) -> list[int]:
        idx = pair_table(self.n)[1][v]
        return [self.colors[idx[u]] for u in range(self.n) if u != v]

    def color_neighborhood(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return frozenset(self.incident_colors(v))

    def color_degree(self, v: int) -> int:
        return len(self.color_neighborhood(v))

    def adjacency_masks(self, color: int) -> list[int]:
        """Bitmask neighbourhoods of the graph formed by one color class."""
        masks = [0] * self.n
        for (u, v), c in zip(self.pairs, self.colors):
            if c == color:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
        return masks

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise ColoringError(f"vertex {v} out of range for n={self.n}")

    # -- transformations ----------------------------------------------
    def permute_vertices(self, perm: Sequence[int]) -> "EdgeColoring":
        """Vertex ``perm[i]`` of the result is vertex ``i`` of ``self``."""
        idx = pair_table(self.n)[1]
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        colors = tuple(self.colors[idx[inv[u]][inv[v]]] for u, v in self.pairs)
        return EdgeColoring(self.n, self.k, colors)

    def recolor(self, mapping: dict[int, int], k: int | None = None) -> "EdgeColoring":
        colors = tuple(mapping.get(c, c) for c in self.colors)
        return EdgeColoring(self.n, k if k is not None else max(self.k, max(colors)), colors)

    def induced(self, vertices: Sequence[int]) -> "EdgeColoring":
        vs = list(vertices)
        idx = pair_table(self.n)[1]
        m = len(vs)
        colors = tuple(self.colors[idx[vs[a]][vs[b]]] for a, b in pair_table(m)[0])
        return EdgeColoring(m, self.k, colors)

    # -- interchange ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "edges": [[u, v, c] for u, v, c in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeColoring":
        try:
            n = int(data["n"])
            edges = data["edges"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ColoringError(f"malformed coloring object: {exc}") from exc
        k = data.get("k")
        return build_coloring(n, [tuple(e) for e in edges], k=k)

    @classmethod
    def from_json(cls, text: str) -> "EdgeColoring":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ColoringError(f"malformed coloring JSON: {exc}") from exc
        return cls.from_dict(data)

    def __repr__(self):
        return f"EdgeColoring(n={self.n}, k={self.k}, colors={self.colors})"


def build_coloring(n: int, assignments: Iterable[Sequence[int]], k: int | None = None) -> EdgeColoring:
    """Build a coloring from ``(u, v, color)`` triples covering every pair once."""
    _, idx = pair_table(n)
    colors: list[int | None] = [None] * comb(n, 2)
    for item in assignments:
        if len(item) != 3:
            raise ColoringError(f"edge entry must be [u, v, color], got {item!r}")
        u, v, c = (int(x) for x in item)
        if u > v:
            u, v = v, u
        if not (0 <= u < v < n):
            raise ColoringError(f"invalid pair ({u}, {v}) for n={n}")
        if c < 1:
            raise ColoringError(f"color must be >= 1, got {c} on ({u}, {v})")
        r = idx[u][v]
        if colors[r] is not None:
            raise ColoringError(f"duplicate pair ({u}, {v})")
        colors[r] = c
    pairs = pair_table(n)[0]
    for r, c in enumerate(colors):
        if c is None:
            u, v = pairs[r]
            raise ColoringError(f"pair ({u}, {v}) missing")
    used_max = max(colors, default=1)
    if k is None:
        k = used_max
    elif used_max > k:
        raise ColoringError(f"color {used_max} exceeds k={k}")
    return EdgeColoring(n, int(k), tuple(colors))


def monochromatic(n: int, color: int = 1, k: int | None = None) -> EdgeColoring:
    return EdgeColoring(n, k or color, (color,) * comb(n, 2))


def from_function(n: int, fn: Callable[[int, int], int], k: int | None = None) -> EdgeColoring:
    colors = tuple(fn(u, v) for u, v in pair_table(n)[0])
    return EdgeColoring(n, k if k is not None else max(colors, default=1), colors)


def color_degree(c: EdgeColoring, v: int) -> int:
    return c.color_degree(v)


def color_neighborhood(c: EdgeColoring, v: int) -> frozenset[int]:
    return c.color_neighborhood(v)


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _vertex_cells(n: int, colors: Sequence[int], color_symmetric: bool) -> list[list[int]]:
    """Ordered partition of the vertices by an iterated isomorphism invariant."""
    idx = pair_table(n)[1]
    size: dict[int, int] = {}
    for c in colors:
        size[c] = size.get(c, 0) + 1
    label = (lambda c: size[c]) if color_symmetric else (lambda c: (c, size[c]))
    inc = [[colors[idx[v][u]] for u in range(n)] if n > 1 else [] for v in range(n)]

    inv: list = []
    for v in range(n):
        deg: dict[int, int] = {}
        for u in range(n):
            if u != v:
                deg[inc[v][u]] = deg.get(inc[v][u], 0) + 1
        inv.append(tuple(sorted((label(c), d) for c, d in deg.items())))
    n_cells = len(set(inv))
    while True:
        ranks = {x: r for r, x in enumerate(sorted(set(inv)))}
        compact = [ranks[x] for x in inv]
        new = [
            (compact[v], tuple(sorted((label(inc[v][u]), compact[u]) for u in range(n) if u != v)))
            for v in range(n)
        ]
        cnt = len(set(new))
        ranks = {x: r for r, x in enumerate(sorted(set(new)))}
        inv = [ranks[x] for x in new]
        if cnt == n_cells:
            break
        n_cells = cnt
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(inv[v], []).append(v)
    return [cells[r] for r in sorted(cells)]


@lru_cache(maxsize=None)
def _pair_arrays(n: int):
    pairs = pair_table(n)[0]
    I = np.array([p[0] for p in pairs], dtype=np.int64)
    J = np.array([p[1] for p in pairs], dtype=np.int64)
    index = np.array(pair_table(n)[1], dtype=np.int64) if n > 1 else np.zeros((n, n), dtype=np.int64)
    return I, J, index


def _rgs_rows(seq: np.ndarray) -> np.ndarray:
    """Restricted-growth relabeling applied to every row of ``seq``."""
    rows, width = seq.shape
    kmax = int(seq.max()) if seq.size else 0
    first = np.full((rows, kmax + 1), width + 1, dtype=np.int64)
    for c in range(1, kmax + 1):
        hit = seq == c
        has = hit.any(axis=1)
        first[:, c] = np.where(has, hit.argmax(axis=1), width + 1)
    order = np.argsort(first, axis=1, kind="stable")
    mapping = np.empty_like(order)
    ar = np.arange(rows)[:, None]
    mapping[ar, order] = np.arange(kmax + 1)[None, :]
    # color 0 never occurs so its first index sorts last; shift labels to start at 1
    return np.take_along_axis(mapping, seq, axis=1) + 1


def canonical_sequence(c: EdgeColoring, color_symmetric: bool = True) -> tuple[tuple, tuple[int, ...]]:
    """Return ``(signature, colors)`` of a canonical relabeling of ``c``."""
    n = c.n
    if n < 2:
        return ((), ())
    cells = _vertex_cells(n, c.colors, color_symmetric)
    signature = tuple(len(cell) for cell in cells)
    perms = [list(itertools.chain.from_iterable(choice))
             for choice in itertools.product(*(itertools.permutations(cell) for cell in cells))]
    P = np.array(perms, dtype=np.int64)
    I, J, index = _pair_arrays(n)
    old = index[P[:, I], P[:, J]]
    seq = np.asarray(c.colors, dtype=np.int64)[old]
    if color_symmetric:
        seq = _rgs_rows(seq)
    order = np.lexsort(seq.T[::-1])
    best = tuple(int(x) for x in seq[order[0]])
    return signature, best


def canonical_form(c: EdgeColoring, color_symmetric: bool = True) -> tuple:
    """Key that is equal for two colorings iff they are equivalent.

    Equivalence is vertex relabeling combined with color permutation (the
    latter only when ``color_symmetric``).
    """
    sig, seq = canonical_sequence(c, color_symmetric)
    return (c.n, sig, seq)


def canonical_coloring(c: EdgeColoring, color_symmetric: bool = True) -> EdgeColoring:
    _, seq = canonical_sequence(c, color_symmetric)
    if c.n < 2:
        return c
    return EdgeColoring(c.n, c.k, seq)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

EXACTNESS = ("exact", "at-most")
SYMMETRY = ("labeled", "color-canonical", "full-canonical")


@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    max_colors: int
    exactness: str = "exact"
    symmetry: str = "labeled"
    local_bound: int | None = None

    def __post_init__(self):
        if self.exactness not in EXACTNESS:
            raise ValueError(f"exactness must be one of {EXACTNESS}")
        if self.symmetry not in SYMMETRY:
            raise ValueError(f"symmetry must be one of {SYMMETRY}")
        if self.local_bound is not None and self.local_bound < 1:
            raise ValueError("local_bound must be >= 1")
        if self.n < 2 or self.max_colors < 1:
            raise ValueError("need n >= 2 and max_colors >= 1")


def _dfs_colorings(n: int, max_colors: int, rgs: bool, exact: bool,
                   local_bound: int | None) -> Iterator[tuple[int, ...]]:
    pairs = pair_table(n)[0]
    E = len(pairs)
    colors = [0] * E
    seen = [dict() for _ in range(n)]  # vertex -> color -> multiplicity

    def rec(e: int, used: int):
        if exact and max_colors - used > E - e:
            return
        if e == E:
            if not exact or used == max_colors:
                yield tuple(colors)
            return
        u, v = pairs[e]
        top = min(max_colors, used + 1) if rgs else max_colors
        for c in range(1, top + 1):
            su, sv = seen[u], seen[v]
            if local_bound is not None:
                if (c not in su and len(su) >= local_bound) or (c not in sv and len(sv) >= local_bound):
                    continue
            colors[e] = c
            su[c] = su.get(c, 0) + 1
            sv[c] = sv.get(c, 0) + 1
            new_used = used + 1 if (rgs and c > used) else used
            if not rgs:
                new_used = len(set(colors[: e + 1]))
            yield from rec(e + 1, new_used)
            for s in (su, sv):
                s[c] -= 1
                if not s[c]:
                    del s[c]
        colors[e] = 0

    yield from rec(0, 0)


def enumerate_colorings(spec: EnumerationSpec) -> Iterator[EdgeColoring]:
    """Yield every coloring satisfying ``spec`` once (per orbit when reduced)."""
    n, k = spec.n, spec.max_colors
    exact = spec.exactness == "exact"
    if exact and k > comb(n, 2):
        return
    if spec.symmetry == "full-canonical":
        for rep in grow_canonical(n, k, color_symmetric=True, local_bound=spec.local_bound):
            if not exact or rep.num_colors == k:
                yield EdgeColoring(n, k, rep.colors)
        return
    rgs = spec.symmetry == "color-canonical"
    for cols in _dfs_colorings(n, k, rgs, exact, spec.local_bound):
        yield EdgeColoring(n, k, cols)


def enumerate_local_colorings(n: int, k: int) -> Iterator[EdgeColoring]:
    """Color-canonical colorings of K_n whose color degrees are all at most ``k``."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    E = comb(n, 2)
    for cols in _dfs_colorings(n, E, True, False, k):
        yield EdgeColoring(n, max(cols), cols)


# ---------------------------------------------------------------------------
# hereditary growth, one vertex at a time, up to full equivalence
# ---------------------------------------------------------------------------

RowCheck = Callable[[EdgeColoring, list, int], bool]


@dataclass
class GrowthStats:
    candidates: int = 0
    accepted: int = 0
    per_level: dict = field(default_factory=dict)


def extend_by_vertex(base: EdgeColoring, max_colors: int, *, color_symmetric: bool = True,
                     local_bound: int | None = None,
                     check: RowCheck | None = None,
                     stats: GrowthStats | None = None) -> Iterator[tuple[int, ...]]:
    """Yield color tuples of K_{m+1} extending ``base`` (on K_m) by vertex ``m``.

    ``check(base, row, i)`` is called after the edge ``(i, m)`` receives
    ``row[i]`` and may reject the partial row.
    """
    m = base.n
    idx = pair_table(m)[1]
    base_cols = base.colors
    used = max(base_cols, default=0) if color_symmetric else 0
    deg = []
    if local_bound is not None:
        for v in range(m):
            deg.append(set(base_cols[idx[v][u]] for u in range(m) if u != v))
    row = [0] * m
    new_pairs, _ = pair_table(m + 1)

    def emit():
        full = []
        for (u, v) in new_pairs:
            if v == m:
                full.append(row[u])
            else:
                full.append(base_cols[idx[u][v]])
        return tuple(full)

    def rec(i: int, top_used: int, mine: set):
        if i == m:
            yield emit()
            return
        top = min(max_colors, top_used + 1) if color_symmetric else max_colors
        for c in range(1, top + 1):
            if stats is not None:
                stats.candidates += 1
            if local_bound is not None:
                if c not in deg[i] and len(deg[i]) >= local_bound:
                    continue
                if c not in mine and len(mine) >= local_bound:
                    continue
            row[i] = c
            if check is not None and not check(base, row, i):
                continue
            added = c not in mine
            if added:
                mine.add(c)
            yield from rec(i + 1, max(top_used, c), mine)
            if added:
                mine.discard(c)
        row[i] = 0

    yield from rec(0, used, set())


def grow_canonical(n: int, max_colors: int, *, color_symmetric: bool = True,
                   local_bound: int | None = None,
                   check_factory: Callable[[int], RowCheck | None] | None = None,
                   start: Sequence[EdgeColoring] | None = None,
                   stats: GrowthStats | None = None,
                   on_level: Callable[[int, list[EdgeColoring]], None] | None = None) -> list[EdgeColoring]:
    """Canonical representatives of a hereditary family of colorings of K_n.

    The family is "at most ``max_colors`` colors, optional local bound, and
    whatever ``check_factory(m)`` rejects on K_m".  Because every such
    property is closed under taking induced subgraphs, every member of K_n
    extends some member of K_{n-1}.
    """
    if start is None:
        level = [EdgeColoring(1, max_colors, ())]
    else:
        level = list(start)
    m = level[0].n if level else n
    while m < n:
        check = check_factory(m + 1) if check_factory else None
        found: dict = {}
        for base in level:
            for cols in extend_by_vertex(base, max_colors, color_symmetric=color_symmetric,
                                         local_bound=local_bound, check=check, stats=stats):
                cand = EdgeColoring(m + 1, max_colors, cols)
                key = canonical_form(cand, color_symmetric)
                if key not in found:
                    found[key] = EdgeColoring(m + 1, max_colors, key[2])
        m += 1
        level = [found[key] for key in sorted(found)]
        if stats is not None:
            stats.accepted += len(level)
            stats.per_level[m] = len(level)
        if on_level is not None:
            on_level(m, level)
    return level
