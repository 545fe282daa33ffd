"""Brute-force oracles that share no code with the package.

Colorings are plain dicts ``{(u, v): color}`` with ``u < v``; subgraphs are
found by trying every injective vertex map.
"""

import itertools
from math import comb

import numpy as np


def pairs(n):
    return list(itertools.combinations(range(n), 2))


def as_dict(n, colors):
    return dict(zip(pairs(n), colors))


def copies(n, pattern_edges, nv):
    """Distinct edge sets of K_n isomorphic to the pattern."""
    out = set()
    for image in itertools.permutations(range(n), nv):
        es = frozenset(tuple(sorted((image[a], image[b]))) for a, b in pattern_edges)
        out.add(es)
    return out


def count_rainbow(n, colors, pattern_edges, nv):
    col = as_dict(n, colors)
    return sum(1 for es in copies(n, pattern_edges, nv) if len({col[e] for e in es}) == len(es))


def count_mono(n, colors, pattern_edges, nv, color=None):
    col = as_dict(n, colors)
    total = 0
    for es in copies(n, pattern_edges, nv):
        seen = {col[e] for e in es}
        if len(seen) == 1 and (color is None or color in seen):
            total += 1
    return total


def matching_edges(t):
    return [(2 * i, 2 * i + 1) for i in range(t)], 2 * t


def path_edges(m):
    return [(i, i + 1) for i in range(m - 1)], m


def star_edges(s):
    return [(0, i) for i in range(1, s + 1)], s + 1


TRIANGLE = ([(0, 1), (0, 2), (1, 2)], 3)


def all_colorings(n, k, chunk=1 << 18):
    """Every labeled coloring of K_n with colors 1..k, as int8 arrays in chunks."""
    E = comb(n, 2)
    total = k ** E
    weights = k ** np.arange(E - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield ((idx[:, None] // weights[None, :]) % k + 1).astype(np.int8)


def copy_index_lists(n, pattern_edges, nv):
    rank = {p: i for i, p in enumerate(pairs(n))}
    return [sorted(rank[e] for e in es) for es in copies(n, pattern_edges, nv)]


def vector_counts(block, rainbow_idx, mono_idx):
    """Rainbow and monochromatic copy counts for every row of ``block``."""
    r = np.zeros(len(block), dtype=np.int64)
    for cp in rainbow_idx:
        cols = block[:, cp]
        ok = np.ones(len(block), dtype=bool)
        for a, b in itertools.combinations(range(len(cp)), 2):
            ok &= cols[:, a] != cols[:, b]
        r += ok
    m = np.zeros(len(block), dtype=np.int64)
    for cp in mono_idx:
        cols = block[:, cp]
        ok = np.all(cols == cols[:, :1], axis=1)
        m += ok
    return r, m


def gm_bruteforce(n, k, rainbow, mono):
    """(min total, number of labeled minimizers) over exact k-colorings of K_n."""
    ridx = copy_index_lists(n, *rainbow) if rainbow else []
    midx = copy_index_lists(n, *mono)
    best, count = None, 0
    for block in all_colorings(n, k):
        exact = np.ones(len(block), dtype=bool)
        for c in range(1, k + 1):
            exact &= np.any(block == c, axis=1)
        r, m = vector_counts(block, ridx, midx)
        tot = (r + m)[exact]
        if not len(tot):
            continue
        lo = int(tot.min())
        if best is None or lo < best:
            best, count = lo, int((tot == lo).sum())
        elif lo == best:
            count += int((tot == lo).sum())
    return best, count


def has_avoider(n, k, rainbow, mono, exact=True):
    """Whether some k-coloring of K_n has no rainbow copy and no monochromatic copy."""
    ridx = copy_index_lists(n, *rainbow) if rainbow else []
    midx = copy_index_lists(n, *mono)
    for block in all_colorings(n, k):
        ok = np.ones(len(block), dtype=bool)
        if exact:
            for c in range(1, k + 1):
                ok &= np.any(block == c, axis=1)
        r, m = vector_counts(block, ridx, midx)
        if np.any(ok & (r == 0) & (m == 0)):
            return True
    return False


def ramsey_avoider(n, per_color):
    """Whether some coloring of K_n with len(per_color) colors avoids pattern i in color i."""
    k = len(per_color)
    idx = [copy_index_lists(n, *p) for p in per_color]
    for block in all_colorings(n, k):
        ok = np.ones(len(block), dtype=bool)
        for c, cps in enumerate(idx, start=1):
            for cp in cps:
                ok &= ~np.all(block[:, cp] == c, axis=1)
        if ok.any():
            return True
    return False


def orbit_count(n, k, colors, color_symmetric=True):
    """Size of the equivalence class of a coloring among labeled colorings (tiny n only)."""
    col = as_dict(n, colors)
    seen = set()
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(col[tuple(sorted((perm[u], perm[v])))] for u, v in pairs(n))
        if color_symmetric:
            for cperm in itertools.permutations(range(1, k + 1)):
                seen.add(tuple(cperm[x - 1] for x in relabeled))
        else:
            seen.add(relabeled)
    return len(seen)


def equivalent(n, k, a, b, color_symmetric=True):
    col = as_dict(n, a)
    target = tuple(b)
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(col[tuple(sorted((perm[u], perm[v])))] for u, v in pairs(n))
        if color_symmetric:
            for cperm in itertools.permutations(range(1, k + 1)):
                if tuple(cperm[x - 1] for x in relabeled) == target:
                    return True
        elif relabeled == target:
            return True
    return False
