"""Enumerating and counting regions as valid m-acyclic digraphs.

The search assigns pairs in lexicographic order, trying the interval index ``k``
in increasing order, so regions come out in lexicographic order of their index
vectors.  After each assignment it keeps the all-pairs maximum walk weights over
the edges fixed so far; an m-ascending cycle among fixed edges survives every
completion, so such a branch is cut immediately.
"""

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from math import factorial

from .arrangement import ArrangementSpec, pair_weights, pairs, preset
from .digraph import WeightedDigraph, is_m_acyclic, strong_components
from .errors import BudgetExceeded, InputError
from .weights import NEG_INF, common_scale

__all__ = [
    "RegionConfig",
    "RegionCount",
    "DEFAULT_BUDGET",
    "budget_from_env",
    "region_from_digraph",
    "candidates",
    "enumerate_regions",
    "count_regions",
    "count_via_structure",
    "ordered_set_partitions",
    "verify_exponential_formula",
    "EXPONENTIAL_FAMILIES",
]

DEFAULT_BUDGET = 10**8


def budget_from_env(default=DEFAULT_BUDGET):
    raw = os.environ.get("ARR_BUDGET")
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"ARR_BUDGET must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError("ARR_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class RegionConfig:
    """One candidate region: an interval index per pair, in the canonical pair order."""

    spec: ArrangementSpec
    k: tuple

    def __post_init__(self):
        if len(self.k) != len(self.spec.values):
            raise InputError("index vector length does not match the number of pairs")
        for kk, vals in zip(self.k, self.spec.values):
            if not (isinstance(kk, int) and 0 <= kk <= len(vals)):
                raise InputError(f"index {kk!r} out of range 0..{len(vals)}")

    @cached_property
    def digraph(self):
        edges = {}
        for (i, j), kk, vals in zip(pairs(self.spec.n), self.k, self.spec.values):
            fwd, bwd = pair_weights(vals, kk)
            if fwd is not NEG_INF:
                edges[(i, j)] = fwd
            if bwd is not NEG_INF:
                edges[(j, i)] = bwd
        return WeightedDigraph.from_edges(self.spec.n, edges)

    @property
    def n(self):
        return self.spec.n

    def is_region(self):
        return is_m_acyclic(self.digraph)[0]

    def is_bounded(self):
        return strong_components(self.digraph)[1]

    def to_json(self):
        return {"k": list(self.k), "digraph": self.digraph.to_json(), "bounded": self.is_bounded()}


def region_from_digraph(spec, digraph):
    """Recover the index vector of a valid digraph; raises if the digraph is not valid for ``spec``."""
    if digraph.n != spec.n:
        raise InputError("digraph and arrangement disagree on n")
    ks = []
    for (i, j), vals in zip(pairs(spec.n), spec.values):
        target = (digraph.w(i, j), digraph.w(j, i))
        for kk in range(len(vals) + 1):
            if pair_weights(vals, kk) == target:
                ks.append(kk)
                break
        else:
            raise InputError(f"pair ({i}, {j}) weights {target} match no interval of the arrangement")
    return RegionConfig(spec, tuple(ks))


def candidates(spec):
    """Every index vector, valid or not, in lexicographic order (no pruning)."""
    for ks in itertools.product(*[range(len(v) + 1) for v in spec.values]):
        yield RegionConfig(spec, ks)


@dataclass
class RegionCount:
    total: int
    bounded: int
    profiles: dict = field(default_factory=dict)

    def __post_init__(self):
        assert 0 <= self.bounded <= self.total

    def to_json(self):
        out = {"total": self.total, "bounded": self.bounded}
        if self.profiles:
            out["profiles"] = {",".join(map(str, k)): v for k, v in sorted(self.profiles.items())}
        return out


# --- the search -------------------------------------------------------------------------


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.cap:
            raise BudgetExceeded(f"enumeration exceeded its budget of {self.cap} candidate nodes")


def _scaled_pairs(spec):
    scale = common_scale(v for vals in spec.values for v in vals)
    table = []
    for (i, j), vals in zip(pairs(spec.n), spec.values):
        opts = []
        for kk in range(len(vals) + 1):
            fwd, bwd = pair_weights(vals, kk)
            opts.append(
                (
                    None if fwd is NEG_INF else int(fwd * scale),
                    None if bwd is NEG_INF else int(bwd * scale),
                )
            )
        table.append((i - 1, j - 1, opts))
    return table


def _add_edge_full(d, u, v, c):
    """Add ``u -> v`` of weight ``c`` to the max-walk matrix ``d``; False if a cycle turns nonnegative."""
    back = d[v][u]
    if back is not None and back + c >= 0:
        return False
    n = len(d)
    col_u = [d[x][u] for x in range(n)]
    row_v = d[v]
    for x in range(n):
        dx = 0 if x == u else col_u[x]
        if dx is None:
            continue
        rowx = d[x]
        base = dx + c
        for y in range(n):
            if x == y:
                continue
            dy = 0 if y == v else row_v[y]
            if dy is None:
                continue
            t = base + dy
            if rowx[y] is None or t > rowx[y]:
                rowx[y] = t
    return True


def _short_back_walk(adj, v, u, steps):
    """Maximum weight of a walk ``v -> u`` with at most ``steps`` edges over the fixed edges."""
    n = len(adj)
    cur = [None] * n
    cur[v] = 0
    best = None
    for _ in range(steps):
        nxt = [None] * n
        for x in range(n):
            cx = cur[x]
            if cx is None:
                continue
            for y, c in adj[x]:
                t = cx + c
                if nxt[y] is None or t > nxt[y]:
                    nxt[y] = t
        cur = nxt
        if cur[u] is not None and (best is None or cur[u] > best):
            best = cur[u]
    return best


def _search(spec, bound, budget, first_k=None):
    """Yield index vectors of regions in lexicographic order."""
    n = spec.n
    table = _scaled_pairs(spec)
    m = len(table)
    if m == 0:
        yield ()
        return
    ks = [0] * m

    if bound is None:

        def rec(t, d):
            i, j, opts = table[t]
            rng = range(len(opts)) if (t > 0 or first_k is None) else [first_k]
            for kk in rng:
                budget.tick()
                fwd, bwd = opts[kk]
                nd = [row[:] for row in d]
                if fwd is not None and not _add_edge_full(nd, i, j, fwd):
                    continue
                if bwd is not None and not _add_edge_full(nd, j, i, bwd):
                    continue
                ks[t] = kk
                if t + 1 == m:
                    yield tuple(ks)
                else:
                    yield from rec(t + 1, nd)

        yield from rec(0, [[None] * n for _ in range(n)])
        return

    adj = [[] for _ in range(n)]

    def ok(u, v, c):
        back = _short_back_walk(adj, v, u, bound - 1)
        return back is None or back + c < 0

    def rec_bounded(t):
        i, j, opts = table[t]
        rng = range(len(opts)) if (t > 0 or first_k is None) else [first_k]
        for kk in rng:
            budget.tick()
            fwd, bwd = opts[kk]
            added = []
            good = True
            for u, v, c in ((i, j, fwd), (j, i, bwd)):
                if c is None:
                    continue
                if not ok(u, v, c):
                    good = False
                    break
                adj[u].append((v, c))
                added.append(u)
            if good:
                ks[t] = kk
                if t + 1 == m:
                    yield tuple(ks)
                else:
                    yield from rec_bounded(t + 1)
            for u in reversed(added):
                adj[u].pop()

    yield from rec_bounded(0)


def _shard(args):
    spec, bound, cap, first_k = args
    return list(_search(spec, bound, _Budget(cap), first_k))


def enumerate_regions(spec, bound=None, budget=None, workers=1):
    """Regions of ``spec`` as :class:`RegionConfig`, in lexicographic order of the index vector.

    ``bound`` switches to the shortcut test that only rejects m-ascending cycles of
    length at most ``bound`` (sound when ``bound >= cycle_check_bound(spec)``).
    With ``workers > 1`` the space is split on the first pair's index; each shard
    gets the full budget and the results are merged in order.
    """
    if bound is not None and bound < 2:
        raise InputError("cycle length bound must be at least 2")
    cap = budget_from_env() if budget is None else budget
    if workers > 1 and spec.values:
        shards = [(spec, bound, cap, kk) for kk in range(len(spec.values[0]) + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_shard, shards):
                for ks in chunk:
                    yield RegionConfig(spec, ks)
        return
    for ks in _search(spec, bound, _Budget(cap)):
        yield RegionConfig(spec, ks)


def count_regions(spec, bound=None, budget=None, workers=1, profiles=False):
    """Total and bounded region counts; bounded means strongly connected."""
    total = bounded = 0
    prof = {}
    for region in enumerate_regions(spec, bound=bound, budget=budget, workers=workers):
        total += 1
        comps, strong = strong_components(region.digraph)
        bounded += strong
        if profiles:
            key = tuple(len(c) for c in comps)
            prof[key] = prof.get(key, 0) + 1
    return RegionCount(total, bounded, prof)


# --- structure theorem and exponential formula ------------------------------------------


def ordered_set_partitions(items):
    """All ordered set partitions of ``items`` as tuples of frozensets."""
    items = list(items)
    if not items:
        yield ()
        return
    rest = items[1:]
    for size in range(len(items)):
        for others in itertools.combinations(rest, size):
            block = frozenset((items[0],) + others)
            remaining = [x for x in rest if x not in block]
            for tail in ordered_set_partitions(remaining):
                for pos in range(len(tail) + 1):
                    yield tail[:pos] + (block,) + tail[pos:]


def count_via_structure(spec, budget=None):
    """Region count as a sum over ordered set partitions of products of bounded counts.

    Each block contributes the number of bounded regions of the sub-arrangement
    it induces.
    """
    if any(len(v) == 0 for v in spec.values):
        raise InputError("count_via_structure needs at least one hyperplane per pair")
    cache = {}

    def b(block):
        if block not in cache:
            cache[block] = count_regions(spec.restrict(block), budget=budget).bounded
        return cache[block]

    total = 0
    for partition in ordered_set_partitions(range(1, spec.n + 1)):
        prod = 1
        for block in partition:
            prod *= b(block)
            if prod == 0:
                break
        total += prod
    return total


EXPONENTIAL_FAMILIES = ("linial", "shi", "eshi", "catalan", "semiorder", "truncated", "interval")


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for tail in _compositions(n - first):
            yield (first,) + tail


def verify_exponential_formula(family, n_max, params=(), budget=None):
    """Check ``r_n = sum over compositions of multinomial(n; n_1..n_k) * prod b_{n_i}`` for ``n <= n_max``.

    Also checks the power-series form ``B = 1 - 1/R`` coefficientwise.  Returns a
    dict with ``ok``, the ``r`` and ``b`` sequences and ``first_failure`` (or None).
    """
    if family not in EXPONENTIAL_FAMILIES:
        raise InputError(f"{family} is not an exponential family; use one of {', '.join(EXPONENTIAL_FAMILIES)}")
    r, b = {0: 1}, {0: 0}
    for n in range(1, n_max + 1):
        c = count_regions(preset(family, params, n), budget=budget)
        r[n], b[n] = c.total, c.bounded
    failure = None
    for n in range(1, n_max + 1):
        rhs = 0
        for comp in _compositions(n):
            coeff = factorial(n)
            for part in comp:
                coeff //= factorial(part)
            prod = coeff
            for part in comp:
                prod *= b[part]
            rhs += prod
        if rhs != r[n]:
            failure = n
            break
    if failure is None:
        # exponential generating functions with rational coefficients: B = 1 - 1/R
        R = [Fraction(r[n], factorial(n)) for n in range(n_max + 1)]
        inv = [Fraction(0)] * (n_max + 1)
        inv[0] = 1 / R[0]
        for n in range(1, n_max + 1):
            inv[n] = -sum(R[t] * inv[n - t] for t in range(1, n + 1)) / R[0]
        for n in range(1, n_max + 1):
            if Fraction(b[n], factorial(n)) != -inv[n]:
                failure = n
                break
    return {
        "family": family,
        "params": [str(p) for p in params],
        "n_max": n_max,
        "r": [r[n] for n in range(1, n_max + 1)],
        "b": [b[n] for n in range(1, n_max + 1)],
        "ok": failure is None,
        "first_failure": failure,
    }

