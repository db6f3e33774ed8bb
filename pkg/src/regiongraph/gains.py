"""Order of gains, gain function and tree, Pak-Stanley labels, posets of gains,
and alternating cycles of tournaments.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import beta, classify
from .digraph import WeightedDigraph, is_m_acyclic, max_gain_paths, nonneg_reachability, strong_components
from .errors import InputError, NotApplicable, NotMAcyclic, SizeLimitError
from .weights import NEG_INF

__all__ = [
    "GainProfile",
    "PakStanleyLabel",
    "GainPoset",
    "order_of_gains",
    "gain_function",
    "gain_tree",
    "gain_profile",
    "is_noncrossing",
    "sigma_decomposition",
    "pak_stanley_label",
    "is_a_parking_function",
    "a_parking_functions",
    "pak_stanley_key_holds",
    "extended_shi_bounds_hold",
    "gain_poset",
    "incomparability_connected",
    "has_alternating_cycle",
    "alternating_cycle_free",
    "alternation_acyclic_count",
    "MAX_ALTERNATING_N",
]

MAX_ALTERNATING_N = 6


def _unpack(region, spec=None):
    if isinstance(region, WeightedDigraph):
        return region, spec
    return region.digraph, (spec if spec is not None else region.spec)


def _require_acyclic(digraph, what):
    ok, witness = is_m_acyclic(digraph)
    if not ok:
        raise NotMAcyclic(f"{what} needs a region; found m-ascending cycle {witness.vertices}", witness)


def order_of_gains(region, spec=None):
    """The permutation ``sigma`` with ``w(sigma(i), sigma(j)) >= 0`` for all ``i < j``."""
    digraph, spec = _unpack(region, spec)
    if spec is not None and not classify(spec).separated:
        raise NotApplicable("the order of gains needs a separated arrangement")
    _require_acyclic(digraph, "order_of_gains")
    n = digraph.n
    wins = {v: 0 for v in range(1, n + 1)}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        fwd, bwd = digraph.w(i, j), digraph.w(j, i)
        a, b = fwd is not NEG_INF and fwd >= 0, bwd is not NEG_INF and bwd >= 0
        if a == b:
            raise NotApplicable(f"pair ({i}, {j}) has no unique nonnegative edge; the arrangement is not separated")
        wins[i if a else j] += 1
    sigma = tuple(sorted(wins, key=lambda v: -wins[v]))
    if sorted(wins.values()) != list(range(n)):
        raise AssertionError("nonnegative edges of an m-acyclic digraph must form a transitive tournament")
    return sigma


@dataclass(frozen=True)
class GainProfile:
    sigma: tuple
    g: dict
    parent: dict
    decomposition: tuple

    def g_along_sigma(self):
        return tuple(self.g[v] for v in self.sigma)


def _greedy_ok(spec):
    if spec is None:
        raise NotApplicable("greedy gains need the arrangement to check the weak triangle inequality")
    report = classify(spec)
    if not (report.integral and report.separated and report.weak_triangle):
        raise NotApplicable("greedy gains need a separated integral arrangement with the weak triangle inequality")


def _greedy(digraph, sigma):
    g, parent = {sigma[0]: Fraction(0)}, {sigma[0]: sigma[0]}
    for i in range(1, len(sigma)):
        v = sigma[i]
        best, arg = None, None
        for j in range(i):
            u = sigma[j]
            c = g[u] + digraph.w(u, v)
            if best is None or c >= best:
                best, arg = c, u
        g[v], parent[v] = best, arg
    return g, parent


def gain_function(region, mode="general", spec=None, check=True):
    """Gain of every vertex: maximum weight of a directed path from ``sigma(1)``.

    ``mode="greedy"`` uses the one-pass recursion along ``sigma`` instead, which
    is only correct under the weak triangle inequality and refuses otherwise
    (pass ``check=False`` to run it anyway).
    """
    digraph, spec = _unpack(region, spec)
    sigma = order_of_gains(digraph, spec)
    if mode == "general":
        return max_gain_paths(digraph, sigma[0])
    if mode == "greedy":
        if check:
            _greedy_ok(spec)
        return _greedy(digraph, sigma)[0]
    raise InputError(f"unknown gain mode {mode!r}")


def gain_tree(region, spec=None):
    """``(parent, signature)``.

    ``parent[sigma(i)]`` is ``sigma(j)`` for the largest ``j < i`` attaining the
    greedy maximum; the root is its own parent.  ``signature`` is the label-free
    shape: the parent's position for every position ``2..n``.
    """
    digraph, spec = _unpack(region, spec)
    sigma = order_of_gains(digraph, spec)
    _greedy_ok(spec)
    _, parent = _greedy(digraph, sigma)
    pos = {v: t + 1 for t, v in enumerate(sigma)}
    signature = tuple(pos[parent[v]] for v in sigma[1:])
    return parent, signature


def is_noncrossing(sigma, parent):
    """No two tree edges interleave as ``p(i1) < p(i2) < i1 < i2`` in sigma positions."""
    pos = {v: t for t, v in enumerate(sigma)}
    arcs = [(pos[parent[v]], pos[v]) for v in sigma[1:]]
    for (p1, c1), (p2, c2) in itertools.permutations(arcs, 2):
        if c1 < c2 and p1 < p2 < c1:
            return False
    return True


def sigma_decomposition(region, spec=None):
    """Indices ``1 = i_0 <= i_1 < ... < i_k = n`` cutting sigma into blocks.

    Each block starts right after the previous one ends (the first at position 1)
    and ends at the largest position from which the block's first vertex is
    reachable.  The blocks are the strong components, in sigma order.
    """
    digraph, spec = _unpack(region, spec)
    sigma = order_of_gains(digraph, spec)
    n = digraph.n
    reach = [[i == j or digraph.has_edge(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    idx = [1]
    start = 1
    while start <= n:
        head = sigma[start - 1]
        end = max(t for t in range(start, n + 1) if reach[sigma[t - 1] - 1][head - 1])
        idx.append(end)
        start = end + 1
    return tuple(idx)


def gain_profile(region, spec=None):
    digraph, spec = _unpack(region, spec)
    sigma = order_of_gains(digraph, spec)
    g = max_gain_paths(digraph, sigma[0])
    try:
        parent, _ = gain_tree(digraph, spec)
    except NotApplicable:
        parent = None
    return GainProfile(sigma, g, parent, sigma_decomposition(digraph, spec))


# --- Pak-Stanley labels ---------------------------------------------------------------


@dataclass(frozen=True)
class PakStanleyLabel:
    f: tuple
    separations: tuple
    inversions: tuple

    def rows(self):
        return [
            {"vertex": v, "f": self.f[v - 1], "separations": self.separations[v - 1], "inversions": self.inversions[v - 1]}
            for v in range(1, len(self.f) + 1)
        ]


def _eshi_parameter(spec):
    if spec is None or spec.name not in ("eshi", "shi"):
        raise NotApplicable("Pak-Stanley labels are defined for extended Shi arrangements (shi, eshi:a)")
    return 1 if spec.name == "shi" else spec.params[0]


def pak_stanley_label(region, spec=None):
    """``f(i) = sum of w(i, j) over j after i in sigma, plus the number of such j with j < i``."""
    digraph, spec = _unpack(region, spec)
    _eshi_parameter(spec)
    sigma = order_of_gains(digraph, spec)
    pos = {v: t for t, v in enumerate(sigma)}
    n = digraph.n
    seps, invs = [], []
    for i in range(1, n + 1):
        later = [j for j in range(1, n + 1) if pos[j] > pos[i]]
        seps.append(int(sum(digraph.w(i, j) for j in later)))
        invs.append(sum(1 for j in later if i > j))
    f = tuple(s + t for s, t in zip(seps, invs))
    return PakStanleyLabel(f, tuple(seps), tuple(invs))


def is_a_parking_function(f, a):
    """Sorted values satisfy ``0 <= f~(i) <= a (i - 1)``."""
    return all(isinstance(v, int) and 0 <= v <= a * t for t, v in enumerate(sorted(f)))


def a_parking_functions(a, n):
    """Every a-parking function of length ``n`` by brute force, in lexicographic order."""
    top = a * (n - 1)
    return [f for f in itertools.product(range(top + 1), repeat=n) if is_a_parking_function(f, a)]


def pak_stanley_key_holds(region, spec=None):
    """For ``i`` before ``j`` in sigma with ``i > j`` or ``w(i, j) > 0``: ``f(i) > f(j)``."""
    digraph, spec = _unpack(region, spec)
    sigma = order_of_gains(digraph, spec)
    f = pak_stanley_label(digraph, spec).f
    for s, t in itertools.combinations(range(len(sigma)), 2):
        i, j = sigma[s], sigma[t]
        if (i > j or digraph.w(i, j) > 0) and not f[i - 1] > f[j - 1]:
            return False
    return True


def extended_shi_bounds_hold(region, spec=None):
    """``min(beta(i, k), w(i, j) + w(j, k)) <= w(i, k) <= w(i, j) + w(j, k) + 1`` for ``i, j, k`` in sigma order."""
    digraph, spec = _unpack(region, spec)
    sigma = order_of_gains(digraph, spec)
    for i, j, k in itertools.combinations(sigma, 3):
        via = digraph.w(i, j) + digraph.w(j, k)
        wik = digraph.w(i, k)
        if wik < min(beta(spec, i, k), via) or wik > via + 1:
            return False
    return True


# --- posets of gains --------------------------------------------------------------------


@dataclass(frozen=True)
class GainPoset:
    n: int
    relation: frozenset

    def comparable(self, i, j):
        return (i, j) in self.relation or (j, i) in self.relation

    def incomparability_edges(self):
        return [(i, j) for i, j in itertools.combinations(range(1, self.n + 1), 2) if not self.comparable(i, j)]

    def to_json(self):
        return {"n": self.n, "relation": [list(p) for p in sorted(self.relation)]}


def gain_poset(region):
    digraph, _ = _unpack(region)
    return GainPoset(digraph.n, nonneg_reachability(digraph))


def incomparability_connected(region):
    poset = gain_poset(region)
    n = poset.n
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in poset.incomparability_edges():
        adj[i].add(j)
        adj[j].add(i)
    seen, stack = {1}, [1]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == n


def strongly_connected(region):
    digraph, _ = _unpack(region)
    return strong_components(digraph)[1]


# --- alternating cycles -----------------------------------------------------------------


def _orientation(digraph):
    n = digraph.n
    out = [[] for _ in range(n + 1)]
    for i, j in itertools.combinations(range(1, n + 1), 2):
        a, b = digraph.has_edge(i, j), digraph.has_edge(j, i)
        if a == b:
            raise InputError(f"pair ({i}, {j}) is not a tournament edge")
        if a:
            out[i].append(j)
        else:
            out[j].append(i)
    return out


def _alternating_from_out(out, n):
    # a cycle listed from its smallest vertex s starts with an ascent and ends with a descent into s
    for s in range(1, n + 1):
        stack = [(s, True, (s,))]
        while stack:
            v, ascent, path = stack.pop()
            for u in out[v]:
                if u < s:
                    continue
                if u == s:
                    if not ascent and len(path) >= 2:
                        return True
                    continue
                if u in path or (u > v) != ascent:
                    continue
                stack.append((u, not ascent, path + (u,)))
    return False


def has_alternating_cycle(region):
    """Whether the tournament has a directed cycle whose ascents and descents alternate."""
    digraph, _ = _unpack(region)
    if digraph.n > MAX_ALTERNATING_N:
        raise SizeLimitError(f"alternating cycle search is limited to n <= {MAX_ALTERNATING_N}")
    return _alternating_from_out(_orientation(digraph), digraph.n)


def alternating_cycle_free(region):
    return not has_alternating_cycle(region)


def alternation_acyclic_count(n):
    """Number of tournaments on ``1..n`` without an alternating cycle."""
    if n > MAX_ALTERNATING_N:
        raise SizeLimitError(f"alternation_acyclic_count is limited to n <= {MAX_ALTERNATING_N}")
    prs = list(itertools.combinations(range(1, n + 1), 2))
    count = 0
    for bits in itertools.product((False, True), repeat=len(prs)):
        out = [[] for _ in range(n + 1)]
        for (i, j), up in zip(prs, bits):
            if up:
                out[i].append(j)
            else:
                out[j].append(i)
        if not _alternating_from_out(out, n):
            count += 1
    return count
