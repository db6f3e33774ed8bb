"""Weighted digraphs encoding regions, and the cycle/connectivity algorithms on them.

Vertices are ``1..n``.  ``w(i, j)`` is an exact rational, or ``NEG_INF`` when the
edge ``i -> j`` is absent.  A cycle whose total weight is nonnegative is
*m-ascending*; a digraph without one is *m-acyclic*.

All algorithms clear denominators first (multiply every finite weight by the LCM
of the denominators) and then run on Python ints, with ``None`` standing for a
missing edge.  Positive scaling preserves every sign question asked here.
"""

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, NotMAcyclic, SizeLimitError
from .weights import NEG_INF, as_weight, common_scale, format_rational, parse_rational

__all__ = [
    "WeightedDigraph",
    "CycleWitness",
    "is_m_acyclic",
    "max_cycle_weight",
    "shortest_ascending_cycle",
    "strong_components",
    "nonneg_reachability",
    "max_gain_paths",
    "MAX_EXACT_CYCLE_N",
]

MAX_EXACT_CYCLE_N = 9


@dataclass(frozen=True)
class WeightedDigraph:
    """Immutable weight function on ordered pairs of distinct vertices.

    ``rows[i-1][j-1]`` holds ``w(i, j)``; the diagonal holds ``None``.
    Use :meth:`from_edges` or :meth:`from_function` rather than building rows by hand.
    """

    n: int
    rows: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError("a digraph needs n >= 1 vertices")
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise InputError("weight matrix must be n x n")
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if i == j:
                    if v is not None:
                        raise InputError("w(i, i) is undefined")
                elif not (v is NEG_INF or isinstance(v, Fraction)):
                    raise InputError(f"w({i + 1}, {j + 1}) = {v!r} is not an exact weight")

    @classmethod
    def from_edges(cls, n, edges):
        """``edges`` maps ``(i, j)`` to a weight; every other ordered pair is NEG_INF."""
        rows = [[None if i == j else NEG_INF for j in range(n)] for i in range(n)]
        for (i, j), value in dict(edges).items():
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise InputError(f"bad edge ({i}, {j}) for n={n}")
            rows[i - 1][j - 1] = as_weight(value)
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def from_function(cls, n, w):
        rows = tuple(
            tuple(None if i == j else as_weight(w(i, j)) for j in range(1, n + 1)) for i in range(1, n + 1)
        )
        return cls(n, rows)

    def w(self, i, j):
        if i == j:
            raise InputError("w(i, i) is undefined")
        return self.rows[i - 1][j - 1]

    def __call__(self, i, j):
        return self.w(i, j)

    def has_edge(self, i, j):
        return i != j and self.rows[i - 1][j - 1] is not NEG_INF

    def vertices(self):
        return range(1, self.n + 1)

    def edges(self):
        """Finite-weight edges ``(i, j, w)`` in lexicographic order."""
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                if i != j:
                    v = self.rows[i - 1][j - 1]
                    if v is not NEG_INF:
                        yield i, j, v

    def walk_weight(self, vertices):
        """Total weight of the closed walk ``v1 -> v2 -> ... -> vm -> v1``."""
        total = Fraction(0)
        m = len(vertices)
        for t in range(m):
            v = self.w(vertices[t], vertices[(t + 1) % m])
            if v is NEG_INF:
                return NEG_INF
            total += v
        return total

    def restrict(self, subset):
        """Induced subdigraph on ``subset``, relabeled ``1..m`` in increasing order."""
        verts = sorted(subset)
        return WeightedDigraph.from_function(len(verts), lambda a, b: self.w(verts[a - 1], verts[b - 1]))

    def scaled(self):
        """``(matrix, scale)``: 0-based int matrix of ``scale * w`` with ``None`` for NEG_INF."""
        scale = common_scale(v for row in self.rows for v in row)
        mat = [
            [None if (v is None or v is NEG_INF) else int(v * scale) for v in row]
            for row in self.rows
        ]
        return mat, scale

    def to_json(self):
        return {
            "n": self.n,
            "edges": [{"from": i, "to": j, "weight": format_rational(v)} for i, j, v in self.edges()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            edges = {}
            for e in data.get("edges", []):
                key = (int(e["from"]), int(e["to"]))
                if key in edges:
                    raise InputError(f"duplicate edge {key}")
                edges[key] = parse_rational(e["weight"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed digraph JSON: {exc}") from exc
        return cls.from_edges(n, edges)

    def to_dot(self, name="D"):
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in self.vertices()]
        lines += [f'  {i} -> {j} [label="{format_rational(v)}"];' for i, j, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CycleWitness:
    """A directed cycle, listed from its smallest vertex, with its exact total weight."""

    vertices: tuple
    weight: Fraction

    def __len__(self):
        return len(self.vertices)

    def check(self, digraph):
        """Raise unless the cycle is simple, uses present edges, and has the stated weight."""
        vs = self.vertices
        if len(vs) < 2 or len(set(vs)) != len(vs):
            raise InputError(f"{vs} is not a simple cycle")
        total = digraph.walk_weight(vs)
        if total is NEG_INF:
            raise InputError(f"cycle {vs} uses an absent edge")
        if total != self.weight:
            raise InputError(f"cycle {vs} weighs {total}, not {self.weight}")
        return True

    def to_json(self):
        return {"vertices": list(self.vertices), "weight": format_rational(self.weight)}


def _canonical(cycle):
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def _witness(digraph, cycle):
    cycle = _canonical(list(cycle))
    return CycleWitness(cycle, digraph.walk_weight(cycle))


def _closure_max(mat):
    """Max-plus Floyd-Warshall.  Every finite entry is the weight of a real walk."""
    n = len(mat)
    d = [row[:] for row in mat]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is not None:
                    c = dik + dkj
                    if di[j] is None or c > di[j]:
                        di[j] = c
    return d


def _screen_acyclic(mat):
    d = _closure_max(mat)
    return all(d[i][i] is None or d[i][i] < 0 for i in range(len(mat)))


def _shortest_ascending(mat):
    """``(length, cycle)`` of the lexicographically least shortest m-ascending cycle, 0-based."""
    n = len(mat)
    # walks[s][v] = max weight of a walk s -> v with exactly L edges
    walks = [[mat[s][v] for v in range(n)] for s in range(n)]
    length = None
    for L in range(2, n + 1):
        nxt = []
        for s in range(n):
            cur = walks[s]
            row = [None] * n
            for u in range(n):
                cu = cur[u]
                if cu is None:
                    continue
                mu = mat[u]
                for v in range(n):
                    e = mu[v]
                    if e is not None:
                        c = cu + e
                        if row[v] is None or c > row[v]:
                            row[v] = c
            nxt.append(row)
        walks = nxt
        if any(walks[s][s] is not None and walks[s][s] >= 0 for s in range(n)):
            length = L
            break
    if length is None:
        return None
    # A shortest nonnegative closed walk is a simple cycle; pick the lexicographically least
    # one by walking greedily with an exact "can still finish" table.
    for s in range(n):
        allowed = [v >= s for v in range(n)]
        back = [[None] * n for _ in range(length + 1)]
        back[0][s] = 0
        for r in range(1, length + 1):
            prev = back[r - 1]
            for v in range(n):
                if not allowed[v]:
                    continue
                best = None
                for u in range(n):
                    if allowed[u] and prev[u] is not None and mat[v][u] is not None:
                        c = mat[v][u] + prev[u]
                        if best is None or c > best:
                            best = c
                back[r][v] = best
        if back[length][s] is None or back[length][s] < 0:
            continue
        cycle, cur, acc = [s], s, 0
        for t in range(length, 0, -1):
            for u in range(n):
                if not allowed[u] or mat[cur][u] is None or back[t - 1][u] is None:
                    continue
                if acc + mat[cur][u] + back[t - 1][u] >= 0:
                    acc += mat[cur][u]
                    cur = u
                    break
            cycle.append(cur)
        assert cycle[-1] == s and len(set(cycle[:-1])) == length
        return length, cycle[:-1]
    raise AssertionError("unreachable: some start vertex carries the shortest cycle")


def is_m_acyclic(digraph):
    """``(True, None)`` if every directed cycle has negative weight, else ``(False, witness)``.

    The verdict comes from a max-plus Floyd-Warshall pass; the witness is the
    shortest m-ascending cycle (lexicographically least, rotated to start at its
    smallest vertex).
    """
    mat, _ = digraph.scaled()
    if _screen_acyclic(mat):
        return True, None
    found = _shortest_ascending(mat)
    if found is None:
        raise AssertionError("screening found a nonnegative closed walk but no cycle was extracted")
    _, cycle = found
    return False, _witness(digraph, [v + 1 for v in cycle])


def shortest_ascending_cycle(digraph):
    """``(length, witness)`` of a shortest m-ascending cycle, or ``None`` if m-acyclic."""
    mat, _ = digraph.scaled()
    found = _shortest_ascending(mat)
    if found is None:
        return None
    length, cycle = found
    return length, _witness(digraph, [v + 1 for v in cycle])


def max_cycle_weight(digraph):
    """Maximum total weight over directed simple cycles, with a lexicographically least witness.

    Returns ``(NEG_INF, None)`` for an acyclic digraph.  Exact subset dynamic
    programming, refused for ``n > 9``.
    """
    n = digraph.n
    if n > MAX_EXACT_CYCLE_N:
        raise SizeLimitError(f"max_cycle_weight is exact only for n <= {MAX_EXACT_CYCLE_N}")
    mat, scale = digraph.scaled()
    best_value, best_cycle = None, None
    for s in range(n):
        others = [v for v in range(s + 1, n)]
        bit = {v: 1 << k for k, v in enumerate(others)}

        @lru_cache(maxsize=None)
        def finish(mask, cur, s=s, others=tuple(others), bit=bit):
            # best remaining weight from cur back to s through unvisited vertices
            best = None
            if cur != s and mat[cur][s] is not None:
                best = mat[cur][s]
            for u in others:
                if mask & bit[u] or mat[cur][u] is None:
                    continue
                rest = finish(mask | bit[u], u)
                if rest is not None:
                    c = mat[cur][u] + rest
                    if best is None or c > best:
                        best = c
            return best

        value = finish(0, s)
        if value is None or (best_value is not None and value <= best_value):
            continue
        cycle, mask, cur, need = [s], 0, s, value
        while True:
            if cur != s and mat[cur][s] is not None and mat[cur][s] == need:
                break
            for u in others:
                if mask & bit[u] or mat[cur][u] is None:
                    continue
                rest = finish(mask | bit[u], u)
                if rest is not None and mat[cur][u] + rest == need:
                    need -= mat[cur][u]
                    mask |= bit[u]
                    cur = u
                    cycle.append(u)
                    break
            else:
                raise AssertionError("cycle reconstruction lost its target weight")
        best_value, best_cycle = value, cycle
        finish.cache_clear()
    if best_value is None:
        return NEG_INF, None
    witness = _witness(digraph, [v + 1 for v in best_cycle])
    assert witness.weight == Fraction(best_value, scale)
    return witness.weight, witness


def strong_components(digraph):
    """Strong components in topological order of the condensation, and a strong-connectivity flag.

    Every edge between different components goes from an earlier component to a
    later one.  Components are sorted tuples; among components that are ready at
    the same time, the one with the smallest vertex comes first.
    """
    n = digraph.n
    adj = [[j - 1 for j in range(1, n + 1) if digraph.has_edge(i, j)] for i in range(1, n + 1)]
    index, low, on_stack, stack = [None] * n, [0] * n, [False] * n, []
    comps, counter = [], [0]

    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            if k < len(adj[v]):
                work[-1] = (v, k + 1)
                u = adj[v][k]
                if index[u] is None:
                    index[u] = low[u] = counter[0]
                    counter[0] += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, 0))
                elif on_stack[u]:
                    low[v] = min(low[v], index[u])
            else:
                work.pop()
                if work:
                    p = work[-1][0]
                    low[p] = min(low[p], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        u = stack.pop()
                        on_stack[u] = False
                        comp.append(u + 1)
                        if u == v:
                            break
                    comps.append(tuple(sorted(comp)))

    where = {v: c for c, comp in enumerate(comps) for v in comp}
    succ = [set() for _ in comps]
    indeg = [0] * len(comps)
    for i, j, _ in digraph.edges():
        a, b = where[i], where[j]
        if a != b and b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    heap = [(comps[c][0], c) for c in range(len(comps)) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(comps[c])
        for b in succ[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (comps[b][0], b))
    return tuple(order), len(order) == 1


def _require_acyclic(digraph, what):
    ok, witness = is_m_acyclic(digraph)
    if not ok:
        raise NotMAcyclic(f"{what} needs an m-acyclic digraph; found cycle {witness.vertices}", witness)


def nonneg_reachability(digraph):
    """Pairs ``(i, j)``, ``i != j``, joined by a directed path of nonnegative-weight edges."""
    _require_acyclic(digraph, "nonneg_reachability")
    n = digraph.n
    reach = [[False] * n for _ in range(n)]
    for i, j, v in digraph.edges():
        if v >= 0:
            reach[i - 1][j - 1] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                rk, ri = reach[k], reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return frozenset((i + 1, j + 1) for i in range(n) for j in range(n) if i != j and reach[i][j])


def max_gain_paths(digraph, source):
    """Maximum weight of a directed path from ``source`` to each vertex (``NEG_INF`` if unreachable).

    Bellman-Ford on negated weights; m-acyclicity makes every negated cycle
    strictly positive, so the relaxation settles after ``n - 1`` rounds.
    """
    if not 1 <= source <= digraph.n:
        raise InputError(f"source {source} is not a vertex")
    _require_acyclic(digraph, "max_gain_paths")
    mat, scale = digraph.scaled()
    n = digraph.n
    dist = [None] * n
    dist[source - 1] = 0
    for _ in range(n - 1):
        changed = False
        for u in range(n):
            du = dist[u]
            if du is None:
                continue
            for v in range(n):
                e = mat[u][v]
                if e is not None and (dist[v] is None or du + e > dist[v]):
                    dist[v] = du + e
                    changed = True
        if not changed:
            break
    return {v + 1: (NEG_INF if dist[v] is None else Fraction(dist[v], scale)) for v in range(n)}
