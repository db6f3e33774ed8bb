"""Labeled a-Catalan paths and their bijection with regions of the a-Catalan arrangement.

A path has ``n`` up steps ``(1, a-1)`` and ``(a-1) n`` down steps ``(1, -1)``, starts
at the origin, ends on the axis and never goes below it.  The permutation ``pi``
labels the up steps from left to right; ``level(j)`` is the height at which the
up step labeled ``j`` starts.
"""

import itertools
from dataclasses import dataclass
from math import comb, prod

from .arrangement import preset
from .digraph import WeightedDigraph
from .errors import InputError, InternalVerificationError, NotApplicable
from .gains import gain_function, gain_tree, order_of_gains
from .regions import enumerate_regions
from .weights import NEG_INF

__all__ = [
    "CatalanPath",
    "catalan_paths",
    "labeled_catalan_paths",
    "catalan_encode",
    "catalan_decode",
    "catalan_count",
    "catalan_path_count",
    "conjecture_data",
]


@dataclass(frozen=True)
class CatalanPath:
    a: int
    steps: str
    pi: tuple

    def __post_init__(self):
        if self.a < 1:
            raise InputError("a-Catalan paths need a >= 1")
        if set(self.steps) - {"U", "D"}:
            raise InputError("steps must be a string over U and D")
        n = self.steps.count("U")
        if sorted(self.pi) != list(range(1, n + 1)):
            raise InputError("pi must be a permutation of 1..n, one label per up step")
        if self.steps.count("D") != (self.a - 1) * n:
            raise InputError(f"a path with {n} up steps needs {(self.a - 1) * n} down steps")
        h = 0
        for s in self.steps:
            h += self.a - 1 if s == "U" else -1
            if h < 0:
                raise InputError("the path goes below the axis")

    @property
    def n(self):
        return len(self.pi)

    def up_levels(self):
        """Starting heights of the up steps, left to right."""
        out, h = [], 0
        for s in self.steps:
            if s == "U":
                out.append(h)
                h += self.a - 1
            else:
                h -= 1
        return out

    def level(self):
        """``{label: level}``."""
        return dict(zip(self.pi, self.up_levels()))

    def to_json(self):
        return {"a": self.a, "steps": self.steps, "pi": list(self.pi)}


def catalan_paths(a, n):
    """All unlabeled a-Catalan step strings with ``n`` up steps, in lexicographic order (D < U)."""
    total = a * n
    out = []

    def rec(prefix, h, ups):
        if len(prefix) == total:
            if h == 0:
                out.append("".join(prefix))
            return
        if h > total - len(prefix):
            return
        if h >= 1:
            prefix.append("D")
            rec(prefix, h - 1, ups)
            prefix.pop()
        if ups < n:
            prefix.append("U")
            rec(prefix, h + a - 1, ups + 1)
            prefix.pop()

    rec([], 0, 0)
    return out


def labeled_catalan_paths(a, n):
    for steps in catalan_paths(a, n):
        for pi in itertools.permutations(range(1, n + 1)):
            yield CatalanPath(a, steps, pi)


def catalan_encode(path):
    """The weighted digraph of a labeled path.

    For up steps at path positions ``p < q`` with labels ``i``, ``j`` and level
    difference ``d = level(j) - level(i)``: ``w(i, j)`` is ``d`` when
    ``|d| <= a - 1``, NEG_INF when ``d < 1 - a`` and ``a - 1`` when ``d > a - 1``.
    The opposite edge then follows: ``-1 - w(i, j)``, or NEG_INF if ``w(i, j) = a - 1``,
    or ``a - 1`` if ``w(i, j)`` is NEG_INF.
    """
    a, lv, pi = path.a, path.level(), path.pi
    edges = {}
    for p, q in itertools.combinations(range(path.n), 2):
        i, j = pi[p], pi[q]
        d = lv[j] - lv[i]
        if d < 1 - a:
            wij = NEG_INF
        elif d > a - 1:
            wij = a - 1
        else:
            wij = d
        if wij is NEG_INF:
            wji = a - 1
        elif wij == a - 1:
            wji = NEG_INF
        else:
            wji = -1 - wij
        if wij is not NEG_INF:
            edges[(i, j)] = wij
        if wji is not NEG_INF:
            edges[(j, i)] = wji
    return WeightedDigraph.from_edges(path.n, edges)


def catalan_decode(region, a=None):
    """Recover the labeled path of a region of the a-Catalan arrangement.

    Levels are the gains; up steps at equal level keep the order of gains; for
    levels at most ``a - 1`` apart, ``i`` comes first exactly when
    ``w(i, j) = level(j) - level(i)``.  These relations must determine a total
    order, and the result is re-encoded and compared before it is returned.
    """
    if isinstance(region, WeightedDigraph):
        digraph = region
        if a is None:
            raise InputError("catalan_decode of a bare digraph needs a")
    else:
        digraph = region.digraph
        spec = region.spec
        if a is None:
            if spec.name != "catalan":
                raise NotApplicable("catalan_decode needs a region of a catalan:a arrangement")
            a = spec.params[0]
    n = digraph.n
    sigma = order_of_gains(digraph)
    g = gain_function(digraph)
    level = {v: int(g[v]) for v in range(1, n + 1)}
    rank = {v: t for t, v in enumerate(sigma)}
    before = {v: set() for v in range(1, n + 1)}
    for i, j in itertools.permutations(range(1, n + 1), 2):
        d = level[j] - level[i]
        if d == 0:
            first = rank[i] < rank[j]
        elif abs(d) <= a - 1:
            w = digraph.w(i, j)
            first = w is not NEG_INF and w == d
        else:
            continue
        if first:
            before[j].add(i)
    order, placed = [], set()
    while len(order) < n:
        ready = [v for v in range(1, n + 1) if v not in placed and before[v] <= placed]
        if len(ready) != 1:
            raise InternalVerificationError(f"up-step order is not determined (candidates {ready})")
        order.append(ready[0])
        placed.add(ready[0])
    steps = []
    for t, v in enumerate(order):
        top = level[v] + a - 1
        nxt = level[order[t + 1]] if t + 1 < n else 0
        if top - nxt < 0:
            raise InternalVerificationError("levels do not fit an a-Catalan path")
        steps.append("U" + "D" * (top - nxt))
    path = CatalanPath(a, "".join(steps), tuple(order))
    if catalan_encode(path) != digraph:
        raise InternalVerificationError("decoded path does not re-encode to the region")
    return path


def catalan_count(a, n):
    """Regions of the a-Catalan arrangement: ``an (an - 1) ... ((a - 1) n + 2)``."""
    if a < 1 or n < 1:
        raise InputError("need a >= 1 and n >= 1")
    return prod(range((a - 1) * n + 2, a * n + 1))


def catalan_path_count(a, n):
    """``binom(an, n) / ((a - 1) n + 1)``."""
    if a < 1 or n < 1:
        raise InputError("need a >= 1 and n >= 1")
    num = comb(a * n, n)
    assert num % ((a - 1) * n + 1) == 0
    return num // ((a - 1) * n + 1)


def conjecture_data(a_list, n, budget=None):
    """Region counts of the a-Catalan arrangement grouped by gain-tree shape.

    Returns ``{"n": n, "a": [...], "rows": [{"shape": [...], "counts": [...]}, ...]}``
    with one count per ``a`` in ``a_list``; shapes are sorted.
    """
    a_list = list(a_list)
    if any(a < 1 for a in a_list):
        raise InputError("every a must be at least 1")
    table = {}
    for t, a in enumerate(a_list):
        spec = preset("catalan", (a,), n)
        for region in enumerate_regions(spec, budget=budget):
            _, shape = gain_tree(region)
            table.setdefault(shape, [0] * len(a_list))[t] += 1
    rows = [{"shape": list(shape), "counts": counts} for shape, counts in sorted(table.items())]
    for t, a in enumerate(a_list):
        assert sum(r["counts"][t] for r in rows) == catalan_count(a, n)
    return {"n": n, "a": a_list, "rows": rows}

