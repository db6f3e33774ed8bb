"""Exact geometry for regions: interior points, emptiness certificates, rays, boundedness.

Everything here is independent of the cycle algorithms in :mod:`digraph`:
feasibility runs its own Bellman-Ford on rescaled weights, and boundedness is
decided by Fourier-Motzkin elimination on the inequality system itself.
"""

from dataclasses import dataclass
from fractions import Fraction

from .digraph import CycleWitness, WeightedDigraph, is_m_acyclic, strong_components
from .errors import InputError, InternalVerificationError, NotMAcyclic, SizeLimitError
from .weights import NEG_INF, common_scale, format_rational

__all__ = [
    "InequalitySystem",
    "Certificate",
    "feasibility",
    "recession_ray",
    "bounded_by_elimination",
    "MAX_ELIMINATION_N",
]

MAX_ELIMINATION_N = 5


@dataclass(frozen=True)
class InequalitySystem:
    """Strict bounds ``lower[i,j] < x_i - x_j < upper[i,j]`` for pairs ``i < j``.

    ``lower`` uses NEG_INF and ``upper`` uses ``None`` for a missing side.  The
    ambient space is ``"V"`` (coordinates summing to zero) or ``"R"``.
    """

    n: int
    bounds: tuple
    ambient: str = "V"

    def __post_init__(self):
        if self.ambient not in ("V", "R"):
            raise InputError("ambient must be 'V' or 'R'")
        for i, j, lo, hi in self.bounds:
            if lo is not NEG_INF and hi is not None and not lo < hi:
                raise InputError(f"empty interval for x_{i} - x_{j}")

    @classmethod
    def from_digraph(cls, digraph, ambient="V"):
        rows = []
        for i in range(1, digraph.n + 1):
            for j in range(i + 1, digraph.n + 1):
                back = digraph.w(j, i)
                rows.append((i, j, digraph.w(i, j), None if back is NEG_INF else -back))
        return cls(digraph.n, tuple(rows), ambient)

    @classmethod
    def from_region(cls, region, ambient="V"):
        return cls.from_digraph(region.digraph, ambient)

    def to_digraph(self):
        edges = {}
        for i, j, lo, hi in self.bounds:
            if lo is not NEG_INF:
                edges[(i, j)] = lo
            if hi is not None:
                edges[(j, i)] = -hi
        return WeightedDigraph.from_edges(self.n, edges)

    def satisfied_by(self, x):
        """Exact check of every strict inequality (and the zero-sum condition in V)."""
        if len(x) != self.n:
            return False
        if self.ambient == "V" and sum(x) != 0:
            return False
        for i, j, lo, hi in self.bounds:
            d = x[i - 1] - x[j - 1]
            if lo is not NEG_INF and not d > lo:
                return False
            if hi is not None and not d < hi:
                return False
        return True


@dataclass(frozen=True)
class Certificate:
    """``kind`` is ``"point"``, ``"cycle"`` or ``"ray"``; ``value`` is a vector or a CycleWitness."""

    kind: str
    value: object

    def to_json(self):
        if self.kind == "cycle":
            return {"type": "cycle", **self.value.to_json()}
        return {"type": self.kind, "vector": [format_rational(v) for v in self.value]}


def _as_system(obj):
    if isinstance(obj, InequalitySystem):
        return obj
    if isinstance(obj, WeightedDigraph):
        return InequalitySystem.from_digraph(obj)
    if hasattr(obj, "digraph"):
        return InequalitySystem.from_digraph(obj.digraph)
    raise InputError(f"cannot build an inequality system from {type(obj).__name__}")


def feasibility(system):
    """An interior point (``kind="point"``) or an m-ascending cycle (``kind="cycle"``).

    Weights are cleared of denominators, so a region's cycles all weigh at most
    -1.  With ``w' = (n+1) w + 1`` every cycle stays negative, and maximum-path
    potentials ``p`` for ``w'`` give the point ``x_v = -p(v) / (n+1)``, which
    satisfies every inequality with slack.  If Bellman-Ford still relaxes after
    ``n`` rounds, the predecessor cycle has ``w' > 0``, hence ``w >= 0``.
    """
    if isinstance(system, WeightedDigraph):
        digraph, ambient = system, "V"
    else:
        system = _as_system(system)
        digraph, ambient = system.to_digraph(), system.ambient
    n = digraph.n
    scale = common_scale(v for _, _, v in digraph.edges())
    edges = [(i - 1, j - 1, (n + 1) * int(v * scale) + 1) for i, j, v in digraph.edges()]
    p = [0] * n
    pred = [None] * n
    last = None
    for _ in range(n):
        last = None
        for u, v, c in edges:
            if p[u] + c > p[v]:
                p[v] = p[u] + c
                pred[v] = u
                last = v
        if last is None:
            break
    if last is not None:
        v = last
        for _ in range(n):
            v = pred[v]
        cycle, u = [v], pred[v]
        while u != v:
            cycle.append(u)
            u = pred[u]
        cycle.reverse()
        k = cycle.index(min(cycle))
        cycle = [c + 1 for c in cycle[k:] + cycle[:k]]
        witness = CycleWitness(tuple(cycle), digraph.walk_weight(cycle))
        if witness.weight is NEG_INF or witness.weight < 0:
            raise InternalVerificationError(f"certificate cycle {cycle} is not m-ascending")
        return Certificate("cycle", witness)
    x = [Fraction(-p[v], (n + 1) * scale) for v in range(n)]
    if ambient == "V":
        mean = sum(x) / n
        x = [xi - mean for xi in x]
    x = tuple(x)
    if any(not x[i - 1] - x[j - 1] > v for i, j, v in digraph.edges()):
        raise InternalVerificationError(f"constructed point {x} violates the system")
    return Certificate("point", x)


def recession_ray(region):
    """A direction along which the region is unbounded, or ``None`` if it is bounded.

    The first strong component ``V1`` in topological order receives no edges from
    the rest ``V2``; raising ``V1`` by ``t/|V1|`` and lowering ``V2`` by ``t/|V2|``
    keeps every inequality and the zero sum.
    """
    digraph = region if isinstance(region, WeightedDigraph) else _as_system(region).to_digraph()
    ok, witness = is_m_acyclic(digraph)
    if not ok:
        raise NotMAcyclic("recession_ray needs a nonempty region", witness)
    comps, strong = strong_components(digraph)
    if strong:
        return None
    v1 = set(comps[0])
    n1, n2 = len(v1), digraph.n - len(v1)
    ray = tuple(Fraction(1, n1) if v in v1 else Fraction(-1, n2) for v in range(1, digraph.n + 1))
    return Certificate("ray", ray)


# --- Fourier-Motzkin ---------------------------------------------------------------------


def _normalize(coeffs, b):
    lead = next(abs(c) for c in coeffs if c != 0)
    return tuple(c / lead for c in coeffs), b / lead


def _add(store, coeffs, b, strict):
    """Keep only the tightest right-hand side per normalized direction."""
    if all(c == 0 for c in coeffs):
        # 0 < b or 0 <= b: either trivially true or the system is empty
        return b > 0 or (b == 0 and not strict)
    key, b = _normalize(coeffs, b)
    old = store.get(key)
    if old is None or b < old[0] or (b == old[0] and strict and not old[1]):
        store[key] = (b, strict)
    return True


def _project(rows, keep, nvars):
    """Eliminate every variable except ``keep``; ``None`` signals an empty system."""
    current = dict(rows)
    for t in range(nvars):
        if t == keep:
            continue
        pos, neg, rest = [], [], {}
        for coeffs, (b, strict) in current.items():
            if coeffs[t] > 0:
                pos.append((coeffs, b, strict))
            elif coeffs[t] < 0:
                neg.append((coeffs, b, strict))
            else:
                rest[coeffs] = (b, strict)
        for cp, bp, sp in pos:
            for cn, bn, sn in neg:
                lp, ln = cp[t], -cn[t]
                coeffs = tuple(ln * a + lp * c for a, c in zip(cp, cn))
                if not _add(rest, coeffs, ln * bp + lp * bn, sp or sn):
                    return None
        current = rest
    return current


def bounded_by_elimination(system):
    """True iff every coordinate is bounded on the region, by exact Fourier-Motzkin.

    Constraints are written ``c . y < b`` (or ``<=``) in the free variables
    ``y = (x_1, ..., x_{n-1})`` after substituting ``x_n = -(x_1 + ... + x_{n-1})``.
    An empty system counts as bounded.
    """
    system = _as_system(system)
    n = system.n
    if n > MAX_ELIMINATION_N:
        raise SizeLimitError(f"elimination is limited to n <= {MAX_ELIMINATION_N}")
    if system.ambient == "R":
        return False
    if n == 1:
        return True
    nvars = n - 1

    def diff(i, j):
        # coefficients of x_i - x_j in the free variables
        vec = [Fraction(0)] * nvars
        for v, s in ((i, 1), (j, -1)):
            if v < n:
                vec[v - 1] += s
            else:
                for t in range(nvars):
                    vec[t] -= s
        return vec

    rows = {}
    for i, j, lo, hi in system.bounds:
        d = diff(i, j)
        if lo is not NEG_INF and not _add(rows, tuple(-c for c in d), -lo, True):
            return True
        if hi is not None and not _add(rows, tuple(d), hi, True):
            return True
    for keep in range(nvars):
        projected = _project(rows, keep, nvars)
        if projected is None:
            return True
        signs = {coeffs[keep] > 0 for coeffs in projected}
        if signs != {True, False}:
            return False
    return True
