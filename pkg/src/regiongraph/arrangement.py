"""Arrangement specifications, presets, per-pair configurations and classification.

An arrangement on ``n`` coordinates lists, for every pair ``i < j``, the strictly
increasing offsets ``a`` of its hyperplanes ``x_i - x_j = a``.  A region picks,
for every pair, one of the ``len(offsets) + 1`` open intervals between them.
"""

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .weights import NEG_INF, format_rational, parse_rational

__all__ = [
    "ArrangementSpec",
    "PairConfig",
    "ClassificationReport",
    "pairs",
    "preset",
    "parse_preset",
    "pair_weights",
    "pair_configs",
    "classify",
    "cycle_check_bound",
    "beta",
    "alpha",
    "truncated_parameters",
    "PRESET_NAMES",
]

PRESET_NAMES = ("linial", "shi", "eshi", "catalan", "semiorder", "truncated", "beta-shi", "agl", "interval")


def pairs(n):
    """Pairs ``(i, j)``, ``i < j``, in lexicographic order: the canonical pair order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class ArrangementSpec:
    """Offsets for every pair ``i < j``, stored in the canonical pair order.

    ``name`` and ``params`` record the preset the spec came from (if any); they
    do not take part in equality.
    """

    n: int
    values: tuple
    name: str = field(default=None, compare=False)
    params: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError("an arrangement needs n >= 1")
        if len(self.values) != self.n * (self.n - 1) // 2:
            raise InputError("one offset list per pair is required")
        for (i, j), vals in zip(pairs(self.n), self.values):
            if any(not isinstance(v, Fraction) for v in vals):
                raise InputError(f"offsets of pair ({i}, {j}) must be exact rationals")
            if any(vals[t] >= vals[t + 1] for t in range(len(vals) - 1)):
                raise InputError(f"offsets of pair ({i}, {j}) must be strictly increasing")

    @classmethod
    def from_function(cls, n, offsets, name=None, params=()):
        vals = tuple(tuple(Fraction(v) for v in offsets(i, j)) for i, j in pairs(n))
        return cls(n, vals, name, tuple(params))

    def offsets(self, i, j):
        """Offset list of the unordered pair; ``(i, j)`` may be given in either order."""
        if i > j:
            i, j = j, i
        if not (1 <= i < j <= self.n):
            raise InputError(f"({i}, {j}) is not a pair of distinct vertices")
        return self.values[self._index(i, j)]

    def _index(self, i, j):
        return (i - 1) * (2 * self.n - i) // 2 + (j - i - 1)

    def pairs(self):
        return pairs(self.n)

    def sizes(self):
        return tuple(len(v) for v in self.values)

    def candidate_count(self):
        total = 1
        for v in self.values:
            total *= len(v) + 1
        return total

    def restrict(self, subset):
        """Sub-arrangement on ``subset``, relabeled ``1..m`` preserving order."""
        verts = sorted(subset)
        spec = ArrangementSpec.from_function(len(verts), lambda a, b: self.offsets(verts[a - 1], verts[b - 1]))
        return spec

    def label(self):
        if self.name is None:
            return "custom"
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(format_rational(p) for p in self.params)

    def to_json(self):
        return {
            "n": self.n,
            "pairs": [
                {"i": i, "j": j, "values": [format_rational(v) for v in vals]}
                for (i, j), vals in zip(pairs(self.n), self.values)
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            default = [parse_rational(v) for v in data.get("default", [])]
            given = {}
            for entry in data.get("pairs", []):
                i, j = int(entry["i"]), int(entry["j"])
                if i > j:
                    raise InputError(f"pair ({i}, {j}) must be listed with i < j")
                if (i, j) in given:
                    raise InputError(f"pair ({i}, {j}) listed twice")
                given[(i, j)] = [parse_rational(v) for v in entry["values"]]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed arrangement JSON: {exc}") from exc
        for key in given:
            if not (1 <= key[0] < key[1] <= n):
                raise InputError(f"pair {key} out of range for n={n}")
        return cls.from_function(n, lambda i, j: given.get((i, j), default))


def _int_param(text, what):
    value = parse_rational(text)
    if value.denominator != 1:
        raise InputError(f"{what} must be an integer, got {text}")
    return int(value)


def preset(name, params=(), n=None):
    """Build a preset arrangement.

    ``params`` are numbers (ints, Fractions or numeric strings).  For ``beta-shi``
    and ``agl`` the parameter vector has one entry per coordinate and fixes ``n``.
    """
    if n is not None and (not isinstance(n, int) or n < 1):
        raise InputError("n must be a positive integer")
    params = tuple(params)

    def need(count):
        if len(params) != count:
            raise InputError(f"preset {name} takes {count} parameter(s), got {len(params)}")

    if name == "linial":
        need(0)
        return ArrangementSpec.from_function(n, lambda i, j: [1], "linial")
    if name == "shi":
        need(0)
        return ArrangementSpec.from_function(n, lambda i, j: [0, 1], "shi")
    if name == "semiorder":
        need(0)
        return ArrangementSpec.from_function(n, lambda i, j: [-1, 1], "semiorder")
    if name in ("eshi", "catalan"):
        need(1)
        a = _int_param(params[0], "a")
        if a < 1:
            raise InputError(f"{name} needs a >= 1")
        top = a if name == "eshi" else a - 1
        return ArrangementSpec.from_function(n, lambda i, j: range(1 - a, top + 1), name, (a,))
    if name == "truncated":
        need(2)
        a, b = _int_param(params[0], "a"), _int_param(params[1], "b")
        if a + b < 2:
            raise InputError("truncated affine arrangements need a + b >= 2")
        return ArrangementSpec.from_function(n, lambda i, j: range(1 - a, b), "truncated", (a, b))
    if name == "interval":
        need(2)
        lo, hi = parse_rational(params[0]), parse_rational(params[1])
        if not lo < hi:
            raise InputError("interval needs lo < hi")
        return ArrangementSpec.from_function(n, lambda i, j: [lo, hi], "interval", (lo, hi))
    if name == "beta-shi":
        bs = tuple(_int_param(p, "beta") for p in params)
        if not bs or any(b < 0 for b in bs):
            raise InputError("beta-shi needs a vector of nonnegative integers")
        if n is not None and n != len(bs):
            raise InputError(f"beta vector has {len(bs)} entries but n={n}")
        return ArrangementSpec.from_function(
            len(bs), lambda i, j: range(-bs[i - 1], bs[j - 1] + 2), "beta-shi", bs
        )
    if name == "agl":
        ws = tuple(parse_rational(p) for p in params)
        if not ws or any(w < 0 for w in ws):
            raise InputError("agl needs a vector of nonnegative rationals")
        if n is not None and n != len(ws):
            raise InputError(f"agl vector has {len(ws)} entries but n={n}")
        return ArrangementSpec.from_function(len(ws), lambda i, j: [ws[i - 1]], "agl", ws)
    raise InputError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def parse_preset(text, n=None):
    """Parse CLI strings such as ``shi``, ``catalan:2``, ``truncated:-1,4`` or ``beta-shi:0,1,0``."""
    name, _, rest = text.strip().partition(":")
    params = [p for p in rest.split(",")] if rest else []
    if any(not p.strip() for p in params):
        raise InputError(f"empty parameter in {text!r}")
    if name not in ("beta-shi", "agl") and n is None:
        raise InputError(f"preset {name} needs n")
    return preset(name, params, n)


def pair_weights(vals, k):
    """``(w(i, j), w(j, i))`` of the configuration with index ``k`` on a pair with offsets ``vals``."""
    m = len(vals)
    if not 0 <= k <= m:
        raise InputError(f"index {k} out of range 0..{m}")
    if m == 0:
        return NEG_INF, NEG_INF
    if k == 0:
        return NEG_INF, -vals[0]
    if k == m:
        return vals[m - 1], NEG_INF
    return vals[k - 1], -vals[k]


@dataclass(frozen=True)
class PairConfig:
    pair: tuple
    k: int
    forward: object
    backward: object

    @property
    def lower(self):
        """Strict lower bound on ``x_i - x_j`` (NEG_INF if none)."""
        return self.forward

    @property
    def upper(self):
        """Strict upper bound on ``x_i - x_j``, or ``None`` for plus infinity."""
        return None if self.backward is NEG_INF else -self.backward


def pair_configs(spec, pair):
    i, j = pair
    vals = spec.offsets(i, j)
    return [PairConfig((min(i, j), max(i, j)), k, *pair_weights(vals, k)) for k in range(len(vals) + 1)]


# --- classification -------------------------------------------------------------------


def _is_integral(spec):
    return all(v.denominator == 1 for vals in spec.values for v in vals)


def _is_contiguous(spec):
    if not _is_integral(spec):
        return False
    for vals in spec.values:
        if not vals or vals[-1] - vals[0] != len(vals) - 1:
            return False
    return True


def beta(spec, i, j):
    """Largest offset of ``x_i - x_j`` in the ordered sense; ``beta(j, i) = -alpha(i, j)``."""
    vals = spec.offsets(i, j)
    return vals[-1] if i < j else -vals[0]


def alpha(spec, i, j):
    vals = spec.offsets(i, j)
    return vals[0] if i < j else -vals[-1]


def truncated_parameters(spec):
    """``(a, b)`` if every pair carries the same integer interval ``1-a .. b-1``, else ``None``."""
    if not _is_contiguous(spec) or spec.n < 2:
        return None
    first = spec.values[0]
    if any(vals != first for vals in spec.values):
        return None
    return int(1 - first[0]), int(first[-1] + 1)


@dataclass(frozen=True)
class ClassificationReport:
    """Structural flags; ``None`` means the flag is not applicable to this spec."""

    integral: bool
    contiguous: bool
    separated: bool
    sparse: bool
    interval_order: bool
    weak_triangle: object
    has_AL_diagrams: object
    crossing_beta_pattern: object
    beta_floor: object = None

    def to_json(self):
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        if self.beta_floor is not None:
            out["beta_floor"] = list(self.beta_floor)
        return out


def _sparse(spec):
    for vals in spec.values:
        if len(vals) == 1 and not vals[0] > 0:
            return False
        if len(vals) == 2 and not (vals[0] < 0 < vals[1]):
            return False
        if len(vals) not in (1, 2):
            return False
    return True


def _beta_floor(spec):
    n = spec.n
    if spec.name in ("eshi", "catalan"):
        return tuple([spec.params[0] - 1] * n)
    if spec.name == "shi":
        return tuple([0] * n)
    if spec.name == "beta-shi":
        return tuple(spec.params)
    return tuple(min(int(beta(spec, i, j)) for i in range(1, n + 1) if i != j) if n > 1 else 0 for j in range(1, n + 1))


def _has_al(spec):
    n = spec.n
    for j in range(1, n + 1):
        vals = sorted({int(beta(spec, i, j)) for i in range(1, n + 1) if i != j})
        if len(vals) > 2 or (vals and vals[0] < 0) or (len(vals) == 2 and vals[1] != vals[0] + 1):
            return False
    return True


def classify(spec):
    n = spec.n
    integral = _is_integral(spec)
    contiguous = _is_contiguous(spec)
    separated = all(Fraction(0) in vals for vals in spec.values)
    sparse = _sparse(spec)
    interval_order = sparse and all(len(v) == 2 for v in spec.values)
    weak = has_al = crossing = floor = None
    if contiguous:
        b = {(i, j): beta(spec, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
        crossing = any(
            b[i1, j1] < b[i1, j2] and b[i2, j1] > b[i2, j2]
            for i1, i2, j1, j2 in itertools.permutations(range(1, n + 1), 4)
        )
        if separated:
            weak = all(
                b[i, j] <= b[i, k] + 1 and b[i, j] <= b[k, j] + 1
                for i, j, k in itertools.permutations(range(1, n + 1), 3)
            )
            has_al = _has_al(spec)
            if has_al:
                floor = _beta_floor(spec)
    return ClassificationReport(
        integral=integral,
        contiguous=contiguous,
        separated=separated,
        sparse=sparse,
        interval_order=interval_order,
        weak_triangle=weak,
        has_AL_diagrams=has_al,
        crossing_beta_pattern=crossing,
        beta_floor=floor,
    )


def cycle_check_bound(spec):
    """Cycle length up to which m-ascending cycles must be searched; one of 3, 4 or n.

    For ``n < 3`` every answer collapses to ``n``.
    """
    n = spec.n
    if n < 3 or not _is_contiguous(spec):
        return n
    ab = truncated_parameters(spec)
    if ab is not None:
        a, b = min(ab), max(ab)
        if 1 <= a <= b <= a + 1:
            return 3
        if a >= 0:
            return min(4, n)
    verts = range(1, n + 1)
    if all(
        beta(spec, i, k) <= beta(spec, i, j) + beta(spec, j, k) + 1
        for i, j, k in itertools.permutations(verts, 3)
    ):
        return min(4, n)
    return n
