"""Athanasiadis-Linusson diagrams, beta-parking functions, parking trees and their
colored Pruefer codes.

Points of a diagram are listed left to right on the *reversed* number line, so
larger values come first.  A point is a pair ``(label, copy)``; copies of a label
are numbered 1, 2, ... from the left, so copy 1 is ``x_j + beta(j)`` and the last
copy is ``x_j`` itself.
"""

import itertools
from collections import deque
from dataclasses import dataclass

from .arrangement import beta, classify, pair_configs
from .digraph import WeightedDigraph
from .errors import InputError, InternalVerificationError, MalformedCode, NotApplicable
from .geometry import feasibility
from .weights import NEG_INF

__all__ = [
    "ALDiagram",
    "ParkingTree",
    "al_diagram",
    "diagram_from_points",
    "beta_parking_function",
    "diagram_to_digraph",
    "parking_tree",
    "prufer_encode",
    "prufer_decode",
    "prufer_code_count",
    "all_prufer_codes",
    "beta_shi_count",
    "format_node",
    "parse_node",
]


@dataclass(frozen=True)
class ALDiagram:
    """``points[p]`` is the ``(label, copy)`` at position ``p + 1``; arcs join 1-based positions."""

    points: tuple
    arcs: tuple
    copies: tuple

    @property
    def n(self):
        return len(self.copies)

    @property
    def word(self):
        return tuple(label for label, _ in self.points)

    def word_string(self, underline=False):
        """Labels left to right; with ``underline`` the last copy of each label is marked ``_j_``."""
        sep = "" if self.n < 10 else " "
        parts = []
        for label, copy in self.points:
            text = str(label)
            if underline and copy == self.copies[label - 1]:
                text = f"_{text}_"
            parts.append(text)
        return sep.join(parts)

    def position(self, label, copy):
        return self.points.index((label, copy)) + 1

    def to_json(self):
        return {
            "points": [format_node((j, k)) for j, k in self.points],
            "arcs": [list(a) for a in self.arcs],
            "word": self.word_string(),
        }


def _strictly_contains(outer, inner):
    return outer != inner and outer[0] <= inner[0] and inner[1] <= outer[1]


def diagram_from_points(labels_in_order, copies, raw_arcs):
    """Assemble a diagram from labels in left-to-right order and candidate arcs.

    ``raw_arcs`` are position pairs; every arc containing another one (sharing an
    endpoint counts) is dropped.
    """
    seen = [0] * len(copies)
    points = []
    for label in labels_in_order:
        seen[label - 1] += 1
        points.append((label, seen[label - 1]))
    if tuple(seen) != tuple(copies):
        raise InputError("each label must appear as often as its number of copies")
    arcs = sorted({(min(a), max(a)) for a in raw_arcs})
    kept = tuple(a for a in arcs if not any(_strictly_contains(a, b) for b in arcs))
    return ALDiagram(tuple(points), kept, tuple(copies))


def _al_setup(spec):
    report = classify(spec)
    if not report.has_AL_diagrams:
        raise NotApplicable("this arrangement does not have Athanasiadis-Linusson diagrams")
    return report.beta_floor


def al_diagram(region, spec=None):
    """The diagram of a region, drawn from an exact interior point.

    Every comparison between two marks ``x_i + k`` and ``x_j + l`` is decided by a
    hyperplane of the arrangement, so any interior point gives the same diagram;
    coincident marks would indicate a bug and raise.
    """
    if isinstance(region, WeightedDigraph):
        digraph = region
    else:
        digraph, spec = region.digraph, spec if spec is not None else region.spec
    if spec is None:
        raise InputError("al_diagram needs the arrangement")
    bfloor = _al_setup(spec)
    cert = feasibility(digraph)
    if cert.kind != "point":
        raise NotApplicable("the digraph is not a region")
    x = cert.value
    n = spec.n
    marks = [(x[j - 1] + k, j, k) for j in range(1, n + 1) for k in range(bfloor[j - 1] + 1)]
    marks.sort(key=lambda m: -m[0])
    if any(marks[t][0] == marks[t + 1][0] for t in range(len(marks) - 1)):
        raise InternalVerificationError("two diagram marks coincide at an interior point")
    where = {(j, k): p + 1 for p, (_, j, k) in enumerate(marks)}
    raw = []
    for j in range(1, n + 1):
        for k in range(bfloor[j - 1]):
            raw.append((where[(j, k + 1)], where[(j, k)]))
    for i, j in itertools.permutations(range(1, n + 1), 2):
        b = beta(spec, i, j)
        if b == bfloor[j - 1] + 1 and digraph.w(i, j) is not NEG_INF and digraph.w(i, j) == b:
            raw.append((where[(i, 0)], where[(j, bfloor[j - 1])]))
    copies = tuple(b + 1 for b in bfloor)
    return diagram_from_points([j for _, j, _ in marks], copies, raw)


def _components(diagram):
    size = len(diagram.points)
    parent = list(range(size + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in diagram.arcs:
        parent[find(p)] = find(q)
    leftmost = {}
    for p in range(1, size + 1):
        r = find(p)
        leftmost.setdefault(r, p)
    return find, leftmost


def beta_parking_function(diagram):
    """``f(j)``: position of the leftmost point in the component of ``x_j`` (positions start at 1)."""
    find, leftmost = _components(diagram)
    return tuple(
        leftmost[find(diagram.position(j, diagram.copies[j - 1]))] for j in range(1, diagram.n + 1)
    )


def diagram_to_digraph(diagram, spec):
    """Rebuild the region's digraph from its diagram alone (and the arrangement)."""
    bfloor = _al_setup(spec)
    n = spec.n
    if tuple(b + 1 for b in bfloor) != diagram.copies:
        raise InputError("diagram copy counts do not match the arrangement")
    pos = {pt: p + 1 for p, pt in enumerate(diagram.points)}
    last = {j: pos[(j, diagram.copies[j - 1])] for j in range(1, n + 1)}
    sigma = sorted(range(1, n + 1), key=lambda j: last[j])
    edges = {}
    for s, t in itertools.combinations(range(n), 2):
        i, j = sigma[s], sigma[t]
        bj = bfloor[j - 1]
        # mark x_j + k is copy bj + 1 - k; x_i lies left of it iff its position is smaller
        w = max(k for k in range(bj + 1) if last[i] < pos[(j, bj + 1 - k)])
        if w == bj and beta(spec, i, j) == bj + 1:
            lo, hi = last[i], pos[(j, 1)]
            if any(lo <= p and q <= hi for p, q in diagram.arcs):
                w = bj + 1
        for cfg in pair_configs(spec, (i, j)):
            wij, wji = (cfg.forward, cfg.backward) if i < j else (cfg.backward, cfg.forward)
            if wij is not NEG_INF and wij == w:
                edges[(i, j)] = wij
                if wji is not NEG_INF:
                    edges[(j, i)] = wji
                break
        else:
            raise InputError(f"no interval of pair ({i}, {j}) has lower weight {w}")
    return WeightedDigraph.from_edges(n, edges)


# --- parking trees and colored Pruefer codes ----------------------------------------------


def format_node(node):
    return "0" if node == 0 else f"{node[0]}_{node[1]}"


def parse_node(text):
    text = str(text).strip()
    if text == "0":
        return 0
    label, sep, copy = text.partition("_")
    try:
        if not sep:
            raise ValueError
        return (int(label), int(copy))
    except ValueError as exc:
        raise MalformedCode(f"bad tree node {text!r}; expected 0 or j_k") from exc


@dataclass(frozen=True)
class ParkingTree:
    """``parent`` maps every node ``(j, k)`` to ``0`` (the root) or another node.

    ``numbering`` gives the breadth-first position number of every node; the root
    is number 1.
    """

    copies: tuple
    parent: dict

    @property
    def n(self):
        return len(self.copies)

    def children(self, node):
        kids = [c for c, p in self.parent.items() if p == node]
        return sorted(kids)

    @property
    def numbering(self):
        order, queue = {0: 1}, deque([0])
        while queue:
            node = queue.popleft()
            for child in self.children(node):
                order[child] = len(order) + 1
                queue.append(child)
        return order

    def to_json(self):
        return {
            "copies": list(self.copies),
            "parent": {format_node(c): format_node(p) for c, p in sorted(self.parent.items())},
        }

    def __eq__(self, other):
        return isinstance(other, ParkingTree) and self.copies == other.copies and self.parent == other.parent

    def __hash__(self):
        return hash((self.copies, tuple(sorted(self.parent.items(), key=str))))


def parking_tree(f, copies=None):
    """Parking tree of a beta-parking function ``f`` (or of a diagram).

    Nodes are numbered breadth first starting with the root as 1; all copies of
    the labels ``j`` with ``f(j) = i`` become children of node number ``i``, in
    increasing order of label and copy.
    """
    if isinstance(f, ALDiagram):
        copies = f.copies
        f = beta_parking_function(f)
    if copies is None or len(copies) != len(f):
        raise InputError("parking_tree needs one copy count per label")
    by_slot = {}
    for j, slot in enumerate(f, start=1):
        by_slot.setdefault(slot, []).append(j)
    numbered = [0]  # numbered[i - 1] is the node with number i
    parent = {}
    cursor = 0
    while cursor < len(numbered):
        node = numbered[cursor]
        cursor += 1
        for j in sorted(by_slot.pop(cursor, [])):
            for k in range(1, copies[j - 1] + 1):
                parent[(j, k)] = node
                numbered.append((j, k))
    if by_slot:
        raise InputError(f"f refers to positions {sorted(by_slot)} that the tree never reaches")
    return ParkingTree(tuple(copies), parent)


def prufer_encode(tree):
    """Colored Pruefer code: repeatedly remove the least color whose copies are all leaves."""
    n = tree.n
    parent = dict(tree.parent)
    for j in range(1, n + 1):
        ps = {parent.get((j, k)) for k in range(1, tree.copies[j - 1] + 1)}
        if len(ps) != 1 or None in ps:
            raise InputError(f"copies of label {j} must share one parent")
    remaining = set(range(1, n + 1))
    code = []
    while len(remaining) > 1:
        internal = {p for c, p in parent.items() if c[0] in remaining}
        exposed = [j for j in sorted(remaining) if all((j, k) not in internal for k in range(1, tree.copies[j - 1] + 1))]
        if not exposed:
            raise InputError("the tree has no exposed color; it is not a parking tree")
        j = exposed[0]
        code.append(parent[(j, 1)])
        remaining.discard(j)
    return tuple(code)


def prufer_decode(code, copies):
    """Inverse of :func:`prufer_encode` for the given copy counts."""
    n = len(copies)
    code = [parse_node(c) if isinstance(c, str) else c for c in code]
    if len(code) != max(n - 1, 0):
        raise MalformedCode(f"a code for {n} colors has {max(n - 1, 0)} entries, got {len(code)}")
    for node in code:
        if node != 0 and not (1 <= node[0] <= n and 1 <= node[1] <= copies[node[0] - 1]):
            raise MalformedCode(f"code entry {format_node(node)} is not a vertex of the tree")
    parent, removed = {}, []
    for t in range(len(code)):
        present = {c[0] for c in code[t:] if c != 0} | set(removed)
        j = min(c for c in range(1, n + 1) if c not in present)
        for k in range(1, copies[j - 1] + 1):
            parent[(j, k)] = code[t]
        removed.append(j)
    if n:
        last = min(set(range(1, n + 1)) - set(removed))
        for k in range(1, copies[last - 1] + 1):
            parent[(last, k)] = 0
    return ParkingTree(tuple(copies), parent)


def prufer_code_count(copies):
    return (sum(copies) + 1) ** (len(copies) - 1) if copies else 1


def all_prufer_codes(copies):
    nodes = [0] + [(j, k) for j in range(1, len(copies) + 1) for k in range(1, copies[j - 1] + 1)]
    return itertools.product(nodes, repeat=max(len(copies) - 1, 0))


def beta_shi_count(beta_vector):
    """Regions of the beta-extended Shi arrangement: ``(sum(beta(j) + 1) + 1) ** (n - 1)``."""
    bs = list(beta_vector)
    if any(int(b) != b or b < 0 for b in bs):
        raise InputError("beta must be a vector of nonnegative integers")
    return (sum(b + 1 for b in bs) + 1) ** (len(bs) - 1)
