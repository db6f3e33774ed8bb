"""Self-check suites used by ``regiongraph verify``.

Each suite returns a report dict with ``suite``, ``ok``, a few counters and,
on failure, the first counterexample found.
"""

from math import comb, factorial

from .arrangement import classify, cycle_check_bound, preset
from .catalan import catalan_count, catalan_decode, catalan_encode, catalan_path_count, labeled_catalan_paths
from .diagrams import (
    al_diagram,
    beta_shi_count,
    diagram_to_digraph,
    parking_tree,
    prufer_code_count,
    prufer_decode,
    prufer_encode,
)
from .digraph import is_m_acyclic, shortest_ascending_cycle, strong_components
from .errors import InputError, NotApplicable
from .gains import (
    a_parking_functions,
    alternation_acyclic_count,
    gain_function,
    gain_tree,
    incomparability_connected,
    is_a_parking_function,
    is_noncrossing,
    order_of_gains,
    pak_stanley_key_holds,
    pak_stanley_label,
)
from .geometry import InequalitySystem, bounded_by_elimination, feasibility, recession_ray
from .regions import (
    EXPONENTIAL_FAMILIES,
    candidates,
    count_regions,
    count_via_structure,
    enumerate_regions,
    region_from_digraph,
    verify_exponential_formula,
)

__all__ = ["SUITES", "run_suite"]


def _report(suite, failure=None, **counts):
    out = {"suite": suite, "ok": failure is None}
    out.update(counts)
    if failure is not None:
        out["counterexample"] = failure
    return out


def suite_oracle(spec):
    """Cycle verdict vs. geometric certificate on every candidate; boundedness vs. elimination on regions."""
    checked = regions = 0
    for cand in candidates(spec):
        checked += 1
        ok, _ = is_m_acyclic(cand.digraph)
        cert = feasibility(cand.digraph)
        if ok != (cert.kind == "point"):
            return _report("oracle", {"k": list(cand.k), "m_acyclic": ok, "certificate": cert.kind}, checked=checked)
        if not ok:
            continue
        regions += 1
        strong = strong_components(cand.digraph)[1]
        if strong != bounded_by_elimination(cand.digraph):
            return _report("oracle", {"k": list(cand.k), "strongly_connected": strong}, checked=checked)
        ray = recession_ray(cand.digraph)
        if (ray is None) != strong:
            return _report("oracle", {"k": list(cand.k), "ray": ray is not None}, checked=checked)
        if ray is not None:
            system = InequalitySystem.from_digraph(cand.digraph)
            for t in (1, 10, 1000):
                moved = tuple(x + t * r for x, r in zip(cert.value, ray.value))
                if not system.satisfied_by(moved):
                    return _report("oracle", {"k": list(cand.k), "ray_step": t}, checked=checked)
    return _report("oracle", checked=checked, regions=regions)


def suite_shortcut(spec):
    """Enumeration with the cycle-length shortcut equals full enumeration."""
    bound = cycle_check_bound(spec)
    full = [r.k for r in enumerate_regions(spec)]
    short = [r.k for r in enumerate_regions(spec, bound=bound)]
    if full != short:
        extra = sorted(set(short) - set(full))
        return _report("shortcut", {"bound": bound, "extra": [list(k) for k in extra[:1]]}, bound=bound)
    return _report("shortcut", bound=bound, regions=len(full))


def suite_pak_stanley(a, n):
    spec = preset("eshi", (a,), n)
    labels = []
    for region in enumerate_regions(spec):
        f = pak_stanley_label(region).f
        if not is_a_parking_function(f, a) or not pak_stanley_key_holds(region):
            return _report("pak-stanley", {"k": list(region.k), "f": list(f)})
        labels.append(f)
    distinct = len(set(labels)) == len(labels)
    image = sorted(labels) == a_parking_functions(a, n)
    failure = None if distinct and image else {"distinct": distinct, "image_is_all_parking_functions": image}
    return _report("pak-stanley", failure, labels=len(labels), distinct=len(set(labels)))


def suite_catalan_bijection(a, n):
    spec = preset("catalan", (a,), n)
    regions = list(enumerate_regions(spec))
    paths = list(labeled_catalan_paths(a, n))
    for path in paths:
        dg = catalan_encode(path)
        if not is_m_acyclic(dg)[0] or catalan_decode(dg, a) != path:
            return _report("catalan-bijection", {"path": path.to_json()})
        region_from_digraph(spec, dg)
    images = set()
    for region in regions:
        path = catalan_decode(region)
        images.add(path)
        level = path.level()
        g = gain_function(region)
        if any(g[v] != level[v] for v in level):
            return _report("catalan-bijection", {"k": list(region.k), "levels": "gain differs from level"})
        sigma = order_of_gains(region)
        bounded = all(region.digraph.w(sigma[t], sigma[t + 1]) < a - 1 for t in range(n - 1))
        if bounded != strong_components(region.digraph)[1]:
            return _report("catalan-bijection", {"k": list(region.k), "bounded": bounded})
    counts_ok = len(regions) == len(paths) == len(images) == catalan_count(a, n) == (
        catalan_path_count(a, n) * factorial(n)
    )
    failure = None if counts_ok else {"regions": len(regions), "paths": len(paths), "images": len(images)}
    return _report("catalan-bijection", failure, roundtrips=len(paths), regions=len(regions))


def suite_prufer(spec):
    if spec.name != "beta-shi":
        raise NotApplicable("the prufer suite runs on beta-shi arrangements")
    trees = set()
    for region in enumerate_regions(spec):
        diagram = al_diagram(region)
        if diagram_to_digraph(diagram, spec) != region.digraph:
            return _report("prufer", {"k": list(region.k), "step": "diagram reconstruction"})
        tree = parking_tree(diagram)
        code = prufer_encode(tree)
        if prufer_decode(code, tree.copies) != tree:
            return _report("prufer", {"k": list(region.k), "step": "code roundtrip"})
        trees.add(tree)
    copies = tuple(b + 1 for b in spec.params)
    expected = beta_shi_count(spec.params)
    ok = len(trees) == expected == prufer_code_count(copies)
    return _report("prufer", None if ok else {"trees": len(trees), "closed_form": expected}, trees=len(trees), closed_form=expected)


def suite_structure(spec):
    total = count_regions(spec).total
    via = count_via_structure(spec)
    failure = None if total == via else {"count_regions": total, "count_via_structure": via}
    out = _report("structure", failure, total=total, via_structure=via)
    if spec.name in EXPONENTIAL_FAMILIES:
        exp = verify_exponential_formula(spec.name, spec.n, spec.params)
        out["exponential_formula"] = exp["ok"]
        if not exp["ok"] and out["ok"]:
            out["ok"] = False
            out["counterexample"] = {"exponential_formula_first_failure": exp["first_failure"]}
    return out


def suite_gains(spec):
    report = classify(spec)
    if not report.weak_triangle:
        raise NotApplicable("the gains suite needs a separated arrangement with the weak triangle inequality")
    shapes = set()
    regions = 0
    for region in enumerate_regions(spec):
        regions += 1
        general = gain_function(region)
        greedy = gain_function(region, "greedy")
        if dict(general) != greedy:
            return _report("gains", {"k": list(region.k), "step": "greedy vs general"})
        parent, shape = gain_tree(region)
        if not is_noncrossing(order_of_gains(region), parent):
            return _report("gains", {"k": list(region.k), "step": "noncrossing"})
        shapes.add(shape)
    n = spec.n
    catalan = comb(2 * n, n) // (n + 1)
    failure = None if len(shapes) <= catalan else {"shapes": len(shapes), "catalan": catalan}
    return _report("gains", failure, regions=regions, shapes=len(shapes), catalan_number=catalan)


def suite_sparse(spec):
    report = classify(spec)
    n = spec.n
    out = {}
    if report.interval_order:
        for region in enumerate_regions(spec):
            if strong_components(region.digraph)[1] != incomparability_connected(region):
                return _report("sparse", {"k": list(region.k), "step": "incomparability"})
        out["interval_order"] = True
    if spec.name == "agl":
        total = count_regions(spec).total
        bound = alternation_acyclic_count(n)
        out.update(regions=total, alternation_acyclic=bound)
        if total > bound:
            return _report("sparse", {"regions": total, "alternation_acyclic": bound})
    if spec.name == "semiorder":
        for cand in candidates(spec):
            found = shortest_ascending_cycle(cand.digraph)
            if found is not None and found[0] > 4:
                return _report("sparse", {"k": list(cand.k), "step": "semiorder cycle length"})
        out["semiorder_short_cycles"] = True
    if not out:
        raise NotApplicable("the sparse suite needs an interval-order, agl or semiorder arrangement")
    return _report("sparse", **out)


SUITES = {
    "oracle": "arrangement",
    "shortcut": "arrangement",
    "structure": "arrangement",
    "prufer": "arrangement",
    "gains": "arrangement",
    "sparse": "arrangement",
    "pak-stanley": "a",
    "catalan-bijection": "a",
}


def run_suite(name, spec=None, a=None, n=None):
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if SUITES[name] == "a":
        if a is None or n is None:
            raise InputError(f"suite {name} needs --a and --n")
        return {"pak-stanley": suite_pak_stanley, "catalan-bijection": suite_catalan_bijection}[name](a, n)
    if spec is None:
        raise InputError(f"suite {name} needs --arrangement")
    return {
        "oracle": suite_oracle,
        "shortcut": suite_shortcut,
        "structure": suite_structure,
        "prufer": suite_prufer,
        "gains": suite_gains,
        "sparse": suite_sparse,
    }[name](spec)
