"""Combinatorial Euler characteristics of chamber closures and the chamber
type classification (bounded / three kinds of unbounded frontier).

Classification is exact for n <= 2 (LP boundedness plus frontier component
counting). For n >= 3 it falls back to the Euler characteristic and stays
conservative: a chamber whose characteristic matches no type, or more than
one, is tagged `unknown` and downstream checks skip it.
"""

from __future__ import annotations

from .faces import Face, FaceComplex, closure_faces, panels
from .geometry import affine_rank
from .report import FAIL, PASS, CheckResult

BOUNDED = "bounded"
TYPE1 = "type1"
TYPE2 = "type2"
TYPE3 = "type3"
UNKNOWN = "unknown"


def euler_closure(complex_: FaceComplex, chamber: Face) -> int:
    """Alternating cell count of the closed chamber: sum (-1)^dim over F <= D."""
    if not chamber.is_chamber:
        raise ValueError(f"euler_closure requires a chamber, got {chamber!r}")
    cache = complex_._cache.setdefault("chi", {})
    if chamber.id not in cache:
        cache[chamber.id] = sum(
            -1 if f.dim % 2 else 1 for f in closure_faces(complex_, chamber)
        )
    return cache[chamber.id]


def _frontier_components(complex_: FaceComplex, chamber: Face):
    """Connected components of the frontier, glued along comparability."""
    frontier = [
        f for f in closure_faces(complex_, chamber) if f.id != chamber.id
    ]
    parent = {f.id: f.id for f in frontier}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in frontier:
        for g in frontier:
            if f.id < g.id and (complex_.leq(f, g) or complex_.leq(g, f)):
                parent[find(f.id)] = find(g.id)

    groups: dict = {}
    for f in frontier:
        groups.setdefault(find(f.id), []).append(f)
    return list(groups.values())


def classify(complex_: FaceComplex, chamber: Face) -> str:
    """Chamber type tag: bounded, type1, type2, type3 or unknown."""
    if not chamber.is_chamber:
        raise ValueError(f"classify requires a chamber, got {chamber!r}")
    cache = complex_._cache.setdefault("chamber_type", {})
    if chamber.id not in cache:
        cache[chamber.id] = _classify(complex_, chamber)
    return cache[chamber.id]


def _classify(complex_: FaceComplex, chamber: Face) -> str:
    if complex_.face_is_bounded(chamber):
        return BOUNDED
    n = complex_.dimension
    components = _frontier_components(complex_, chamber)
    if not components:
        return UNKNOWN  # frontier empty: the single chamber R^n

    if n <= 2:
        if len(components) == 1:
            return TYPE1
        if len(components) == 2:
            full_walls = all(
                len(comp) == 1 and comp[0].dim == n - 1
                for comp in components
            )
            if full_walls:
                normals = [
                    complex_.arrangement.hyperplanes[comp[0].zero_set()[0]].normal
                    for comp in components
                ]
                if affine_rank(normals) == 1:
                    return TYPE3
            return TYPE2
        return UNKNOWN

    chi = euler_closure(complex_, chamber)
    if chi == 0:
        return TYPE1
    if n % 2 == 1:
        if chi == -1:
            return TYPE2
        if chi == 1:
            return TYPE3
    # n even: type 2 and type 3 share chi = -1, so stay conservative.
    return UNKNOWN


def euler_closure_minus_panels(complex_: FaceComplex, chamber: Face, panel_subset) -> int:
    """Alternating cell count of the closed chamber minus closed panels.

    The subset must be a nonempty proper subset of the chamber's panels;
    when it has more than one member, every panel must share a
    codimension-2 face with another member.
    """
    if not chamber.is_chamber:
        raise ValueError(f"requires a chamber, got {chamber!r}")
    subset = list(panel_subset)
    all_panels = panels(complex_, chamber)
    panel_ids = {f.id for f in all_panels}
    if not subset:
        raise ValueError("panel subset must be nonempty")
    if any(f.id not in panel_ids for f in subset):
        raise ValueError("subset contains a non-panel of the chamber")
    if len({f.id for f in subset}) == len(panel_ids):
        raise ValueError("subset must be a proper subset of the panels")
    if len(subset) > 1 and not _panels_adjacent(complex_, subset):
        raise ValueError(
            "each panel must share a codimension-2 face with another"
        )
    kept = [
        g
        for g in closure_faces(complex_, chamber)
        if not any(complex_.leq(g, f) for f in subset)
    ]
    return sum(-1 if g.dim % 2 else 1 for g in kept)


def _panels_adjacent(complex_: FaceComplex, subset) -> bool:
    n = complex_.dimension
    for f in subset:
        if not any(
            g is not f and _share_codim2(complex_, f, g, n) for g in subset
        ):
            return False
    return True


def _share_codim2(complex_: FaceComplex, f: Face, g: Face, n: int) -> bool:
    return any(
        k.dim == n - 2 and complex_.leq(k, f) and complex_.leq(k, g)
        for k in complex_.faces
    )


_CHI_TABLE = {BOUNDED: lambda n: 1, TYPE1: lambda n: 0, TYPE2: lambda n: -1,
              TYPE3: lambda n: -1 if (n - 1) % 2 else 1}


def lemma_ch_check(complex_: FaceComplex, context=None) -> CheckResult:
    """chi of every classified chamber closure matches its type's value."""
    n = complex_.dimension
    failures = []
    skipped = []
    checked = 0
    for chamber in complex_.chambers():
        tag = classify(complex_, chamber)
        if tag == UNKNOWN:
            skipped.append(chamber.id)
            continue
        checked += 1
        expected = _CHI_TABLE[tag](n)
        actual = euler_closure(complex_, chamber)
        if actual != expected:
            failures.append(
                {"chamber": chamber.id, "type": tag,
                 "chi": actual, "expected": expected}
            )
    details = {"checked": checked, "skipped": skipped}
    if failures:
        details["failures"] = failures
        return CheckResult("lemma_chi_closure", FAIL, dict(context or {}), details)
    return CheckResult("lemma_chi_closure", PASS, dict(context or {}), details)


def _admissible_panel_subsets(complex_: FaceComplex, chamber: Face):
    chamber_panels = panels(complex_, chamber)
    count = len(chamber_panels)
    for mask in range(1, 1 << count):
        subset = [chamber_panels[i] for i in range(count) if mask >> i & 1]
        if len(subset) == count:
            continue
        if len(subset) > 1 and not _panels_adjacent(complex_, subset):
            continue
        yield subset


def lemma_chm_check(complex_: FaceComplex, context=None) -> CheckResult:
    """chi of chamber-minus-panels matches the two-case prediction:
    -1 for a type-1 chamber with bounded panel union, 0 otherwise."""
    failures = []
    skipped = []
    checked = 0
    for chamber in complex_.chambers():
        tag = classify(complex_, chamber)
        if tag == UNKNOWN:
            skipped.append(chamber.id)
            continue
        for subset in _admissible_panel_subsets(complex_, chamber):
            checked += 1
            union_bounded = all(
                complex_.face_is_bounded(f) for f in subset
            )
            expected = -1 if (tag == TYPE1 and union_bounded) else 0
            actual = euler_closure_minus_panels(complex_, chamber, subset)
            if actual != expected:
                failures.append(
                    {
                        "chamber": chamber.id,
                        "panels": [f.id for f in subset],
                        "chi": actual,
                        "expected": expected,
                    }
                )
    details = {"checked": checked, "skipped": skipped}
    if failures:
        details["failures"] = failures
        return CheckResult("lemma_chi_minus_panels", FAIL, dict(context or {}), details)
    return CheckResult("lemma_chi_minus_panels", PASS, dict(context or {}), details)
