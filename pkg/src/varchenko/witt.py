"""Both generalized Witt identities, checked as exact integer chamber vectors.

The formal sums over chamber variables x_C reduce to integer coefficient
vectors indexed by chambers; linear independence of the x_C makes
coefficientwise equality the whole content of the identities.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .euler import BOUNDED, TYPE2, TYPE3, classify, euler_closure
from .faces import Face, FaceComplex, closure_faces
from .report import FAIL, PASS, SKIPPED, CheckResult
from .tits import nested_interval, opposite_through, rank, tits_product


def witt_lhs(complex_: FaceComplex, a: Face, d: Face):
    """Coefficient at C: sum of (-1)^{rk F} over F in [A, D] with FC = D."""
    if not d.is_chamber:
        raise ValueError(f"witt_lhs requires a chamber, got {d!r}")
    interval = nested_interval(complex_, a, d)
    coords = []
    for c in complex_.chambers():
        total = 0
        for f in interval:
            if tits_product(complex_, f, c) is d:
                total += -1 if rank(complex_, f) % 2 else 1
        coords.append(total)
    return coords


def witt_rhs(complex_: FaceComplex, a: Face, d: Face):
    """Coefficient at C: (-1)^{rk D} when AC is the opposite of D through A."""
    if not d.is_chamber:
        raise ValueError(f"witt_rhs requires a chamber, got {d!r}")
    opposite = opposite_through(complex_, a, d)
    sign = -1 if rank(complex_, d) % 2 else 1
    return [
        sign if tits_product(complex_, a, c) is opposite else 0
        for c in complex_.chambers()
    ]


def witt2_check(complex_: FaceComplex, d: Face, context=None) -> CheckResult:
    """The closure identity: the vector sum over F <= D collapses to a
    single signed x_D, provided D is bounded or of type 2 or 3.

    The diagonal value is (-1)^{c_A} chi(closure of D); type-1 and
    unclassified chambers are skipped, never failed.
    """
    tag = classify(complex_, d)
    ctx = dict(context or {})
    details = {"chamber": d.id, "type": tag}
    if tag not in (BOUNDED, TYPE2, TYPE3):
        return CheckResult("witt_closure", SKIPPED, ctx, details)

    sign = -1 if complex_.min_dim % 2 else 1
    expected_diagonal = sign * euler_closure(complex_, d)
    closure = closure_faces(complex_, d)
    bad = []
    for i, c in enumerate(complex_.chambers()):
        total = 0
        for f in closure:
            if tits_product(complex_, f, c) is d:
                total += -1 if rank(complex_, f) % 2 else 1
        want = expected_diagonal if c is d else 0
        if total != want:
            bad.append({"C": c.id, "coefficient": total, "expected": want})
    details["diagonal"] = expected_diagonal
    if bad:
        details["violations"] = bad
        return CheckResult("witt_closure", FAIL, ctx, details)
    return CheckResult("witt_closure", PASS, ctx, details)


def witt_sweep(complex_: FaceComplex, context=None, jobs: int = 1) -> CheckResult:
    """Exhaustive driver: the nested-pair identity for every (A, D) with D a
    chamber and A <= D, plus the closure identity for every eligible D.

    The per-pair checks are independent; `jobs` > 1 runs them on a thread
    pool with the report order still fixed by (A id, D id).
    """
    ctx = dict(context or {})
    nested = [
        (a, d)
        for d in complex_.chambers()
        for a in closure_faces(complex_, d)
    ]

    def check_pair(pair):
        a, d = pair
        return witt_lhs(complex_, a, d) == witt_rhs(complex_, a, d)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(check_pair, nested))
    else:
        outcomes = [check_pair(pair) for pair in nested]
    pairs = len(nested)
    pair_failures = [
        {"A": a.id, "D": d.id}
        for (a, d), ok in zip(nested, outcomes)
        if not ok
    ]

    closure_failures = []
    skipped = []
    closure_checked = 0
    for d in complex_.chambers():
        result = witt2_check(complex_, d)
        if result.status == SKIPPED:
            skipped.append(d.id)
        else:
            closure_checked += 1
            if result.status == FAIL:
                closure_failures.append(result.details)

    details = {
        "nested_pairs": pairs,
        "closure_checked": closure_checked,
        "skipped_chambers": skipped,
    }
    if pair_failures or closure_failures:
        details["pair_failures"] = pair_failures
        details["closure_failures"] = closure_failures
        return CheckResult("witt_identities", FAIL, ctx, details)
    return CheckResult("witt_identities", PASS, ctx, details)
