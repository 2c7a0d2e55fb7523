"""The distance function v, Varchenko matrices, determinants and the
factorization theorem machinery (multiplicities, product formula, checks).

Matrix convention: entry at (row C, column D) is v(D, C), the monomial of
the half-spaces containing D but not C. Rows and columns always use the
same chamber order, so the determinant does not depend on that order.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

from .faces import Face, FaceComplex, centralization, closure_faces
from .geometry import ZERO
from .polyring import (
    Polynomial,
    VarId,
    eval_mod_p,
    exact_div,
    format_polynomial,
    var_of_index,
    weight,
)
from .report import FAIL, PASS, CheckResult
from .tits import nested_interval, opposite_through, rank, tits_product

DEFAULT_PRIME = 2**61 - 1
DEFAULT_SYMBOLIC_THRESHOLD = 12
COFACTOR_LIMIT = 6


def separator_set(c: Face, d: Face):
    """Half-spaces containing c but not d: {(hyperplane index, sign of c)}."""
    for face in (c, d):
        if not face.is_chamber:
            raise ValueError(f"separator_set requires chambers, got {face!r}")
    return {
        (h, sc)
        for h, (sc, sd) in enumerate(zip(c.signs, d.signs))
        if sc == -sd
    }


def v(c: Face, d: Face) -> Polynomial:
    """Aguiar-Mahajan distance: 1 on the diagonal, else the separator monomial."""
    nvars = 2 * len(c.signs)
    if c.signs == d.signs:
        return Polynomial.one(nvars)
    powers = {VarId(h, s): 1 for h, s in separator_set(c, d)}
    return Polynomial.monomial(nvars, powers)


class VMatrix:
    """Square matrix (v(D, C))_{C row, D column} over an ordered chamber list."""

    __slots__ = ("chamber_ids", "entries", "nvars")

    def __init__(self, chamber_ids, entries, nvars):
        self.chamber_ids = tuple(chamber_ids)
        self.entries = entries
        self.nvars = nvars

    @property
    def size(self) -> int:
        return len(self.entries)

    def validate(self):
        """Check the defining invariants; raises ValueError when violated."""
        n = self.size
        for i in range(n):
            if len(self.entries[i]) != n:
                raise ValueError("matrix is not square")
            if not self.entries[i][i].is_one():
                raise ValueError(f"diagonal entry ({i},{i}) is not 1")
            for j in range(n):
                if i == j:
                    continue
                entry = self.entries[i][j]
                if not entry.is_monomial():
                    raise ValueError(
                        f"off-diagonal entry ({i},{j}) is not a monomial"
                    )
                mono, coef = entry.leading_term()
                if coef != 1 or any(e not in (0, 1) for e in mono):
                    raise ValueError(
                        f"entry ({i},{j}) must be square-free with "
                        "coefficient 1"
                    )
                opposite, _ = self.entries[j][i].leading_term()
                flipped = tuple(
                    mono[k + 1] if k % 2 == 0 else mono[k - 1]
                    for k in range(len(mono))
                )
                if opposite != flipped:
                    raise ValueError(
                        f"entries ({i},{j}) and ({j},{i}) do not use "
                        "opposite half-space variables"
                    )


def varchenko_matrix(chambers) -> VMatrix:
    """Distance matrix of an ordered chamber list (full C_A or some C_A^K)."""
    chambers = list(chambers)
    if not chambers:
        raise ValueError("need at least one chamber")
    nvars = 2 * len(chambers[0].signs)
    entries = [[v(d, c) for d in chambers] for c in chambers]
    return VMatrix([c.id for c in chambers], entries, nvars)


# -- determinants -----------------------------------------------------------


def det_symbolic(matrix: VMatrix, cofactor_limit: int = COFACTOR_LIMIT) -> Polynomial:
    """Exact determinant over Z[h].

    Plain cofactor recursion up to `cofactor_limit`, cofactor expansion
    with column-subset memoization above it. The memoized route only ever
    multiplies a minor by an original matrix entry (a monomial), which
    keeps intermediate growth far below fraction-free elimination on these
    matrices; `_det_bareiss` remains available for cross-checks.
    """
    entries = matrix.entries
    nvars = matrix.nvars
    if matrix.size <= cofactor_limit:
        return _det_cofactor(entries, list(range(matrix.size)), nvars)
    return _det_minor_expansion(entries, nvars)


def _det_cofactor(entries, cols, nvars) -> Polynomial:
    row = len(entries) - len(cols)
    if not cols:
        return Polynomial.one(nvars)
    total = Polynomial.zero(nvars)
    for k, j in enumerate(cols):
        entry = entries[row][j]
        if entry.is_zero():
            continue
        minor = _det_cofactor(entries, cols[:k] + cols[k + 1 :], nvars)
        piece = entry * minor
        total = total + (piece if k % 2 == 0 else -piece)
    return total


def _det_minor_expansion(entries, nvars) -> Polynomial:
    """Row-by-row cofactor expansion memoized on column subsets.

    Level r holds the minors of the first r rows on every r-subset of
    columns (as raw term dicts, keyed by column bitmask). Adding row r to
    the subset T at column j contributes sign (-1)^(r + index of j in T).
    """
    n = len(entries)
    level = {0: {(0,) * nvars: 1}}
    for r in range(n):
        row_terms = [entries[r][j].terms for j in range(n)]
        nxt: dict = {}
        for mask, minor_terms in level.items():
            if not minor_terms:
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry_terms = row_terms[j]
                if not entry_terms:
                    continue
                idx = (mask & (bit - 1)).bit_count()
                sign = -1 if (r + idx) % 2 else 1
                acc = nxt.setdefault(mask | bit, {})
                for e_mono, e_coef in entry_terms.items():
                    coef = e_coef * sign
                    for m_mono, m_coef in minor_terms.items():
                        key = tuple(x + y for x, y in zip(e_mono, m_mono))
                        total = acc.get(key, 0) + coef * m_coef
                        if total:
                            acc[key] = total
                        else:
                            del acc[key]
        level = nxt
    return Polynomial(nvars, level.get((1 << n) - 1, {}))


def _det_bareiss(entries, nvars) -> Polynomial:
    n = len(entries)
    m = [row[:] for row in entries]
    one = Polynomial.one(nvars)
    previous = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if swap is None:
                return Polynomial.zero(nvars)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                numerator = pivot * row_i[j] - lead * m[k][j]
                row_i[j] = (
                    numerator
                    if previous.is_one()
                    else exact_div(numerator, previous)
                )
        previous = pivot
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result


class ModularTrial(NamedTuple):
    trial: int
    digest: str
    value: int


def modular_assignment(nvars: int, seed, trial: int, prime: int):
    """Deterministic uniform assignment of every ring variable mod prime."""
    rng = random.Random(f"{seed}:{trial}")
    return {
        var_of_index(i): rng.randrange(prime) for i in range(nvars)
    }


def assignment_digest(assignment, prime: int) -> str:
    payload = ",".join(
        f"{var.hyperplane}{'+' if var.sign > 0 else '-'}={value}"
        for var, value in sorted(assignment.items())
    )
    return hashlib.sha256(f"{prime};{payload}".encode()).hexdigest()[:16]


def det_at(matrix: VMatrix, assignment, prime: int) -> int:
    """Determinant of the matrix evaluated at one assignment, mod prime."""
    numeric = [
        [eval_mod_p(entry, assignment, prime) for entry in row]
        for row in matrix.entries
    ]
    return _det_mod(numeric, prime)


def det_modular(
    matrix: VMatrix,
    seed=0,
    trials: int = 10,
    prime: int = DEFAULT_PRIME,
    jobs: int = 1,
):
    """Determinant values at `trials` random evaluations mod prime.

    Each trial is deterministic from (seed, trial index); results come back
    in trial order regardless of the worker count.
    """
    if trials < 1:
        raise ValueError("need at least one trial")

    def run(trial: int) -> ModularTrial:
        assignment = modular_assignment(matrix.nvars, seed, trial, prime)
        return ModularTrial(
            trial,
            assignment_digest(assignment, prime),
            det_at(matrix, assignment, prime),
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, range(trials)))
    return [run(t) for t in range(trials)]


def _det_mod(rows, prime: int) -> int:
    n = len(rows)
    det = 1
    for col in range(n):
        pivot_row = next(
            (i for i in range(col, n) if rows[i][col] % prime != 0), None
        )
        if pivot_row is None:
            return 0
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col] % prime
        det = det * pivot % prime
        inv = pow(pivot, prime - 2, prime)
        for i in range(col + 1, n):
            factor = rows[i][col] * inv % prime
            if factor:
                rows[i] = [
                    (a - factor * b) % prime
                    for a, b in zip(rows[i], rows[col])
                ]
    return det % prime


# -- multiplicities and the product formula ---------------------------------


def _chamber_trace(complex_: FaceComplex, chamber: Face, h: int):
    """The face F with closure(chamber) meet H_h = closure(F), or None.

    Combinatorial form: among the faces of the chamber's closure lying on
    H_h, the condition holds exactly when a unique maximum exists.
    """
    cache = complex_._cache.setdefault("trace", {})
    key = (chamber.id, h)
    if key in cache:
        return cache[key]
    on_h = [
        g for g in closure_faces(complex_, chamber) if g.signs[h] == ZERO
    ]
    found = None
    for g in on_h:
        if all(complex_.leq(other, g) for other in on_h):
            found = g
            break
    cache[key] = found
    return found


def multiplicity(complex_: FaceComplex, face: Face, h: int, chambers) -> int:
    """Half the number of context chambers whose closure meets H_h in the face."""
    if face.is_chamber:
        raise ValueError(f"multiplicity requires a non-chamber face, got {face!r}")
    if h not in centralization(face):
        raise ValueError(
            f"hyperplane H{h + 1} does not contain face {face.id}"
        )
    count = sum(
        1 for c in chambers if _chamber_trace(complex_, c, h) is face
    )
    if count % 2:
        raise RuntimeError(
            f"odd chamber count {count} for face {face.id} on H{h + 1}; "
            "multiplicity must be an integer"
        )
    return count // 2


def beta_independence(complex_: FaceComplex, non_chamber_faces, chambers):
    """Multiplicities per face, plus any dependence on the chosen hyperplane.

    Returns (betas, mismatches) where betas maps face id to the common
    value and mismatches lists faces whose per-hyperplane values differ.
    """
    betas = {}
    mismatches = []
    for face in non_chamber_faces:
        values = {
            h: multiplicity(complex_, face, h, chambers)
            for h in sorted(centralization(face))
        }
        distinct = set(values.values())
        if len(distinct) != 1:
            mismatches.append(
                {"face": face.id, "per_hyperplane": values}
            )
            betas[face.id] = min(distinct)
        else:
            betas[face.id] = distinct.pop()
    return betas, mismatches


class FactoredDet:
    """The product prod (1 - b_F)^{beta_F} in factored form."""

    __slots__ = ("nvars", "factors")

    def __init__(self, nvars, factors):
        # factors: list of (face_id, weight Polynomial, exponent)
        self.nvars = nvars
        self.factors = list(factors)

    def expand(self) -> Polynomial:
        result = Polynomial.one(self.nvars)
        for _, b_f, exponent in self.factors:
            if exponent:
                result = result * (Polynomial.one(self.nvars) - b_f) ** exponent
        return result

    def eval_mod(self, assignment, prime: int) -> int:
        value = 1
        for _, b_f, exponent in self.factors:
            if exponent:
                base = (1 - eval_mod_p(b_f, assignment, prime)) % prime
                value = value * pow(base, exponent, prime) % prime
        return value

    def grouped(self):
        """Factors with equal weights merged: [(weight, total exponent)],
        in graded-lex order of the weight monomial."""
        totals: dict = {}
        polys: dict = {}
        for _, b_f, exponent in self.factors:
            if not exponent:
                continue
            key = b_f.leading_term()[0]
            totals[key] = totals.get(key, 0) + exponent
            polys[key] = b_f
        ordered = sorted(
            totals, key=lambda m: (next(i for i, e in enumerate(m) if e), m)
        )
        return [(polys[k], totals[k]) for k in ordered]

    def text(self) -> str:
        pieces = [
            f"(1 - {format_polynomial(b_f)})^{exponent}"
            for b_f, exponent in self.grouped()
        ]
        return " ".join(pieces) if pieces else "1"

    def __repr__(self):
        return f"FactoredDet({self.text()})"


def product_formula(complex_: FaceComplex, non_chamber_faces, betas) -> FactoredDet:
    """Assemble the factored determinant from faces and their multiplicities."""
    nvars = 2 * complex_.arrangement.size
    factors = [
        (face.id, weight(face), betas[face.id])
        for face in non_chamber_faces
    ]
    return FactoredDet(nvars, factors)


def verify_factorization(
    complex_: FaceComplex,
    apartment=None,
    symbolic_threshold: int = DEFAULT_SYMBOLIC_THRESHOLD,
    seed=0,
    trials: int = 10,
    prime: int = DEFAULT_PRIME,
    jobs: int = 1,
    context=None,
) -> CheckResult:
    """Check the determinant factorization theorem on one apartment.

    Asserts that the multiplicity is independent of the chosen hyperplane,
    then compares the Varchenko determinant against the product formula:
    exactly (symbolic) up to `symbolic_threshold` chambers, by matched
    modular evaluations beyond.
    """
    from .apartments import chambers_in, faces_in

    if apartment is None:
        faces = list(complex_.faces)
        chambers = complex_.chambers()
        where = "full arrangement"
    else:
        faces = faces_in(complex_, apartment)
        chambers = chambers_in(complex_, apartment)
        where = apartment.describe()

    ctx = dict(context or {})
    ctx["apartment"] = where
    details: dict = {"chambers": len(chambers)}

    non_chambers = [f for f in faces if not f.is_chamber]
    betas, mismatches = beta_independence(complex_, non_chambers, chambers)
    if mismatches:
        details["beta_mismatches"] = mismatches
        return CheckResult("factorization", FAIL, ctx, details)

    factored = product_formula(complex_, non_chambers, betas)
    details["factored"] = factored.text()
    matrix = varchenko_matrix(chambers)

    if len(chambers) <= symbolic_threshold:
        determinant = det_symbolic(matrix)
        expected = factored.expand()
        details["mode"] = "symbolic"
        if determinant == expected:
            return CheckResult("factorization", PASS, ctx, details)
        details["determinant"] = format_polynomial(determinant)
        details["expected"] = format_polynomial(expected)
        return CheckResult("factorization", FAIL, ctx, details)

    details["mode"] = "modular"
    details["seed"] = str(seed)
    details["prime"] = prime
    trials_out = det_modular(matrix, seed=seed, trials=trials, prime=prime, jobs=jobs)
    bad = []
    for t in trials_out:
        assignment = modular_assignment(matrix.nvars, seed, t.trial, prime)
        expected_value = factored.eval_mod(assignment, prime)
        if expected_value != t.value:
            bad.append(
                {
                    "trial": t.trial,
                    "digest": t.digest,
                    "determinant": t.value,
                    "product": expected_value,
                }
            )
    details["trials"] = [
        {"trial": t.trial, "digest": t.digest, "value": t.value}
        for t in trials_out
    ]
    if bad:
        details["mismatches"] = bad
        return CheckResult("factorization", FAIL, ctx, details)
    return CheckResult("factorization", PASS, ctx, details)


def beta_independence_check(
    complex_: FaceComplex, apartment=None, context=None
) -> CheckResult:
    """Standalone report entry for multiplicity well-definedness."""
    from .apartments import chambers_in, faces_in

    if apartment is None:
        faces = list(complex_.faces)
        chambers = complex_.chambers()
        where = "full arrangement"
    else:
        faces = faces_in(complex_, apartment)
        chambers = chambers_in(complex_, apartment)
        where = apartment.describe()
    ctx = dict(context or {})
    ctx["apartment"] = where
    non_chambers = [f for f in faces if not f.is_chamber]
    betas, mismatches = beta_independence(complex_, non_chambers, chambers)
    details = {"faces_checked": len(non_chambers), "betas": betas}
    if mismatches:
        details["mismatches"] = mismatches
        return CheckResult("beta_independence", FAIL, ctx, details)
    return CheckResult("beta_independence", PASS, ctx, details)


# -- supporting identities ---------------------------------------------------


def v_path_identity_check(complex_: FaceComplex, context=None) -> CheckResult:
    """v(C,D) = v(C,FD) v(FD,D) for all chambers C, D and faces F below C."""
    violations = []
    chambers = complex_.chambers()
    checked = 0
    for c in chambers:
        below = closure_faces(complex_, c)
        for d in chambers:
            left = v(c, d)
            for f in below:
                fd = tits_product(complex_, f, d)
                checked += 1
                if v(c, fd) * v(fd, d) != left:
                    violations.append(
                        {"C": c.id, "D": d.id, "F": f.id, "FD": fd.id}
                    )
    details = {"checked": checked}
    if violations:
        details["violations"] = violations
        return CheckResult("v_path_identity", FAIL, dict(context or {}), details)
    return CheckResult("v_path_identity", PASS, dict(context or {}), details)


def m_vector(complex_: FaceComplex, a: Face, d: Face):
    """Coordinates of m(A, D) on the chamber basis, in chamber-id order.

    The coordinate at C is v(D, C) when AC = D, and zero otherwise. For
    A = D this is the whole distance row of D, since chambers absorb on
    the left.
    """
    if not d.is_chamber:
        raise ValueError(f"m_vector requires a chamber as upper face, got {d!r}")
    if not complex_.leq(a, d):
        raise ValueError(f"{a!r} is not below {d!r}")
    nvars = 2 * complex_.arrangement.size
    coords = []
    for c in complex_.chambers():
        if tits_product(complex_, a, c) is d:
            coords.append(v(d, c))
        else:
            coords.append(Polynomial.zero(nvars))
    return coords


def mad_recurrence_check(complex_: FaceComplex, context=None) -> CheckResult:
    """The backward-induction identity behind the factorization proof:

    sum over F in [A, D] of (-1)^{rk F} m(F, D)
      = (-1)^{rk D} v(D, D~_A) m(A, D~_A)

    checked exactly for every nested pair (A, D) with D a chamber.
    """
    nvars = 2 * complex_.arrangement.size
    zero = Polynomial.zero(nvars)
    violations = []
    checked = 0
    for d in complex_.chambers():
        for a in closure_faces(complex_, d):
            checked += 1
            lhs = [zero] * len(complex_.chamber_ids)
            for f in nested_interval(complex_, a, d):
                sign = -1 if rank(complex_, f) % 2 else 1
                for i, coord in enumerate(m_vector(complex_, f, d)):
                    if not coord.is_zero():
                        lhs[i] = lhs[i] + coord.scale(sign)
            d_opp = opposite_through(complex_, a, d)
            scale = v(d, d_opp)
            sign = -1 if rank(complex_, d) % 2 else 1
            rhs = [
                (scale * coord).scale(sign)
                for coord in m_vector(complex_, a, d_opp)
            ]
            if lhs != rhs:
                violations.append({"A": a.id, "D": d.id})
    details = {"checked": checked}
    if violations:
        details["violations"] = violations
        return CheckResult("mad_recurrence", FAIL, dict(context or {}), details)
    return CheckResult("mad_recurrence", PASS, dict(context or {}), details)
