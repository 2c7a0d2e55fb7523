"""Exact geometry of affine hyperplanes: sides, feasibility, rank, boundedness.

Coordinates and coefficients are `fractions.Fraction` throughout. The sign
convention is global: for a hyperplane with normal a and offset b, the open
half-space H+ is {x : a.x > b} and H- is {x : a.x < b}.
"""

from __future__ import annotations

from fractions import Fraction

from .lp import OPTIMAL, solve_lp

PLUS = 1
ZERO = 0
MINUS = -1

SIGN_CHARS = {PLUS: "+", ZERO: "0", MINUS: "-"}
CHAR_SIGNS = {"+": PLUS, "0": ZERO, "-": MINUS}

# Lexicographic convention for sign vectors: + < 0 < -.
SIGN_ORDER = {PLUS: 0, ZERO: 1, MINUS: 2}


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class Hyperplane:
    """Affine hyperplane {x : normal . x = offset} with a fixed orientation."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        self.normal = tuple(_frac(a) for a in normal)
        self.offset = _frac(offset)
        if all(a == 0 for a in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def normalized_key(self):
        """Canonical form (first nonzero coefficient scaled to 1).

        Two hyperplanes describe the same affine subspace iff their keys
        are equal, which is how duplicates are detected.
        """
        lead = next(a for a in self.normal if a != 0)
        return (
            tuple(a / lead for a in self.normal),
            self.offset / lead,
        )

    def value_at(self, point) -> Fraction:
        if len(point) != len(self.normal):
            raise ValueError(
                f"point has dimension {len(point)}, expected {len(self.normal)}"
            )
        return sum(
            (a * _frac(x) for a, x in zip(self.normal, point)), Fraction(0)
        ) - self.offset

    def __eq__(self, other):
        return (
            isinstance(other, Hyperplane)
            and self.normal == other.normal
            and self.offset == other.offset
        )

    def __hash__(self):
        return hash((self.normal, self.offset))

    def __repr__(self):
        return f"Hyperplane({self.normal}, {self.offset})"


class Arrangement:
    """A finite ordered list of pairwise distinct hyperplanes in R^n."""

    __slots__ = ("dimension", "hyperplanes")

    def __init__(self, dimension, hyperplanes):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = int(dimension)
        self.hyperplanes = tuple(hyperplanes)
        seen = {}
        for i, h in enumerate(self.hyperplanes):
            if h.dimension != self.dimension:
                raise ValueError(
                    f"hyperplane {i} has dimension {h.dimension}, "
                    f"expected {self.dimension}"
                )
            key = h.normalized_key()
            if key in seen:
                raise ValueError(
                    f"hyperplanes {seen[key]} and {i} define the same "
                    "affine subspace"
                )
            seen[key] = i

    @property
    def size(self) -> int:
        return len(self.hyperplanes)

    def __repr__(self):
        return f"Arrangement(dim={self.dimension}, m={self.size})"


def side_of(hyperplane: Hyperplane, point) -> int:
    """Sign of point relative to the hyperplane: PLUS, ZERO or MINUS."""
    value = hyperplane.value_at(point)
    if value > 0:
        return PLUS
    if value < 0:
        return MINUS
    return ZERO


def feasible_interior(constraints):
    """Exact witness in the relative interior of a sign-constrained cell.

    `constraints` is a list of (Hyperplane, sign) pairs; sign PLUS/MINUS
    demand strict inequality, ZERO demands membership. Returns a rational
    point satisfying every strict constraint strictly, or None when the
    cell is empty. Deterministic: the same input yields the same witness.

    Strictness is handled by maximizing a common slack t (capped at 1):
    the cell has nonempty relative interior iff the optimum is positive.
    """
    dims = {h.dimension for h, _ in constraints}
    if len(dims) > 1:
        raise ValueError("constraints mix hyperplanes of different dimensions")
    n = dims.pop() if dims else None
    if n is None:
        raise ValueError("feasible_interior needs at least one constraint")

    # Variables: x = u - w with u, w >= 0 (n each), then t = tp - tm.
    num = 2 * n + 2
    t_plus, t_minus = 2 * n, 2 * n + 1

    def expand(coeffs, t_coef):
        row = []
        for a in coeffs:
            row.append(a)
        for a in coeffs:
            row.append(-a)
        row.append(_frac(t_coef))
        row.append(_frac(-t_coef))
        return row

    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for h, sign in constraints:
        if sign == PLUS:  # a.x - t >= b  ->  -a.x + t <= -b
            a_ub.append(expand([-a for a in h.normal], 1))
            b_ub.append(-h.offset)
        elif sign == MINUS:  # a.x + t <= b
            a_ub.append(expand(h.normal, 1))
            b_ub.append(h.offset)
        elif sign == ZERO:
            a_eq.append(expand(h.normal, 0))
            b_eq.append(h.offset)
        else:
            raise ValueError(f"invalid sign {sign!r}")
    cap = [Fraction(0)] * num
    cap[t_plus], cap[t_minus] = Fraction(1), Fraction(-1)
    a_ub.append(cap)
    b_ub.append(Fraction(1))

    objective = [Fraction(0)] * num
    objective[t_plus], objective[t_minus] = Fraction(1), Fraction(-1)
    result = solve_lp(objective, a_ub, b_ub, a_eq, b_eq)
    if result.status != OPTIMAL or result.value <= 0:
        return None
    return tuple(result.x[i] - result.x[n + i] for i in range(n))


def affine_rank(normals) -> int:
    """Rank over Q of a list of vectors, via fraction Gaussian elimination."""
    rows = [list(map(_frac, v)) for v in normals]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("vectors must have equal length")
    rank = 0
    col = 0
    while rank < len(rows) and col < width:
        pivot = next(
            (i for i in range(rank, len(rows)) if rows[i][col] != 0), None
        )
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                factor = rows[i][col] / lead
                rows[i] = [v - factor * p for v, p in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def is_bounded(constraints) -> bool:
    """Whether the sign-constrained cell is bounded, decided exactly.

    The cell is bounded iff the recession cone of its closure is {0}.
    Raises ValueError on an infeasible constraint set.
    """
    if feasible_interior(constraints) is None:
        raise ValueError("constraint set is infeasible")
    n = constraints[0][0].dimension

    # Fast path: equality normals already span R^n, so the cell is a point.
    zero_normals = [h.normal for h, s in constraints if s == ZERO]
    if affine_rank(zero_normals) == n:
        return True

    # Recession cone: a.d >= 0 for "+" rows, <= 0 for "-", = 0 for "0".
    # Nonzero iff some coordinate direction can reach magnitude 1 in it.
    a_ub, b_ub, a_eq, b_eq = [], [], [], []

    def expand(coeffs):
        return [_frac(a) for a in coeffs] + [-_frac(a) for a in coeffs]

    for h, sign in constraints:
        if sign == PLUS:
            a_ub.append(expand([-a for a in h.normal]))
            b_ub.append(Fraction(0))
        elif sign == MINUS:
            a_ub.append(expand(h.normal))
            b_ub.append(Fraction(0))
        else:
            a_eq.append(expand(h.normal))
            b_eq.append(Fraction(0))

    for i in range(n):
        for direction in (1, -1):
            objective = [Fraction(0)] * (2 * n)
            objective[i] = Fraction(direction)
            objective[n + i] = Fraction(-direction)
            cap = list(objective)
            result = solve_lp(
                objective, a_ub + [cap], b_ub + [Fraction(1)], a_eq, b_eq
            )
            if result.status == OPTIMAL and result.value > 0:
                return False
    return True
