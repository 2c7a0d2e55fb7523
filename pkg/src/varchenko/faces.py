"""Face poset of an arrangement: sign vectors, order, chambers, panels.

A face is identified with its sign vector (one of +/0/- per hyperplane).
Enumeration is incremental: hyperplanes are inserted one at a time and every
existing face is split into the feasible members of its three sign
extensions. A brute-force enumerator over all 3^m sign vectors is kept as an
independent oracle for the incremental algorithm.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import (
    MINUS,
    PLUS,
    SIGN_CHARS,
    SIGN_ORDER,
    ZERO,
    affine_rank,
    feasible_interior,
    side_of,
)


def sign_key(signs):
    """Sort key implementing the face id convention + < 0 < -."""
    return tuple(SIGN_ORDER[s] for s in signs)


def format_signs(signs) -> str:
    return "(" + ",".join(SIGN_CHARS[s] for s in signs) + ")"


class Face:
    """One face: sign vector, dimension, and an interior witness point."""

    __slots__ = ("signs", "dim", "witness", "id")

    def __init__(self, signs, dim, witness, face_id):
        self.signs = tuple(signs)
        self.dim = dim
        self.witness = tuple(witness)
        self.id = face_id

    @property
    def is_chamber(self) -> bool:
        return ZERO not in self.signs

    def zero_set(self):
        """Indices of hyperplanes containing this face."""
        return tuple(i for i, s in enumerate(self.signs) if s == ZERO)

    def __repr__(self):
        return f"Face(id={self.id}, signs={format_signs(self.signs)}, dim={self.dim})"


class FaceComplex:
    """The full face poset of an arrangement, immutable once built.

    Faces carry ids assigned in lexicographic sign-vector order (+ < 0 < -),
    so every downstream matrix and report is reproducible. Queries are
    read-only; small results are memoized internally.
    """

    def __init__(self, arrangement, faces):
        self.arrangement = arrangement
        self.faces = tuple(faces)
        self.by_signs = {f.signs: f for f in self.faces}
        self.chamber_ids = tuple(f.id for f in self.faces if f.is_chamber)
        self.min_dim = min((f.dim for f in self.faces), default=0)
        n = len(self.faces)
        leq = [[False] * n for _ in range(n)]
        for f in self.faces:
            for g in self.faces:
                leq[f.id][g.id] = face_leq(f, g)
        self._leq = leq
        self._bounded = {}
        self._closures = {}
        self._cache = {}

    @property
    def dimension(self) -> int:
        return self.arrangement.dimension

    def chambers(self):
        return [self.faces[i] for i in self.chamber_ids]

    def face(self, face_id) -> Face:
        return self.faces[face_id]

    def find(self, signs) -> Face | None:
        return self.by_signs.get(tuple(signs))

    def leq(self, f: Face, g: Face) -> bool:
        return self._leq[f.id][g.id]

    def constraints_of(self, face: Face):
        """(hyperplane, sign) pairs defining the face."""
        return list(zip(self.arrangement.hyperplanes, face.signs))

    def face_is_bounded(self, face: Face) -> bool:
        cached = self._bounded.get(face.id)
        if cached is None:
            from .geometry import is_bounded

            constraints = self.constraints_of(face)
            # An empty arrangement has the single unbounded face R^n.
            cached = bool(constraints) and is_bounded(constraints)
            self._bounded[face.id] = cached
        return cached

    def __repr__(self):
        return (
            f"FaceComplex(n={self.dimension}, m={self.arrangement.size}, "
            f"faces={len(self.faces)}, chambers={len(self.chamber_ids)})"
        )


def face_leq(f: Face, g: Face) -> bool:
    """The face order: every nonzero sign of f must be shared by g."""
    return all(sf == ZERO or sf == sg for sf, sg in zip(f.signs, g.signs))


def enumerate_faces(arrangement) -> FaceComplex:
    """Build the face poset by inserting hyperplanes one at a time.

    Each partial face splits into up to three candidates on the new
    hyperplane; the candidate matching the witness's side inherits the
    witness for free, the other two are decided by exact LP.
    """
    n = arrangement.dimension
    origin = tuple(Fraction(0) for _ in range(n))
    partial = [((), origin)]
    for k, hyper in enumerate(arrangement.hyperplanes):
        prefix = arrangement.hyperplanes[:k]
        grown = []
        for signs, witness in partial:
            side = side_of(hyper, witness)
            for cand in (PLUS, ZERO, MINUS):
                if cand == side:
                    grown.append((signs + (cand,), witness))
                    continue
                cons = list(zip(prefix, signs)) + [(hyper, cand)]
                point = feasible_interior(cons)
                if point is not None:
                    grown.append((signs + (cand,), point))
        partial = grown
    return _build_complex(arrangement, partial)


def brute_force_sign_vectors(arrangement):
    """Oracle enumeration: LP-filter all 3^m sign vectors.

    Returns the set of feasible sign vectors; independent of the incremental
    path above except for the shared feasibility primitive.
    """
    hyperplanes = arrangement.hyperplanes
    found = set()
    stack = [()]
    for _ in range(len(hyperplanes)):
        stack = [s + (c,) for s in stack for c in (PLUS, ZERO, MINUS)]
    for signs in stack:
        if feasible_interior(list(zip(hyperplanes, signs))) is not None:
            found.add(signs)
    if not hyperplanes:
        found.add(())
    return found


def _build_complex(arrangement, signed_witnesses) -> FaceComplex:
    n = arrangement.dimension
    ordered = sorted(signed_witnesses, key=lambda sw: sign_key(sw[0]))
    faces = []
    for face_id, (signs, witness) in enumerate(ordered):
        zero_normals = [
            arrangement.hyperplanes[i].normal
            for i, s in enumerate(signs)
            if s == ZERO
        ]
        dim = n - affine_rank(zero_normals)
        faces.append(Face(signs, dim, witness, face_id))
    return FaceComplex(arrangement, faces)


def closure_faces(complex_, chamber_or_face):
    """All faces F with F <= the given face (its closed cell)."""
    cached = complex_._closures.get(chamber_or_face.id)
    if cached is None:
        cached = tuple(
            f for f in complex_.faces if complex_.leq(f, chamber_or_face)
        )
        complex_._closures[chamber_or_face.id] = cached
    return list(cached)


def panels(complex_, chamber):
    """Codimension-1 faces of a chamber's closure."""
    if not chamber.is_chamber:
        raise ValueError(f"panels() requires a chamber, got {chamber!r}")
    n = complex_.dimension
    return [
        f
        for f in closure_faces(complex_, chamber)
        if not f.is_chamber and f.dim == n - 1
    ]


def centralization(face):
    """Indices of the hyperplanes containing the face."""
    if face.is_chamber:
        raise ValueError(
            f"centralization is undefined for chambers, got {face!r}"
        )
    return set(face.zero_set())
