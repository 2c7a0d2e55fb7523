"""Arrangement and matrix file formats, with bit-exact serializers.

Arrangement file: `#` starts a comment (full line or trailing). The first
payload line is `dim n`; every further payload line holds n+1 rationals
``a1 ... an b`` (integers or p/q) describing the hyperplane a.x = b, with
H+ the side where a.x > b.

Matrix file: header ``vmatrix <size> <num_hyperplanes>``, then size^2
polynomial entries in row-major order, one per line, in the canonical text
form of the polynomial module.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from importlib.resources import files as _resource_files

from .geometry import Hyperplane, Arrangement
from .polyring import format_polynomial, parse_polynomial
from .varmatrix import VMatrix


def bundled_text(name: str) -> str:
    """Contents of one of the example files shipped with the package."""
    return (_resource_files("varchenko") / "data" / name).read_text()


class ParseError(ValueError):
    """Malformed input file; carries the 1-based offending line number."""

    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _payload_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_rational(token, line_number) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line_number, f"invalid rational {token!r}") from None


def parse_arrangement(text: str) -> Arrangement:
    lines = list(_payload_lines(text))
    if not lines:
        raise ParseError(1, "missing 'dim n' header")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit():
        raise ParseError(header_no, f"expected 'dim n', got {header!r}")
    n = int(parts[1])
    if n < 1:
        raise ParseError(header_no, "dimension must be positive")

    hyperplanes = []
    seen = {}
    for number, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != n + 1:
            raise ParseError(
                number,
                f"expected {n + 1} rationals (a1..an b), got {len(tokens)}",
            )
        values = [_parse_rational(t, number) for t in tokens]
        try:
            hyperplane = Hyperplane(values[:n], values[n])
        except ValueError as exc:
            raise ParseError(number, str(exc)) from None
        key = hyperplane.normalized_key()
        if key in seen:
            raise ParseError(
                number,
                f"duplicate hyperplane (same subspace as line {seen[key]})",
            )
        seen[key] = number
        hyperplanes.append(hyperplane)
    return Arrangement(n, hyperplanes)


def serialize_arrangement(arrangement: Arrangement) -> str:
    lines = [f"dim {arrangement.dimension}"]
    for h in arrangement.hyperplanes:
        coeffs = list(h.normal) + [h.offset]
        lines.append(" ".join(str(c) for c in coeffs))
    return "\n".join(lines) + "\n"


def arrangement_digest(arrangement: Arrangement) -> str:
    """Short stable hash identifying the arrangement in reports."""
    canonical = serialize_arrangement(arrangement)
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def parse_matrix(text: str) -> VMatrix:
    lines = list(_payload_lines(text))
    if not lines:
        raise ParseError(1, "missing 'vmatrix <size> <num_hyperplanes>' header")
    header_no, header = lines[0]
    parts = header.split()
    if (
        len(parts) != 3
        or parts[0] != "vmatrix"
        or not parts[1].isdigit()
        or not parts[2].isdigit()
    ):
        raise ParseError(
            header_no, f"expected 'vmatrix <size> <num_hyperplanes>', got {header!r}"
        )
    size, num_hyperplanes = int(parts[1]), int(parts[2])
    if size < 1:
        raise ParseError(header_no, "matrix size must be positive")
    body = lines[1:]
    if len(body) != size * size:
        raise ParseError(
            header_no,
            f"expected {size * size} entries, found {len(body)}",
        )
    nvars = 2 * num_hyperplanes
    entries = []
    for r in range(size):
        row = []
        for c in range(size):
            number, chunk = body[r * size + c]
            try:
                row.append(parse_polynomial(chunk, nvars))
            except ValueError as exc:
                raise ParseError(number, str(exc)) from None
        entries.append(row)
    matrix = VMatrix(list(range(size)), entries, nvars)
    try:
        matrix.validate()
    except ValueError as exc:
        raise ParseError(header_no, f"not a distance matrix: {exc}") from None
    return matrix


def serialize_matrix(matrix: VMatrix, num_hyperplanes: int) -> str:
    lines = [f"vmatrix {matrix.size} {num_hyperplanes}"]
    for row in matrix.entries:
        for entry in row:
            lines.append(format_polynomial(entry))
    return "\n".join(lines) + "\n"
