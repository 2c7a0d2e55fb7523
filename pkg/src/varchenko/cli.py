"""Command-line front end: face listings, Varchenko matrices and
determinants, verification suites, and explicit matrix files.

Exit codes: 0 all checks passed, 1 a verification failed, 2 bad input.
Hyperplane positions on the command line (--subset) are 0-based file
positions; rendered labels (H1, h1^+) are 1-based.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .apartments import chambers_in, enumerate_apartments, find_apartment
from .euler import lemma_ch_check, lemma_chm_check
from .faces import enumerate_faces, format_signs
from .files import (
    ParseError,
    arrangement_digest,
    parse_arrangement,
    parse_matrix,
)
from .geometry import CHAR_SIGNS
from .polyring import format_polynomial, parse_polynomial
from .report import SCHEMA_VERSION, VerificationReport
from .tits import rank, tits_semigroup_check
from .varmatrix import (
    DEFAULT_PRIME,
    DEFAULT_SYMBOLIC_THRESHOLD,
    FactoredDet,
    beta_independence,
    beta_independence_check,
    det_modular,
    det_symbolic,
    mad_recurrence_check,
    modular_assignment,
    product_formula,
    v_path_identity_check,
    varchenko_matrix,
    verify_factorization,
)
from .witt import witt_sweep

CHECK_NAMES = (
    "tits",
    "witt",
    "lemma_ch",
    "lemma_chm",
    "v_path",
    "mad_recurrence",
    "beta",
    "factorization",
)


def _default_seed() -> int:
    env = os.environ.get("VARCHENKO_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"VARCHENKO_SEED must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varchenko",
        description=(
            "Face posets, apartments and Varchenko determinant "
            "factorizations of affine hyperplane arrangements, in exact "
            "arithmetic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_faces = sub.add_parser(
        "faces", help="list faces (sign vector, dim, rank) and chambers"
    )
    p_faces.add_argument("file", help="arrangement file")
    p_faces.add_argument("--json", action="store_true")
    p_faces.set_defaults(func=cmd_faces)

    p_var = sub.add_parser(
        "varchenko",
        help="matrix, determinant and factorization for an apartment",
    )
    p_var.add_argument("file", help="arrangement file")
    _apartment_args(p_var)
    p_var.add_argument(
        "--mode",
        choices=("auto", "symbolic", "modular"),
        default="auto",
        help="auto picks symbolic up to 12 chambers, modular beyond",
    )
    _trial_args(p_var)
    p_var.add_argument("--json", action="store_true")
    p_var.set_defaults(func=cmd_varchenko)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("file", help="arrangement file")
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every suite")
    group.add_argument(
        "--checks",
        help="comma-separated subset of: " + ",".join(CHECK_NAMES),
    )
    p_verify.add_argument(
        "--all-apartments",
        action="store_true",
        help="run apartment-level suites over all apartments of all subsets",
    )
    _apartment_args(p_verify)
    _trial_args(p_verify)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_det = sub.add_parser(
        "detfile", help="determinant of an explicitly supplied matrix file"
    )
    p_det.add_argument("file", help="matrix file (vmatrix format)")
    p_det.add_argument(
        "--expected",
        help="factored product to check, e.g. '(1 - h1^+ h1^-)^2 ...'",
    )
    p_det.add_argument("--json", action="store_true")
    p_det.set_defaults(func=cmd_detfile)

    return parser


def _apartment_args(parser):
    parser.add_argument(
        "--subset",
        help="comma-separated 0-based hyperplane positions, e.g. 0,2",
    )
    parser.add_argument(
        "--apartment-signs",
        help="comma-separated signs aligned with --subset, e.g. +,-",
    )


def _trial_args(parser):
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--jobs", type=int, default=1)


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc}") from None
    arrangement = parse_arrangement(text)
    return arrangement, enumerate_faces(arrangement)


def _resolve_apartment(args, complex_):
    """The apartment selected by --subset/--apartment-signs, or None."""
    if args.subset is None and args.apartment_signs is None:
        return None
    if args.subset is None or args.apartment_signs is None:
        raise ValueError("--subset and --apartment-signs must be given together")
    try:
        subset = [int(tok) for tok in args.subset.split(",") if tok != ""]
    except ValueError:
        raise ValueError(f"bad --subset {args.subset!r}") from None
    signs = []
    for tok in args.apartment_signs.split(","):
        tok = tok.strip()
        if tok not in ("+", "-"):
            raise ValueError(f"bad sign {tok!r} in --apartment-signs")
        signs.append(CHAR_SIGNS[tok])
    if len(signs) != len(subset):
        raise ValueError("--apartment-signs length must match --subset")
    m = complex_.arrangement.size
    for h in subset:
        if not 0 <= h < m:
            raise ValueError(f"subset index {h} out of range 0..{m - 1}")
    apartment = find_apartment(complex_, subset, signs)
    if apartment is None:
        raise ValueError(
            "the requested apartment is empty (infeasible sign choice)"
        )
    return apartment


def cmd_faces(args) -> int:
    arrangement, complex_ = _load(args.file)
    rows = [
        {
            "id": f.id,
            "signs": format_signs(f.signs),
            "dim": f.dim,
            "rank": rank(complex_, f),
            "chamber": f.is_chamber,
        }
        for f in complex_.faces
    ]
    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "arrangement": arrangement_digest(arrangement),
            "dimension": arrangement.dimension,
            "hyperplanes": arrangement.size,
            "faces": rows,
            "chambers": list(complex_.chamber_ids),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(
        f"arrangement {arrangement_digest(arrangement)}: "
        f"dim {arrangement.dimension}, {arrangement.size} hyperplanes"
    )
    print(f"{len(rows)} faces, {len(complex_.chamber_ids)} chambers")
    for row in rows:
        marker = "chamber" if row["chamber"] else "face"
        print(
            f"  {row['id']:3d}  {row['signs']:{2 * arrangement.size + 4}s} "
            f"dim {row['dim']}  rank {row['rank']}  {marker}"
        )
    return 0


def cmd_varchenko(args) -> int:
    arrangement, complex_ = _load(args.file)
    apartment = _resolve_apartment(args, complex_)
    seed = args.seed if args.seed is not None else _default_seed()

    if apartment is None:
        chambers = complex_.chambers()
        faces = list(complex_.faces)
        where = "full arrangement"
    else:
        from .apartments import faces_in

        chambers = chambers_in(complex_, apartment)
        faces = faces_in(complex_, apartment)
        where = apartment.describe()

    matrix = varchenko_matrix(chambers)
    non_chambers = [f for f in faces if not f.is_chamber]
    betas, mismatches = beta_independence(complex_, non_chambers, chambers)
    factored = product_formula(complex_, non_chambers, betas)

    mode = args.mode
    if mode == "auto":
        mode = (
            "symbolic"
            if len(chambers) <= DEFAULT_SYMBOLIC_THRESHOLD
            else "modular"
        )

    payload = {
        "schema": SCHEMA_VERSION,
        "arrangement": arrangement_digest(arrangement),
        "apartment": where,
        "chambers": [c.id for c in chambers],
        "matrix": [[format_polynomial(e) for e in row] for row in matrix.entries],
        "factored": factored.text(),
        "mode": mode,
    }
    verified = not mismatches
    if mismatches:
        payload["beta_mismatches"] = mismatches

    if mode == "symbolic":
        determinant = det_symbolic(matrix)
        expected = factored.expand()
        payload["determinant"] = format_polynomial(determinant)
        payload["expanded_product"] = format_polynomial(expected)
        verified = verified and determinant == expected
    else:
        trials = det_modular(
            matrix, seed=seed, trials=args.trials,
            prime=DEFAULT_PRIME, jobs=args.jobs,
        )
        rows = []
        for t in trials:
            assignment = modular_assignment(
                matrix.nvars, seed, t.trial, DEFAULT_PRIME
            )
            product_value = factored.eval_mod(assignment, DEFAULT_PRIME)
            rows.append(
                {
                    "trial": t.trial,
                    "digest": t.digest,
                    "determinant": t.value,
                    "product": product_value,
                    "match": t.value == product_value,
                }
            )
            verified = verified and t.value == product_value
        payload["seed"] = seed
        payload["prime"] = DEFAULT_PRIME
        payload["trials"] = rows
    payload["verified"] = verified

    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"arrangement {payload['arrangement']}: apartment {where}")
        print(f"chambers ({len(chambers)}): {payload['chambers']}")
        print("matrix:")
        for row in payload["matrix"]:
            print("  " + " | ".join(row))
        print(f"factored determinant: {payload['factored']}")
        if mode == "symbolic":
            print(f"determinant: {payload['determinant']}")
            print(f"expanded product: {payload['expanded_product']}")
        else:
            print(f"modular trials (seed {seed}, prime {DEFAULT_PRIME}):")
            for row in payload["trials"]:
                status = "match" if row["match"] else "MISMATCH"
                print(
                    f"  trial {row['trial']}  {row['digest']}  "
                    f"det={row['determinant']}  product={row['product']}  {status}"
                )
        print(f"verified: {verified}")
    return 0 if verified else 1


def cmd_verify(args) -> int:
    arrangement, complex_ = _load(args.file)
    apartment = _resolve_apartment(args, complex_)
    seed = args.seed if args.seed is not None else _default_seed()

    if args.checks:
        selected = [tok.strip() for tok in args.checks.split(",") if tok.strip()]
        unknown = [tok for tok in selected if tok not in CHECK_NAMES]
        if unknown:
            raise ParseError(
                0, f"unknown checks {unknown}; valid: {','.join(CHECK_NAMES)}"
            )
    else:
        selected = list(CHECK_NAMES)  # default and --all both run everything

    report = VerificationReport(
        {"arrangement": arrangement_digest(arrangement)}
    )

    def apartment_targets():
        if args.all_apartments:
            m = arrangement.size
            for mask in range(1 << m):
                subset = [h for h in range(m) if mask >> h & 1]
                for apt in enumerate_apartments(complex_, subset):
                    yield apt
        else:
            yield apartment  # None means the full arrangement

    for name in selected:
        if name == "tits":
            report.add(tits_semigroup_check(complex_))
        elif name == "witt":
            report.add(witt_sweep(complex_, jobs=args.jobs))
        elif name == "lemma_ch":
            report.add(lemma_ch_check(complex_))
        elif name == "lemma_chm":
            report.add(lemma_chm_check(complex_))
        elif name == "v_path":
            report.add(v_path_identity_check(complex_))
        elif name == "mad_recurrence":
            report.add(mad_recurrence_check(complex_))
        elif name == "beta":
            for apt in apartment_targets():
                report.add(beta_independence_check(complex_, apt))
        elif name == "factorization":
            for apt in apartment_targets():
                report.add(
                    verify_factorization(
                        complex_,
                        apt,
                        seed=seed,
                        trials=args.trials,
                        jobs=args.jobs,
                    )
                )

    if args.json:
        print(report.to_json())
    else:
        for line in report.summary_lines():
            print(line)
        failed = len(report.failures)
        print(
            f"{len(report.entries)} checks: "
            f"{len(report.entries) - failed} ok, {failed} failed"
        )
        for entry in report.failures:
            print(f"failure in {entry.name}: {json.dumps(entry.details, sort_keys=True)}")
    return 0 if report.all_passed else 1


_FACTOR_RE = re.compile(r"\(\s*1\s*-\s*([^()]+?)\s*\)\s*(?:\^(\d+))?")


def parse_expected_product(text: str, nvars: int) -> FactoredDet:
    """Parse '(1 - MONOMIAL)^k (1 - MONOMIAL)^k ...' into factored form."""
    factors = []
    consumed = 0
    for match in _FACTOR_RE.finditer(text):
        if text[consumed : match.start()].strip():
            raise ValueError(
                f"unparsed text {text[consumed:match.start()]!r} in expected product"
            )
        monomial = parse_polynomial(match.group(1), nvars)
        exponent = int(match.group(2)) if match.group(2) else 1
        factors.append((None, monomial, exponent))
        consumed = match.end()
    if text[consumed:].strip():
        raise ValueError(f"unparsed trailing text {text[consumed:]!r}")
    if not factors:
        raise ValueError("expected product contains no factors")
    return FactoredDet(nvars, factors)


def cmd_detfile(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise ParseError(0, f"cannot read {args.file}: {exc}") from None
    matrix = parse_matrix(text)
    determinant = det_symbolic(matrix)
    payload = {
        "schema": SCHEMA_VERSION,
        "size": matrix.size,
        "determinant": format_polynomial(determinant),
    }
    verified = None
    if args.expected:
        try:
            expected = parse_expected_product(args.expected, matrix.nvars)
        except ValueError as exc:
            raise ParseError(0, str(exc)) from None
        verified = expected.expand() == determinant
        payload["expected"] = expected.text()
        payload["verified"] = verified

    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"matrix size: {matrix.size}")
        print(f"determinant: {payload['determinant']}")
        if verified is not None:
            print(f"expected (factored): {payload['expected']}")
            print(f"verified: {verified}")
    return 0 if verified in (None, True) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
