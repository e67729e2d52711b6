"""Command-line surface: field reports, eigensystem recovery, regression
verification, and the a_p comparison report.

Exit codes: 0 success, 1 check or comparison failure, 2 schema/input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from . import algext
from .bundle import DEFAULT_BUNDLE_DIR, BundleError, FixtureBundle
from .characters import character_group, character_order, quadratic_characters
from .classgroup import compute_class_group, genus_data
from .eigensystem import (
    eigensystem_from_json,
    eigensystem_to_json,
    hecke_field_report,
    selftwist_status,
    twist_orbit,
)
from .quadfield import QuadFieldError, label, make_field
from .recovery import fixture_oracle_from_json, recover
from .verify import compare_ap, run_checks


def _bundle_dir(args) -> Path:
    if getattr(args, "bundle", None):
        return Path(args.bundle)
    env = os.environ.get("IQHECKE_BUNDLE")
    return Path(env) if env else DEFAULT_BUNDLE_DIR


def cmd_field(args) -> int:
    try:
        K = make_field(args.d)
    except QuadFieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    group = compute_class_group(K)
    gd = genus_data(group)
    chars = character_group(group)
    if args.json:
        print(
            json.dumps(
                {
                    "d": K.d,
                    "disc": K.disc,
                    "class_group": group.to_json(),
                    "n_characters": len(chars),
                    "n_quadratic_characters": len(quadratic_characters(group)),
                    "r2": gd.r2,
                },
                indent=1,
            )
        )
        return 0
    print(f"Q(sqrt(-{K.d})): disc {K.disc}")
    if group.elementary_divisors:
        shape = " x ".join(f"C{d}" for d in group.elementary_divisors)
    else:
        shape = "trivial"
    print(f"class group: {shape} (h = {group.h})")
    for g, d in zip(group.generators, group.elementary_divisors):
        print(f"  generator of order {d}: form ({g.a}, {g.b}, {g.c})")
    orders = sorted(character_order(group, chi) for chi in chars)
    print(f"characters: {len(chars)} total, orders {orders}")
    print(f"genus data: |CL^2| = {len(gd.squares)}, |CL[2]| = {len(gd.two_torsion)}, r2 = {gd.r2}")
    return 0


def _print_system(F, group):
    print(f"level {label(F.level)}, character exponents {list(F.character.exps)}")
    print(f"value field: {F.vfield.describe()}")
    for p, v in F.alpha:
        print(f"  alpha({label(p)}) = {algext.render_value(v)}")
    if F.al_signs is not None:
        for q, s in F.al_signs:
            print(f"  eps({label(q)}) = {s:+d}")
    st = selftwist_status(F)
    if st.status == "impossible":
        print("self-twist: ruled out")
    else:
        cands = ", ".join(str(list(c.exps)) for c in st.candidates)
        print(f"self-twist: possible (unproven) by characters {cands}")
    rep = hecke_field_report(F)
    print(
        f"Hecke fields: principal degree {rep.principal_degree}, "
        f"full degree {rep.full_degree} (ratio {rep.ratio})"
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        orbit = twist_orbit(F)
    print(f"twist orbit size: {len(orbit)}")


def cmd_recover(args) -> int:
    try:
        K = make_field(args.field)
        group = compute_class_group(K)
        data = json.loads(Path(args.oracle).read_text())
        oracle, level = fixture_oracle_from_json(group, data)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.level and label(level) != args.level:
        print(
            f"error: oracle file is for level {label(level)}, not {args.level}",
            file=sys.stderr,
        )
        return 2
    res = recover(oracle, group, level, bound=args.bound, on_missing="skip")
    if args.json:
        out = eigensystem_to_json(res.system)
        out["alpha_gaps"] = {label(p): str(op) for p, op in res.alpha_gaps}
        out["al_incomplete"] = [label(q) for q in res.al_incomplete]
        print(json.dumps(out, indent=1))
        return 0
    _print_system(res.system, group)
    if res.alpha_gaps:
        print("oracle gaps:")
        for p, op in res.alpha_gaps:
            print(f"  {label(p)}: no value for {op}")
    if res.al_incomplete:
        labs = ", ".join(label(q) for q in res.al_incomplete)
        print(f"involution signs left undetermined at: {labs}")
    return 0


def cmd_verify(args) -> int:
    try:
        bundle = FixtureBundle(_bundle_dir(args))
    except (BundleError, ValueError, OSError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    results = run_checks(bundle, args.check or None)
    payload = []
    failed = False
    for r in results:
        failed = failed or (not r.passed and not r.skipped)
        if args.json:
            payload.append(
                {
                    "name": r.name,
                    "status": r.status(),
                    "detail": r.detail,
                    **({"seconds": round(r.seconds, 3)} if args.timing else {}),
                }
            )
        else:
            timing = f" [{r.seconds:.2f}s]" if args.timing else ""
            print(f"{r.status():4} {r.name}{timing}: {r.detail}")
    if args.json:
        print(json.dumps(payload, indent=1))
    return 1 if failed else 0


def _load_system_file(group, path: Path, name: str | None):
    data = json.loads(path.read_text())
    if "systems" in data:
        rows = data["systems"]
        row = next(
            (r for r in rows if name is None or r.get("name") == name),
            None,
        )
        if row is None:
            raise ValueError(f"no system named {name!r} in {path}")
        return eigensystem_from_json(
            group, {**row, "level": data["level"], "field_disc": data.get("field_disc")}
        )
    return eigensystem_from_json(group, data)


def cmd_compare_ap(args) -> int:
    try:
        K = make_field(args.field)
        group = compute_class_group(K)
        F = _load_system_file(group, Path(args.eigensystem), args.name)
        curve = json.loads(Path(args.curve).read_text())
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cmp = compare_ap(F, curve, bound=args.bound)
    if args.json:
        print(
            json.dumps(
                {
                    "curve": curve.get("curve"),
                    "level": label(F.level),
                    "matched": cmp.matched,
                    "mismatched": [
                        {"prime": lab, "form": fv, "curve": cv}
                        for lab, fv, cv in cmp.mismatched
                    ],
                    "missing": cmp.missing,
                    "bad_primes": [
                        {"prime": lab, "ok": ok, "detail": detail}
                        for lab, ok, detail in cmp.bad_prime_checks
                    ],
                    "ok": cmp.ok,
                },
                indent=1,
            )
        )
        return 0 if cmp.ok else 1
    if not cmp.matched and not cmp.mismatched:
        print("warning: no primes compared")
    else:
        print(f"matched primes: {', '.join(cmp.matched) or '(none)'}")
    for lab, fv, cv in cmp.mismatched:
        print(f"MISMATCH at {lab}: form {fv}, curve {cv}")
    for lab in cmp.missing:
        print(f"missing eigenvalue at {lab}")
    for lab, ok, detail in cmp.bad_prime_checks:
        print(f"bad prime {lab}: {detail} -> {'agree' if ok else 'DISAGREE'}")
    print("result:", "match" if cmp.ok else "mismatch")
    return 0 if cmp.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqhecke",
        description=(
            "Hecke eigensystems over imaginary quadratic fields: exact class-group "
            "and character arithmetic, eigensystem recovery from principal-operator "
            "eigenvalues, and table regression checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="class group and character report")
    p_field.add_argument("d", type=int, help="squarefree d for Q(sqrt(-d))")
    p_field.add_argument("--json", action="store_true")
    p_field.set_defaults(fn=cmd_field)

    p_rec = sub.add_parser("recover", help="run the recovery procedure on an oracle file")
    p_rec.add_argument("--field", type=int, required=True)
    p_rec.add_argument("--level", help="expected level label N.i (cross-checked)")
    p_rec.add_argument("--oracle", required=True, help="principal-operator oracle JSON")
    p_rec.add_argument("--bound", type=int, default=50)
    p_rec.add_argument("--json", action="store_true")
    p_rec.set_defaults(fn=cmd_recover)

    p_ver = sub.add_parser("verify", help="run the fixture regression suite")
    p_ver.add_argument("--bundle", help="bundle directory (default: shipped data)")
    p_ver.add_argument("--check", action="append", help="run only the named check")
    p_ver.add_argument("--json", action="store_true")
    p_ver.add_argument("--timing", action="store_true")
    p_ver.set_defaults(fn=cmd_verify)

    p_ap = sub.add_parser("compare-ap", help="eigenvalues vs a curve's Frobenius traces")
    p_ap.add_argument("--field", type=int, required=True)
    p_ap.add_argument("--eigensystem", required=True)
    p_ap.add_argument("--name", help="system name inside a table file")
    p_ap.add_argument("--curve", required=True)
    p_ap.add_argument("--bound", type=int)
    p_ap.add_argument("--json", action="store_true")
    p_ap.set_defaults(fn=cmd_compare_ap)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
