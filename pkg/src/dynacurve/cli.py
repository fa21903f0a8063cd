"""Command line front end.

Every subcommand prints one JSON document with sorted keys so runs are
byte-for-byte reproducible.  Exit codes: 0 success, 1 bad input, 2 an
exact identity failed to hold, 3 a resource cap was hit, 4 a numerical
routine gave up.  The environment variable DYNACURVE_PRECISION (bits)
raises the working precision of the extended-precision fallbacks.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynatomic import DEFAULT_DEGREE_CAP, FamilyContext
from .errors import (
    CapExceeded,
    DecompositionFailure,
    NonConvergence,
    NonZeroRemainder,
    PreconditionViolated,
    RayTraceUnresolved,
    ResourceCapExceeded,
    TrackingCollision,
    UnclassifiableRoot,
)
from .invariants import curve_invariants, ends_count
from .itinerary import end_classes_for_factor, match_roots_to_ends
from .monodromy import (
    monodromy_report,
    verify_galois_properties,
    wreath_decompose,
    zero_ray_rotation,
)
from .numerics import (
    classify_roots,
    find_misiurewicz,
    singular_point_report,
    transversality_check,
)


def _parse_complex(text: str) -> complex:
    """Accept '1.5', '-0.75', '1+2j' or 're,im'."""
    if "," in text:
        re_part, im_part = text.split(",", 1)
        return complex(float(re_part), float(im_part))
    return complex(text.replace(" ", ""))


def _emit(payload: dict, out_stream=None) -> None:
    stream = out_stream or sys.stdout
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_poly(args) -> int:
    ctx = FamilyContext(args.d, degree_cap=args.cap)
    if args.kind == "difference":
        poly = ctx.orbit_difference(args.n, args.p)
    elif args.kind == "factor":
        poly = ctx.factor(args.n, args.p, args.factor)
    else:
        poly = ctx.dynatomic(args.n, args.p)
    data = poly.to_json_dict()
    data.update(
        kind=args.kind,
        n=args.n,
        p=args.p,
        deg_z=poly.deg_z,
        deg_c=poly.deg_c,
    )
    if args.kind == "factor":
        data["factor"] = args.factor
    _emit(data)
    return 0


def _cmd_invariants(args) -> int:
    _emit(curve_invariants(args.d, args.n, args.p).to_json_dict())
    return 0


def _cmd_verify(args) -> int:
    ctx = FamilyContext(args.d, degree_cap=args.cap)
    report = ctx.verify_identities(args.n, args.p)
    _emit(report.to_json_dict())
    return 0 if report.all_hold else 2


def _cmd_classify(args) -> int:
    ctx = FamilyContext(args.d, degree_cap=args.cap)
    result = classify_roots(
        ctx,
        args.n,
        args.p,
        _parse_complex(args.c0),
        collision_tol=args.collision_tol,
        mult_tol=args.mult_tol,
    )
    _emit(result.to_json_dict())
    if args.plot_data:
        _write_csv(
            args.plot_data,
            ["z_re", "z_im", "condition", "preperiod", "period", "residual"],
            [
                [r.z.real, r.z.imag, r.condition, r.preperiod, r.period, r.residual]
                for r in result.roots
            ],
        )
    return 0


def _cmd_transversality(args) -> int:
    ctx = FamilyContext(args.d, degree_cap=args.cap)
    if args.c0 is not None:
        _emit(transversality_check(ctx, args.n, args.p, _parse_complex(args.c0)).to_json_dict())
        return 0
    reports = []
    for point in find_misiurewicz(ctx, args.n, args.p, j=args.factor):
        if point.superattracting:
            continue
        reports.append(transversality_check(ctx, args.n, args.p, point.c).to_json_dict())
    _emit({"schema": 1, "reports": reports})
    return 0


def _cmd_singular(args) -> int:
    ctx = FamilyContext(args.d, degree_cap=args.cap)
    report = singular_point_report(ctx, args.n, args.p)
    _emit(report.to_json_dict())
    if args.plot_data:
        _write_csv(
            args.plot_data,
            ["c_re", "c_im", "z_re", "z_im", "counted", "degenerate"],
            [
                [pt.c.real, pt.c.imag, pt.z.real, pt.z.imag,
                 int(pt.counted), int(pt.degenerate)]
                for pt in report.points
            ],
        )
    return 0


def _cmd_monodromy(args) -> int:
    ctx = FamilyContext(args.d, degree_cap=args.cap)
    report = monodromy_report(ctx, args.n, args.p)
    verification = verify_galois_properties(ctx, args.n, args.p, report)
    payload = {
        "schema": 1,
        "report": report.to_json_dict(),
        "verification": verification.to_json_dict(),
    }
    if args.wreath:
        payload["wreath"] = wreath_decompose(ctx, args.n, args.p, report).to_json_dict()
    if args.zero_ray:
        payload["zero_ray"] = zero_ray_rotation(ctx, args.n, args.p).to_json_dict()
    _emit(payload)
    if args.plot_data:
        rows = [["branch", v.real, v.imag] for v in report.branch_values]
        rows += [["root", z.real, z.imag] for z in report.base_roots]
        _write_csv(args.plot_data, ["kind", "re", "im"], rows)
    return 0 if verification.all_hold else 2


def _cmd_ends(args) -> int:
    d, n, p = args.d, args.n, args.p
    payload = {
        "schema": 1,
        "d": d,
        "n": n,
        "p": p,
        "ends_per_component": ends_count(d, n, p),
    }
    if n >= 1:
        payload["classes"] = {
            str(j): [str(label.representative) for label in end_classes_for_factor(d, n, p, j)]
            for j in range(1, d)
        }
    if args.c0 is not None:
        ctx = FamilyContext(d, degree_cap=args.cap)
        matches = match_roots_to_ends(ctx, n, p, _parse_complex(args.c0))
        payload["matches"] = [
            {
                "factor": m.j,
                "complete": m.complete,
                "itineraries": [str(it) for it in m.itineraries],
                "labels": [str(label.representative) for label in m.labels],
            }
            for m in matches
        ]
    _emit(payload)
    return 0


def _add_cell_arguments(sub, n_required=True):
    sub.add_argument("--d", type=int, required=True, help="family degree")
    sub.add_argument("--n", type=int, required=n_required, default=None,
                     help="preperiod (tail length)")
    sub.add_argument("--p", type=int, required=True, help="exact period")
    sub.add_argument("--cap", type=int, default=DEFAULT_DEGREE_CAP,
                     help="z-degree construction cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynacurve",
        description="Preperiodic curves of the unicritical families z -> z**d + c.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    poly = subparsers.add_parser("poly", help="print a defining polynomial")
    _add_cell_arguments(poly)
    poly.add_argument("--kind", choices=["exact", "difference", "factor"],
                      default="exact")
    poly.add_argument("--factor", type=int, default=1,
                      help="component index for --kind factor")
    poly.set_defaults(func=_cmd_poly)

    inv = subparsers.add_parser("invariants", help="closed-form curve data")
    _add_cell_arguments(inv)
    inv.set_defaults(func=_cmd_invariants)

    ver = subparsers.add_parser("verify", help="run the exact identity suite")
    _add_cell_arguments(ver)
    ver.set_defaults(func=_cmd_verify)

    cls = subparsers.add_parser("classify", help="classify fiber points at c0")
    _add_cell_arguments(cls)
    cls.add_argument("--c0", required=True, help="parameter, 're,im' or complex literal")
    cls.add_argument("--collision-tol", type=float, default=1e-9)
    cls.add_argument("--mult-tol", type=float, default=1e-6)
    cls.add_argument("--plot-data", help="write fiber points to a CSV file")
    cls.set_defaults(func=_cmd_classify)

    trans = subparsers.add_parser(
        "transversality", help="derivative and linear-system check"
    )
    _add_cell_arguments(trans)
    trans.add_argument("--c0", help="parameter; omitted means every found parameter")
    trans.add_argument("--factor", type=int, default=1)
    trans.set_defaults(func=_cmd_transversality)

    sing = subparsers.add_parser("singular", help="pairwise factor intersections")
    _add_cell_arguments(sing)
    sing.add_argument("--plot-data", help="write intersection points to a CSV file")
    sing.set_defaults(func=_cmd_singular)

    mono = subparsers.add_parser("monodromy", help="loop permutations and the group")
    _add_cell_arguments(mono)
    mono.add_argument("--wreath", action="store_true",
                      help="include the column decomposition (n >= 2)")
    mono.add_argument("--zero-ray", action="store_true",
                      help="include the zero-ray crossing shift")
    mono.add_argument("--plot-data", help="write branch values and roots to a CSV file")
    mono.set_defaults(func=_cmd_monodromy)

    ends = subparsers.add_parser("ends", help="symbol classes at infinity")
    _add_cell_arguments(ends)
    ends.add_argument("--c0", help="match fiber points against the classes")
    ends.set_defaults(func=_cmd_ends)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ResourceCapExceeded, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        NonConvergence,
        RayTraceUnresolved,
        TrackingCollision,
        UnclassifiableRoot,
        DecompositionFailure,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except NonZeroRemainder as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionViolated, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
