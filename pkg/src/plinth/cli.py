"""Batch driver: every verification suite as a subcommand.

Reports go to standard output, one line per check, and optionally to a
JSON file.  Exit codes: 0 when all requested checks pass, 1 on a check
failure, 2 on a usage error.  Seeds default to a fixed constant so ``all``
is reproducible by default.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import casebook, separating, sl2
from .report import VerificationReport, reports_to_json
from .roberts import Y0_RELATION, Y1_GENERATORS, roberts_action
from .sagbi import GeneratorSet, verify_sagbi

DEFAULT_SEED = 1729


def _timed(check_id: str, anchor: str, params: dict, fn) -> VerificationReport:
    start = time.perf_counter()
    ok, details = fn()
    ms = (time.perf_counter() - start) * 1000.0
    return VerificationReport(
        check_id,
        anchor,
        "pass" if ok else "fail",
        params,
        details if details else ("all sub-checks passed" if ok else "failed"),
        ms,
    )


def run_roberts_invariants() -> list[VerificationReport]:
    ra = roberts_action()

    def check():
        lines = []
        ok = True
        for name, f in (
            ("u12", ra.u12),
            ("u13", ra.u13),
            ("u23", ra.u23),
            ("b1_1", ra.beta(1, 1)),
            ("b2_1", ra.beta(2, 1)),
            ("b3_1", ra.beta(3, 1)),
        ):
            invariant = ra.D.is_invariant(f)
            ok = ok and invariant
            lines.append(f"D({name}) = 0: {invariant}; {name} = {f}")
        y0 = ra.y0_relation_check()
        ok = ok and y0
        lines.append(f"{Y0_RELATION} -> 0 under substitution: {y0}")
        return ok, lines

    return [
        _timed(
            "roberts.invariants",
            "the six generating invariants are flow-constant and satisfy "
            "the hypersurface relation",
            {},
            check,
        )
    ]


def run_roberts_beta(n: int) -> list[VerificationReport]:
    ra = roberts_action()
    reports = []
    for i in (1, 2, 3):
        for k in range(n + 1):
            reports.append(ra.verify_beta_form(i, k))
    printed = ra.beta(1, n)
    print(f"b1_{n} = {printed}")
    return reports


def run_roberts_y1() -> list[VerificationReport]:
    ra = roberts_action()
    for idx, text in enumerate(Y1_GENERATORS, 1):
        print(f"relation {idx}: {text}")
    return [ra.y1_ideal_check()]


def run_roberts_sagbi(n: int, bound: int) -> list[VerificationReport]:
    ra = roberts_action()
    reports = [
        verify_sagbi(
            ra.catalog(n),
            bound,
            check_id=f"roberts.sagbi.{n}",
            anchor=f"S_{n} tete-a-tete differences subduct to zero "
            f"(bound {bound})",
        ),
        ra.sagbi_family_checks(n),
    ]
    return reports


def run_roberts_an(n: int) -> list[VerificationReport]:
    ra = roberts_action()
    return [ra.an_lemma_checks(k) for k in range(max(n, 0) + 1)]


def run_roberts_radical() -> list[VerificationReport]:
    return [roberts_action().radical_structure_check()]


def run_roberts_fixed() -> list[VerificationReport]:
    ra = roberts_action()

    def check():
        collapsed = ra.fixed_point_collapse(4)
        extended, flow = ra.D.flow_images()
        sub = {
            name: (
                extended.zero()
                if name.startswith("x")
                else extended.variable(name)
            )
            for name in extended.names
        }
        fixed = all(
            flow[name].substitute(sub, extended)
            == extended.variable(name).substitute(sub, extended)
            for name in ra.ring.names
        )
        return collapsed and fixed, [
            f"all S_4 generators constant on x = 0: {collapsed}",
            f"flow fixes every point with x = 0: {fixed}",
        ]

    return [
        _timed(
            "roberts.fixed",
            "the fixed-point locus x = 0 collapses to one image point",
            {"N": 4},
            check,
        )
    ]


def run_sl2(rep_spec: str, degree: int, samples: int, seed: int) -> list[VerificationReport]:
    rep = sl2.RepSum.parse(rep_spec)
    reports = []

    def quad_check():
        lines = []
        for n in sorted(set(rep.degrees)):
            fks = sl2.quadratic_invariants(n)
            lines.append(f"V[{n}]: {len(fks)} quadratic invariants")
            sig = sl2.sigma_on_V0(n)
            lines.append(f"V[{n}] zero-weight reflection: {sig.value}")
        return True, lines

    reports.append(
        _timed(
            f"sl2.quadratic.{rep}",
            "one quadratic invariant per even weight, full support",
            {"rep": rep_spec},
            quad_check,
        )
    )
    reports.append(sl2.positive_weight_vanishing_check(rep, degree, seed=seed))
    reports.append(
        sl2.component_containment_check(rep, degree, samples=samples, seed=seed)
    )
    return reports


def run_separating(trials: int, seed: int) -> list[VerificationReport]:
    ra = roberts_action()
    names = ra.ring.names

    def plinth_sampler(rng):
        p = {n: Fraction(rng.randint(-9, 9)) for n in names}
        for x in ("x1", "x2", "x3"):
            p[x] = Fraction(0)
        return p

    reports = [
        separating.graph_vs_separation_sampling(
            ra.D,
            ra.catalog(1),
            trials,
            seed=seed,
            plinth_indicator=lambda p: all(p[x] == 0 for x in ("x1", "x2", "x3")),
            plinth_sampler=plinth_sampler,
            plinth_unseparated=True,
        ),
        separating.separating_set_equivalence(
            ra.catalog(1), ra.catalog(4), ra.D, trials, seed=seed
        ),
    ]
    return reports


def run_danielewski() -> list[VerificationReport]:
    return [casebook.danielewski_checks(), casebook.sl2_mod_n_checks()]


def run_example1() -> list[VerificationReport]:
    P = casebook.PLANE
    return [
        casebook.example1_conductor_check(P.poly("x")),
        casebook.example1_conductor_check(P.poly("1 + x*y")),
        casebook.example1_conductor_check(P.poly("y")),
        casebook.example1_phi_separation(),
    ]


def run_kernel(ring_spec: str, degree_text: str) -> list[VerificationReport]:
    degree = tuple(int(x) for x in degree_text.split(","))
    if ring_spec == "roberts":
        ra = roberts_action()
        if len(degree) != 3:
            raise SystemExit("roberts kernel needs a 3-component degree")
        basis = ra.graded_invariants(degree)
    elif ring_spec.startswith("sl2:"):
        rep = sl2.RepSum.parse(ring_spec[4:])
        if len(degree) != 2:
            raise SystemExit("sl2 kernel needs degree,weight")
        D = sl2.build_raising_derivation(rep)
        ws = rep.weight_system()
        basis = D.graded_kernel(ws, rep.piece(degree[0], degree[1])).basis
    else:
        raise SystemExit(f"unknown ring {ring_spec!r}")
    for p in basis:
        print(p)

    def check():
        return True, [f"dimension {len(basis)} at degree {degree}"]

    return [
        _timed(
            f"kernel.{ring_spec}",
            "graded kernel basis computed by exact elimination",
            {"ring": ring_spec, "degree": list(degree)},
            check,
        )
    ]


def run_all(seed: int) -> list[VerificationReport]:
    reports = []
    reports += run_roberts_invariants()
    reports += run_roberts_beta(3)
    reports += run_roberts_y1()
    reports += run_roberts_sagbi(2, 8)
    reports += run_roberts_an(2)
    reports += run_roberts_radical()
    reports += run_roberts_fixed()
    reports += run_sl2("V[4]+V[2]", 3, 100, seed)
    reports += run_separating(300, seed)
    reports += run_danielewski()
    reports += run_example1()
    reports += run_kernel("roberts", "3,2,2")
    return reports


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plinth",
        description="exact verification suites for additive-group invariants",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write reports as JSON")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("roberts-invariants", parents=[common])
    p = sub.add_parser("roberts-beta", parents=[common])
    p.add_argument("--n", type=int, default=3)
    sub.add_parser("roberts-y1", parents=[common])
    p = sub.add_parser("roberts-sagbi", parents=[common])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--bound", type=int, default=8)
    p = sub.add_parser("roberts-an", parents=[common])
    p.add_argument("--n", type=int, default=2)
    sub.add_parser("roberts-radical", parents=[common])
    sub.add_parser("roberts-fixed", parents=[common])
    p = sub.add_parser("sl2", parents=[common])
    p.add_argument("--rep", default="V[4]+V[2]")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p = sub.add_parser("separating", parents=[common])
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_parser("danielewski", parents=[common])
    sub.add_parser("example1", parents=[common])
    p = sub.add_parser("kernel", parents=[common])
    p.add_argument("--ring", default="roberts")
    p.add_argument("--degree", required=True)
    p = sub.add_parser("all", parents=[common])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "roberts-invariants":
        reports = run_roberts_invariants()
    elif args.command == "roberts-beta":
        reports = run_roberts_beta(args.n)
    elif args.command == "roberts-y1":
        reports = run_roberts_y1()
    elif args.command == "roberts-sagbi":
        reports = run_roberts_sagbi(args.n, args.bound)
    elif args.command == "roberts-an":
        reports = run_roberts_an(args.n)
    elif args.command == "roberts-radical":
        reports = run_roberts_radical()
    elif args.command == "roberts-fixed":
        reports = run_roberts_fixed()
    elif args.command == "sl2":
        reports = run_sl2(args.rep, args.degree, args.samples, args.seed)
    elif args.command == "separating":
        reports = run_separating(args.trials, args.seed)
    elif args.command == "danielewski":
        reports = run_danielewski()
    elif args.command == "example1":
        reports = run_example1()
    elif args.command == "kernel":
        reports = run_kernel(args.ring, args.degree)
    elif args.command == "all":
        reports = run_all(args.seed)
    else:  # pragma: no cover - argparse enforces the choices
        parser.error(f"unknown subcommand {args.command!r}")
    for r in reports:
        print(r.text_line())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports))
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
