"""Command-line driver: every verification and computation as a subcommand
with machine-readable output.

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad usage,
3 the --max-seconds budget ran out.  BSATO_THREADS caps the parallel
fan-out of suite commands; reports are merged sorted by check name, so
identical invocations print byte-identical JSON apart from wall_time_ms.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations, product

from . import bfun as bfun_mod
from . import budget
from . import zeta as zeta_mod
from .capelli import (
    PolarizationRealization,
    UEAElement,
    capelli_C,
    capelli_C_abstract,
    verify_eigenvalue_on_hwv,
    verify_lemma_Fsr,
    verify_lemma_Fsr1,
)
from .exact import FactoredPolynomial
from .genmat import (
    cauchy_check,
    partitions_of,
    verify_localization_matrix,
    verify_localization_skew,
    verify_plucker_relation,
)
from .report import Report
from .weyl import BadIndexSet, SpaceDescriptor, fourier
from .budget import ResourceBudgetExceeded


def _space_from(args, parser) -> SpaceDescriptor:
    try:
        if args.kind == "minors":
            if args.m is None or args.n is None:
                parser.error("minors needs --m and --n")
            return SpaceDescriptor.matrix(args.m, args.n)
        if args.kind == "pfaffian":
            if args.n is None:
                parser.error("pfaffian needs --n")
            return SpaceDescriptor.skew(args.n)
    except BadIndexSet as exc:
        parser.error(str(exc))
    parser.error("kind must be minors or pfaffian")


def _emit(args, payload, report: Report, start) -> int:
    payload["checks"] = [
        {"name": c.name, "status": "pass" if c.passed else "fail",
         **({"witness": c.witness} if c.witness else {})}
        for c in report.checks
    ]
    payload["status"] = "pass" if report.passed else "fail"
    payload["wall_time_ms"] = int((time.monotonic() - start) * 1000)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in report.lines():
            print(line)
        extra = [k for k in payload
                 if k not in ("checks", "status", "wall_time_ms", "command",
                              "space")]
        for k in sorted(extra):
            print("%s: %s" % (k, json.dumps(payload[k], sort_keys=True)))
        print("status: %s" % payload["status"])
    return 0 if report.passed else 1


def cmd_bfun(args, parser) -> int:
    start = time.monotonic()
    space = _space_from(args, parser)
    catalog = bfun_mod.catalog_bfunction(space)
    payload = {
        "command": "bfun",
        "space": repr(space),
        "bfunction": catalog.to_json(),
        "roots": [str(r) for r in catalog.roots()],
        "display": catalog.to_text(),
    }
    report = Report("bfun %r" % space)
    report.add("catalog b-function is %s" % catalog.to_text(), True)
    if args.renormalize:
        bz = bfun_mod.shift_to_bZ(catalog, space)
        payload["renormalized"] = bz.to_json()
        payload["renormalized_display"] = bz.to_text()
        report.add("renormalized to %s" % bz.to_text(), True)
    if args.verify:
        t = bfun_mod.TupleF.for_space(space)
        recovered = bfun_mod.recover_Pf(t)
        ok = recovered == catalog
        payload["recovered"] = recovered.to_json()
        report.add("operator recovery equals catalog", ok,
                   None if ok else recovered.to_text())
    if args.print_operator:
        t = bfun_mod.TupleF.for_space(space)
        payload["operator"] = bfun_mod.build_Dd(t).to_text()
    return _emit(args, payload, report, start)


def cmd_zeta(args, parser) -> int:
    start = time.monotonic()
    space = None
    if args.resolution:
        data = zeta_mod.ResolutionData.load(args.resolution)
        if args.kind:
            space = _space_from(args, parser)
    else:
        space = _space_from(args, parser)
        data = zeta_mod.resolution_for(space)
    z = zeta_mod.zeta_of(data)
    poles = zeta_mod.pole_set(data)
    payload = {
        "command": "zeta",
        "space": repr(space) if space else "resolution:%s" % args.resolution,
        "zeta": z.to_text(),
        "poles": [str(p) for p in poles],
    }
    report = Report("zeta")
    report.add("poles %s" % [str(p) for p in poles], True)
    if args.check_smc:
        if space is not None:
            b = bfun_mod.catalog_bfunction(space)
        elif args.b_roots:
            roots = [Fraction(tok) for tok in args.b_roots.split(",")]
            b = FactoredPolynomial.from_roots(roots)
        else:
            parser.error("--check-smc needs a space or --b-roots")
        payload["bfunction"] = b.to_json()
        report.extend(zeta_mod.smc_check(b, z))
    return _emit(args, payload, report, start)


# -- the verification registry ---------------------------------------------------


def _suite_cayley(args, parser) -> Report:
    space = _space_from(args, parser)
    t = bfun_mod.TupleF.for_space(space)
    return bfun_mod.verify_cayley(t, a_max=args.max_power)


def _suite_capelli(args, parser) -> Report:
    r = args.r or 2
    rep = Report("capelli r=%d" % r)
    abstract = capelli_C_abstract(r)
    rep.add("C_0 == 1", abstract[0] == UEAElement.unit(r))
    if r == 2:
        E = lambda i, j: UEAElement.generator(2, i, j)
        rep.add("C_1 == E11+E22", abstract[1] == E(1, 1) + E(2, 2))
        rep.add("C_2 == (E11+1)E22-E21E12",
                abstract[2] == (E(1, 1) + 1) * E(2, 2) - E(2, 1) * E(1, 2))
    for m in (r, r + 1):
        space = SpaceDescriptor.matrix(m, r)
        real = PolarizationRealization(space)
        realized = capelli_C(space, realization=real)
        ok = all(real.realize(abstract[a]) == realized[a]
                 for a in range(r + 1))
        rep.add("abstract and Weyl routes agree on %r" % space, ok)
    return rep


def _suite_capelli_ddual(args, parser) -> Report:
    space = _space_from(args, parser)
    return bfun_mod.verify_capelli_equals_Ddual(space)


def _suite_fourier(args, parser) -> Report:
    space = _space_from(args, parser)
    rep = Report("fourier on %r" % space)
    if space.kind == "matrix":
        real = PolarizationRealization(space)
        m, n = space.m, space.n
        ok_diag = all(fourier(real.entry(i, i)) == -real.entry(i, i) - m
                      for i in range(1, n + 1))
        ok_off = all(fourier(real.entry(i, j)) == -real.entry(j, i)
                     for i in range(1, n + 1) for j in range(1, n + 1)
                     if i != j)
        rep.add("F(E_ii) == -E_ii - m", ok_diag)
        rep.add("F(E_ij) == -E_ji", ok_off)
    rep.extend(bfun_mod.verify_fourier_Dd(space))
    return rep


def _suite_eigen_lemmas(args, parser) -> Report:
    rep = Report("eigenvalue lemmas")
    for r in range(1, (args.r or 6) + 1):
        sub = verify_lemma_Fsr(r)
        rep.add("F_u on (s^%d): r=%d" % (r, r), sub.passed)
        sub = verify_lemma_Fsr1(r)
        rep.add("F_(r-1) on (s^%d,0): r=%d" % (r - 1, r), sub.passed)
    return rep


def _suite_hwv(args, parser) -> Report:
    space = _space_from(args, parser)
    rep = Report("hwv eigenvalues on %r" % space)
    for total in range(0, args.max_size + 1):
        for lam in partitions_of(total, space.n) if total else [()]:
            sub = verify_eigenvalue_on_hwv(space, lam)
            rep.add("lambda=%s" % (list(lam),), sub.passed)
    return rep


def _suite_plucker(args, parser) -> Report:
    space = _space_from(args, parser)
    if space.kind != "matrix":
        parser.error("plucker runs on matrix spaces")
    rep = Report("plucker %r" % space)
    for K in combinations(range(1, space.m + 1), space.n):
        sub = verify_plucker_relation(space, K)
        rep.add("K=%s" % (list(K),), sub.passed)
    return rep


def _suite_localization(args, parser) -> Report:
    if args.kind == "minors":
        if args.m is None or args.n is None:
            parser.error("localization minors needs --m and --n")
        return verify_localization_matrix(args.m, args.n)
    if args.kind == "pfaffian":
        if args.n is None:
            parser.error("localization pfaffian needs --n")
        return verify_localization_skew(args.n)
    parser.error("kind must be minors or pfaffian")


def _suite_several_variables(args, parser) -> Report:
    space = _space_from(args, parser)
    t = bfun_mod.TupleF.for_space(space)
    rep = Report("several variables on %r" % space)
    r = len(t)
    for e in product(range(args.max_total + 1), repeat=r):
        if sum(e) > args.max_total:
            continue
        for i in range(r):
            sub = bfun_mod.verify_several_variables(t, i, e)
            if not sub.passed:
                rep.add("a=%s i=%d" % (list(e), i), False)
    rep.add("all exponent tuples with |a| <= %d" % args.max_total, rep.passed)
    return rep


def _suite_blowup(args, parser) -> Report:
    if args.n is None:
        parser.error("blowup needs --n")
    return zeta_mod.verify_pfaffian_blowup(args.n)


def _suite_cauchy(args, parser) -> Report:
    space = _space_from(args, parser)
    rep = Report("cauchy dimensions on %r" % space)
    for d in range(args.max_degree + 1):
        sub = cauchy_check(space, d)
        rep.add("degree %d: dim %d" % (d, sub.lhs), sub.passed)
    return rep


SUITES = {
    "cayley": _suite_cayley,
    "capelli": _suite_capelli,
    "capelli-ddual": _suite_capelli_ddual,
    "fourier": _suite_fourier,
    "eigen-lemmas": _suite_eigen_lemmas,
    "hwv": _suite_hwv,
    "plucker": _suite_plucker,
    "localization": _suite_localization,
    "several-variables": _suite_several_variables,
    "blowup": _suite_blowup,
    "cauchy": _suite_cauchy,
}


def _verify_all_jobs(max_size):
    """The canned desk-scale battery, as (name, argv-dict) jobs."""
    jobs = []
    mats = [(m, n) for n in range(1, max_size + 1)
            for m in range(n, max_size + 1)]
    for m, n in mats:
        jobs.append(("cayley minors %d %d" % (m, n),
                     "cayley", dict(kind="minors", m=m, n=n, max_power=3)))
        jobs.append(("fourier minors %d %d" % (m, n),
                     "fourier", dict(kind="minors", m=m, n=n)))
        jobs.append(("capelli-ddual %d %d" % (m, n),
                     "capelli-ddual", dict(kind="minors", m=m, n=n)))
        jobs.append(("plucker %d %d" % (m, n),
                     "plucker", dict(kind="minors", m=m, n=n)))
        jobs.append(("cauchy minors %d %d" % (m, n),
                     "cauchy", dict(kind="minors", m=m, n=n, max_degree=3)))
        if n >= 2:
            jobs.append(("localization minors %d %d" % (m, n),
                         "localization", dict(kind="minors", m=m, n=n)))
    for n in range(1, min(max_size, 2) + 1):
        jobs.append(("cayley pfaffian %d" % n,
                     "cayley", dict(kind="pfaffian", n=n, max_power=3)))
        jobs.append(("fourier pfaffian %d" % n,
                     "fourier", dict(kind="pfaffian", n=n)))
        jobs.append(("localization pfaffian %d" % n,
                     "localization", dict(kind="pfaffian", n=n)))
        jobs.append(("blowup %d" % n, "blowup", dict(kind="pfaffian", n=n)))
        jobs.append(("cauchy pfaffian %d" % n,
                     "cauchy", dict(kind="pfaffian", n=n, max_degree=3)))
    jobs.append(("capelli r=2", "capelli", dict(r=2)))
    jobs.append(("eigen-lemmas", "eigen-lemmas", dict(r=6)))
    return jobs


class _Namespace(argparse.Namespace):
    def __init__(self, **kw):
        defaults = dict(kind=None, m=None, n=None, r=None, max_power=4,
                        max_size=2, max_degree=4, max_total=2, json=False)
        defaults.update(kw)
        super().__init__(**defaults)


def cmd_verify(args, parser) -> int:
    start = time.monotonic()
    if args.name == "all":
        jobs = _verify_all_jobs(args.max_size)
        workers = int(os.environ.get("BSATO_THREADS", "1") or "1")

        def run(job):
            label, suite, kw = job
            rep = SUITES[suite](_Namespace(**kw), parser)
            return label, rep.passed

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run, jobs))
        else:
            results = [run(j) for j in jobs]
        report = Report("verify all")
        for label, ok in sorted(results):
            report.add(label, ok)
        payload = {"command": "verify all", "space": "max-size %d" % args.max_size}
        return _emit(args, payload, report, start)

    suite = SUITES.get(args.name)
    if suite is None:
        parser.error("unknown verification %r (choose from %s, all)"
                     % (args.name, ", ".join(sorted(SUITES))))
    report = suite(args, parser)
    payload = {"command": "verify %s" % args.name,
               "space": repr(_try_space(args))}
    if args.name == "capelli" and args.print_operator:
        r = args.r or 2
        space = SpaceDescriptor.matrix(r, r)
        C = capelli_C(space)
        payload["operators"] = [C[a].to_text() for a in range(r + 1)]
    return _emit(args, payload, report, start)


def _try_space(args):
    try:
        if args.kind == "minors" and args.m and args.n:
            return SpaceDescriptor.matrix(args.m, args.n)
        if args.kind == "pfaffian" and args.n:
            return SpaceDescriptor.skew(args.n)
    except BadIndexSet:
        pass
    return args.kind or "-"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsato",
        description="exact verification of b-function, Capelli, and "
                    "zeta-function identities for determinantal tuples")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output")
    parser.add_argument("--max-seconds", type=float, default=None,
                        help="abort oversized expansions after this budget")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bfun = sub.add_parser("bfun", help="catalog b-functions")
    p_bfun.add_argument("kind", choices=["minors", "pfaffian"])
    p_bfun.add_argument("--m", type=int)
    p_bfun.add_argument("--n", type=int)
    p_bfun.add_argument("--verify", action="store_true",
                        help="recover P(s) from the invariant operator and "
                             "compare with the catalog")
    p_bfun.add_argument("--renormalize", action="store_true",
                        help="also print the codimension-shifted b-function")
    p_bfun.add_argument("--print-operator", action="store_true")
    p_bfun.set_defaults(func=cmd_bfun)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("name")
    p_verify.add_argument("--kind", choices=["minors", "pfaffian"])
    p_verify.add_argument("--m", type=int)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--r", type=int)
    p_verify.add_argument("--max-power", type=int, default=4)
    p_verify.add_argument("--max-size", type=int, default=2)
    p_verify.add_argument("--max-degree", type=int, default=4)
    p_verify.add_argument("--max-total", type=int, default=2)
    p_verify.add_argument("--print-operator", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_zeta = sub.add_parser("zeta", help="topological zeta functions and SMC")
    p_zeta.add_argument("kind", nargs="?", choices=["minors", "pfaffian"])
    p_zeta.add_argument("--m", type=int)
    p_zeta.add_argument("--n", type=int)
    p_zeta.add_argument("--check-smc", action="store_true")
    p_zeta.add_argument("--resolution", metavar="FILE",
                        help="JSON resolution data instead of the built-ins")
    p_zeta.add_argument("--b-roots",
                        help="comma-separated roots of a user b-function "
                             "(with --resolution)")
    p_zeta.set_defaults(func=cmd_zeta)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget.set_deadline(args.max_seconds)
    try:
        return args.func(args, parser)
    except ResourceBudgetExceeded:
        print("error: time budget exceeded", file=sys.stderr)
        return 3
    finally:
        budget.set_deadline(None)


if __name__ == "__main__":
    sys.exit(main())
