"""Command line front end.

Subcommands: seq (term streams for every family/route), check (the
cross-route consistency suite), series, walks, invseq and numbers
(direct access to the corresponding engines).  Exit codes: 0 success,
1 a requested verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import checks, formulas, invseq, perms, rules, series, walks

Route = Callable[[int], Sequence[int]]


def _perm_brute(cls_name: str) -> Route:
    return lambda n: perms.enumerate_class(perms.CLASSES[cls_name], n)


def _rule_counts(rule_name: str) -> Route:
    return lambda n: rules.count_sequence(rules.RULES[rule_name], n)


def _sb_formula(route: str) -> Route:
    return lambda n: formulas.sb_table(n, route)[1:]


_SB_ROUTES: dict[str, Route] = {
    "brute": _perm_brute("semi"),
    "rule": _rule_counts("semi"),
    "recurrence": _sb_formula("recurrence"),
    "sum": _sb_formula("sum"),
    "a": _sb_formula("a"),
    "b": _sb_formula("b"),
    "c": _sb_formula("c"),
    "d": _sb_formula("d"),
    "apery": _sb_formula("apery"),
    "invseq": lambda n: [invseq.total_via_formula(m) for m in range(1, n + 1)],
}

FAMILIES: dict[str, dict] = {
    "sb": {"offset": 1, "default": "recurrence", "routes": _SB_ROUTES},
    "semi": {"offset": 1, "default": "recurrence", "routes": _SB_ROUTES},
    "plane": {
        "offset": 1,
        "default": "rule",
        "routes": {"brute": _perm_brute("plane"), "rule": _rule_counts("semi")},
    },
    "baxter": {
        "offset": 1,
        "default": "closed",
        "routes": {
            "brute": _perm_brute("baxter"),
            "rule": _rule_counts("bax"),
            "twisted-rule": _rule_counts("tbax"),
            "closed": lambda n: [formulas.baxter_closed(m) for m in range(1, n + 1)],
            "ollerton": lambda n: formulas.baxter_recurrence(n)[1:],
        },
    },
    "twisted": {
        "offset": 1,
        "default": "rule",
        "routes": {"brute": _perm_brute("twisted"), "rule": _rule_counts("tbax")},
    },
    "strong": {
        "offset": 1,
        "default": "rule",
        "routes": {
            "brute": _perm_brute("strong"),
            "rule": _rule_counts("strong"),
            "walks": lambda n: walks.strong_from_walks(n)[1:],
        },
    },
    "av231": {
        "offset": 1,
        "default": "closed",
        "routes": {
            "brute": _perm_brute("av231"),
            "rule": _rule_counts("cat"),
            "closed": lambda n: [formulas.catalan(m) for m in range(1, n + 1)],
        },
    },
    "exp1423": {
        "offset": 1,
        "default": "brute",
        "routes": {"brute": _perm_brute("exp1423")},
    },
    "apery": {
        "offset": 0,
        "default": "closed",
        "routes": {
            "closed": lambda n: [formulas.apery_closed(m) for m in range(n + 1)],
            "recurrence": lambda n: formulas.apery_recurrence(n),
        },
    },
}

# The numbers view exposes only the closed-form and recurrence routes.
_NUMBERS_ROUTES: dict[str, tuple[str, ...]] = {
    "sb": ("recurrence", "sum", "a", "b", "c", "d", "apery"),
    "baxter": ("closed", "ollerton"),
    "apery": ("closed", "recurrence"),
}


def _emit_terms(
    family: str, route: str, offset: int, values: Sequence[int], fmt: str
) -> None:
    if fmt == "plain":
        for v in values:
            print(v)
    elif fmt == "bfile":
        for i, v in enumerate(values):
            print(f"{offset + i} {v}")
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["n", "value"])
        for i, v in enumerate(values):
            writer.writerow([offset + i, v])
    else:
        print(
            json.dumps(
                {
                    "family": family,
                    "route": route,
                    "offset": offset,
                    "terms": list(values),
                }
            )
        )


def _run_family(
    family: str, route: str | None, n_max: int, fmt: str, allowed: tuple[str, ...] | None = None
) -> int:
    cfg = FAMILIES[family]
    route = route or cfg["default"]
    routes = cfg["routes"]
    if allowed is not None:
        routes = {k: v for k, v in routes.items() if k in allowed}
        if route not in routes and route == cfg["default"]:
            route = allowed[0]
    if route not in routes:
        known = ", ".join(sorted(routes))
        print(
            f"error: family {family!r} has no route {route!r} (known: {known})",
            file=sys.stderr,
        )
        return 2
    offset = cfg["offset"]
    if n_max < offset:
        print(f"error: --n-max must be at least {offset}", file=sys.stderr)
        return 2
    _emit_terms(family, route, offset, routes[route](n_max), fmt)
    return 0


def _cmd_seq(args: argparse.Namespace) -> int:
    return _run_family(args.family, args.route, args.n_max, args.format)


def _cmd_numbers(args: argparse.Namespace) -> int:
    return _run_family(
        args.family, args.route, args.n_max, args.format,
        allowed=_NUMBERS_ROUTES[args.family],
    )


def _cmd_invseq(args: argparse.Namespace) -> int:
    n = args.n_max
    if n < 1:
        print("error: --n-max must be at least 1", file=sys.stderr)
        return 2
    if args.route == "brute":
        values = invseq.count_avoiders_bruteforce(n)
    elif args.route == "dp":
        values = [sum(invseq.q_table(m).values()) for m in range(1, n + 1)]
    else:
        values = [invseq.total_via_formula(m) for m in range(1, n + 1)]
    _emit_terms("invseq", args.route, 1, values, args.format)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    reports = checks.run_suite(args.suite, seed=args.seed)
    failed = [r for r in reports if not r.ok]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "seed": args.seed,
                    "passed": len(reports) - len(failed),
                    "failed": len(failed),
                    "reports": [r.as_dict() for r in reports],
                }
            )
        )
    else:
        for r in reports:
            print(f"{r.status.upper():4} {r.name} ({r.elapsed_ms:.1f} ms): {r.detail}")
        print(f"{len(reports) - len(failed)}/{len(reports)} checks passed")
    return 1 if failed else 0


def _cmd_series(args: argparse.Namespace) -> int:
    order = args.order
    if order < 2:
        print("error: --order must be at least 2", file=sys.stderr)
        return 2
    if args.check == "W":
        w = series.solve_W(order)
        print(f"fixpoint verified to order {order}")
        print(f"[x^1] = {w.coeff_x(1)}")
        print(f"[x^2] = {w.coeff_x(2)}")
        return 0
    if args.check == "F":
        f = series.build_F(order)
        got = [f.coeff_x(n).coeff(0) for n in range(1, order + 1)]
        want = formulas.sb_table(order)[1:]
        for n, (g, w) in enumerate(zip(got, want), start=1):
            if g != w:
                print(f"FAIL extraction vs recurrence at n={n}: {g} != {w}")
                return 1
        print(f"PASS a^0 column matches the recurrence for n=1..{order}")
        return 0
    if args.check == "omega":
        lhs = series.omega_geq(series.build_F(order))
        rhs = series.LabelSeries("semi", order).series_in_one_plus_a()
        for n in range(1, order + 1):
            if lhs.coeff_x(n) != rhs.coeff_x(n):
                print(f"FAIL nonneg part vs label evaluation at n={n}")
                return 1
        print(f"PASS nonneg part matches label evaluation for x^1..x^{order}")
        return 0
    if args.check in ("residual-semi", "residual-strong"):
        fn = series.residual_semi if args.check.endswith("semi") else series.residual_strong
        max_abs, offending = fn(order)
        if max_abs:
            print(f"FAIL residual {max_abs} at (n, ydeg, zdeg)={offending}")
            return 1
        print(f"PASS residual 0 through x^{order}")
        return 0
    if args.check == "kernel":
        code = 0
        for group, trials in (("semi", args.trials), ("strong", args.trials)):
            rep = series.kernel_invariance(group, trials, seed=args.seed)
            status = "PASS" if rep["ok"] else "FAIL"
            print(
                f"{status} {group}: invariant={rep['invariant_ok']} "
                f"orbits={rep['orbit_sizes']} redraws={rep['redraws']}"
            )
            code = code or (0 if rep["ok"] else 1)
        return code
    rep = series.verify_reduced_identity(args.a0, order)
    if rep["ok"]:
        print(f"PASS both identities hold at a0={args.a0} to order {order}")
        return 0
    print(
        f"FAIL at a0={args.a0}: F-vs-P first fail {rep['f_first_fail']}, "
        f"sum identity first fail {rep['sum_first_fail']}"
    )
    return 1


def _cmd_walks(args: argparse.Namespace) -> int:
    try:
        steps = walks.parse_steps(args.steps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.n_max < 0:
        print("error: --n-max must be nonnegative", file=sys.stderr)
        return 2
    if args.estimate_growth:
        if args.n_max < 50:
            print("error: growth estimation needs --n-max of at least 50", file=sys.stderr)
            return 2
        rep = walks.growth_estimate(steps, args.n_max)
        if args.format == "json":
            print(json.dumps(rep))
        else:
            for key in ("steps", "n_max", "alpha_hat", "rho_hat", "target", "rel_err"):
                print(f"{key} = {rep[key]}")
            print(f"residual_of_minpoly = {rep['residual_of_minpoly']}")
        return 0
    if args.excursions:
        values = walks.excursions(steps, args.n_max)
    else:
        values = [t.total() for t in walks.count_walks(steps, args.n_max)]
    label = "excursions" if args.excursions else "walks"
    _emit_terms(label, steps.name or args.steps, 0, values, args.format)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="baxterlab",
        description="Exact enumeration toolkit for Baxter-like permutation families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    term_formats = ("plain", "bfile", "csv", "json")

    p = sub.add_parser("seq", help="emit terms of a family via a chosen route")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--route", default=None, help="counting route (family-specific)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", default="plain", choices=term_formats)
    p.set_defaults(func=_cmd_seq)

    p = sub.add_parser("check", help="run the cross-route consistency suite")
    p.add_argument("--suite", default="quick", choices=("quick", "full"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="text", choices=("text", "json"))
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("series", help="series-side constructions and identities")
    p.add_argument(
        "--check",
        required=True,
        choices=("W", "F", "omega", "residual-semi", "residual-strong", "kernel", "reduced"),
    )
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--a0", type=Fraction, default=Fraction(3, 2))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("walks", help="quarter-plane walk tables and growth")
    p.add_argument("--steps", default="five", help="'five', 'seven' or a step list")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--excursions", action="store_true")
    p.add_argument("--estimate-growth", action="store_true")
    p.add_argument("--format", default="plain", choices=term_formats)
    p.set_defaults(func=_cmd_walks)

    p = sub.add_parser("invseq", help="inversion-sequence avoider counts")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--route", default="formula", choices=("brute", "dp", "formula"))
    p.add_argument("--format", default="plain", choices=term_formats)
    p.set_defaults(func=_cmd_invseq)

    p = sub.add_parser("numbers", help="closed-form and recurrence tables")
    p.add_argument("--family", required=True, choices=sorted(_NUMBERS_ROUTES))
    p.add_argument("--route", default=None)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", default="bfile", choices=term_formats)
    p.set_defaults(func=_cmd_numbers)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
