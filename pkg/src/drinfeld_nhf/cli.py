"""Command line interface: ``drinfeld-nhf <command> [options]``.

Exit codes: 0 success, 1 failed check, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from .algebra.finite_field import prime_power
from .errors import CrossCheckFailure, DrinfeldError, RouteMismatch


@dataclass(frozen=True)
class Config:
    p: int
    s: int
    t_order: int = 20
    x_order: int = 30
    u_prec: int = 40
    json: bool = False
    seed: int = 0

    @property
    def q(self) -> int:
        return self.p ** self.s

    @classmethod
    def from_args(cls, args) -> Config:
        if args.q < 2:
            raise ValueError("q must be at least 2")
        p, s = prime_power(args.q)
        prec = args.prec
        if prec is not None and prec < 1:
            raise ValueError("precision must be positive")
        return cls(p, s, prec or 20, prec or 30, prec or 40, args.json, args.seed)


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, defaults: bool):
    sup = argparse.SUPPRESS
    p.add_argument("--q", type=int, default=3 if defaults else sup, help="field size q = p^s (default 3)")
    p.add_argument("--prec", type=int, default=None if defaults else sup,
                   help="default precision (t-order, X-order or u-digits depending on the command)")
    p.add_argument("--json", action="store_true", default=False if defaults else sup, help="emit JSON")
    p.add_argument("--seed", type=int, default=0 if defaults else sup, help="seed for random sampling")


FORMS = ("Ek", "g1", "g2", "delta", "E")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld-nhf", description=__doc__.splitlines()[0])
    _common(ap, True)
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("goss", help="Goss polynomial G_k of the Carlitz lattice")
    _common(g, False)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--check", action="store_true", help="compare with the z-expansion oracle")

    e = sub.add_parser("expand", help="t-expansion of a modular form")
    _common(e, False)
    e.add_argument("--form", choices=FORMS, required=True)
    e.add_argument("--k", type=int, help="weight for --form Ek")
    e.add_argument("--order", type=int, help="t-order (default --prec or 20)")
    e.add_argument("--route", help="delta: recursion|product|both; E: logderiv|monicsum|both")

    t = sub.add_parser("tate", help="Tate-Drinfeld module coefficients and E(mu)")
    _common(t, False)
    t.add_argument("--order", type=int, help="X-order (default --prec or 30)")

    m = sub.add_parser("ms", help="Maass-Shimura operator delta^r of a form")
    _common(m, False)
    m.add_argument("--form", required=True, help="monomial in g1, delta, E2 or Ek (e.g. 'g1^2*delta')")
    m.add_argument("--k", type=int, help="weight for Ek")
    m.add_argument("--r", type=int, default=1)
    m.add_argument("--order", type=int)

    n = sub.add_parser("nhf", help="components and E_2-decomposition of a nearly holomorphic form")
    _common(n, False)
    n.add_argument("--form", required=True, help="monomial in g1, delta, E, E2 or Ek")
    n.add_argument("--k", type=int)
    n.add_argument("--order", type=int)

    v = sub.add_parser("eval", help="evaluate a form at a point of Omega")
    _common(v, False)
    v.add_argument("--form", required=True, help="monomial in g1, delta, E, E2 or Ek")
    v.add_argument("--k", type=int)
    v.add_argument("--point", required=True, help='JSON, e.g. {"m":2,"e":1,"terms":[[0,"zeta"],[-1,"1"]]}')
    v.add_argument("--order", type=int, help="t-order of the expansion (default 2 * u-digits/(q-1) + 10)")
    v.add_argument("--gamma", help="also check modularity under [[a,b],[c,d]], entries in T")
    v.add_argument("--tol", type=float, help="tolerance exponent for --gamma (default digits - 5)")

    c = sub.add_parser("check", help="run invariant suites")
    _common(c, False)
    c.add_argument("--suite", choices=("all", "symbolic", "tate", "numeric"), default="all")
    return ap


# ---------------------------------------------------------------- forms

_FACTOR = re.compile(r"^(g1|g2|delta|E2|E|Ek|1)(?:\^(\d+))?$")


def build_form(expr: str, q: int, N: int, k: int | None = None):
    """Product of powers of g1, g2 = delta, E, Ek and E2; a TExpansion or NearlyHoloForm."""
    from .nearly_holomorphic import NearlyHoloForm, e2_form
    from .texp import coefficient_forms, eisenstein_texp, false_eisenstein
    acc = None
    for fac in expr.replace(" ", "").split("*"):
        mt = _FACTOR.match(fac)
        if not mt:
            raise UsageError(f"unknown factor {fac!r}")
        name, e = mt.group(1), int(mt.group(2) or 1)
        if name == "1":
            continue
        if name in ("g1", "g2", "delta"):
            f = coefficient_forms(N, q)[0 if name == "g1" else 1]
        elif name == "E":
            f = false_eisenstein(N, q)
        elif name == "Ek":
            if k is None:
                raise UsageError("--k is required for Ek")
            f = eisenstein_texp(k, N, q)
        else:
            f = e2_form(N, q)
        for _ in range(e):
            if acc is None:
                acc = f
            elif isinstance(acc, NearlyHoloForm) or isinstance(f, NearlyHoloForm):
                A = acc if isinstance(acc, NearlyHoloForm) else NearlyHoloForm.from_texp(acc)
                acc = A * f
            else:
                acc = acc * f
    if acc is None:
        raise UsageError("empty form")
    return acc


def _texp_lines(f, label: str = "") -> list:
    from .serialize import render_series
    head = f"{label}weight {f.weight}, type {f.type}"
    if f.pi_power is not None:
        head += f", normalized by PI^-{f.pi_power}" if f.pi_power else ", no PI normalization"
    return [head, "  " + render_series(f.series, "t")]


def _nhf_lines(F) -> list:
    out = [f"weight {F.weight}, type {F.type}, depth {F.depth}"]
    for i, f in enumerate(F.components):
        out.append(f"  f_{i} = " + str(f))
    return out


def render_local(x, max_terms: int = 8) -> str:
    from .local_field import _fq_str
    ts = x.terms()
    parts = []
    for n, c in ts[:max_terms]:
        cs = _fq_str(x.K.F, c)
        cs = f"({cs})" if "+" in cs else cs
        if n == 0:
            parts.append(cs)
        else:
            parts.append(f"u^{n}" if cs == "1" else f"{cs}*u^{n}")
    more = " + ..." if len(ts) > max_terms else ""
    body = " + ".join(parts) if parts else "0"
    return f"{body}{more} + O(u^{x.prec})"


# ---------------------------------------------------------------- commands

def cmd_goss(cfg: Config, args, out) -> int:
    from .texp import goss_poly
    if args.k < 1:
        raise UsageError("k must be >= 1")
    g = goss_poly(args.k, cfg.q, cfg.t_order * 2 if args.check else None)
    if cfg.json:
        out({"q": cfg.q, **g.to_json(), "checked": bool(args.check)})
    else:
        out(str(g))
        if args.check:
            out(f"oracle agrees through z^{cfg.t_order * 2}: true")
    return 0


def cmd_expand(cfg: Config, args, out) -> int:
    from .texp import coefficient_forms, delta_texp, eisenstein_texp, false_eisenstein
    q = cfg.q
    N = args.order or cfg.t_order
    note = None
    agree = None
    route = args.route
    if args.form == "Ek":
        if args.k is None:
            raise UsageError("--k is required for --form Ek")
        f = eisenstein_texp(args.k, N, q)
        if args.k < 1 or args.k % (q - 1):
            note = "(q−1) ∤ k"
    elif args.form == "g1":
        f = coefficient_forms(N, q)[0]
    elif args.form in ("g2", "delta"):
        route = route or "recursion"
        if route not in ("recursion", "product", "both"):
            raise UsageError("delta routes: recursion, product, both")
        if route == "both":
            f = delta_texp(N, q, "recursion")
            agree = f.agrees(delta_texp(N, q, "product"), N)
        else:
            f = delta_texp(N, q, route)
    else:
        route = route or "both"
        if route not in ("logderiv", "monicsum", "both"):
            raise UsageError("E routes: logderiv, monicsum, both")
        try:
            f = false_eisenstein(N, q, route)
            agree = True if route == "both" else None
        except RouteMismatch:
            f = false_eisenstein(N, q, "monicsum")
            agree = False
    if cfg.json:
        d = {"form": args.form, "q": q, **f.to_json()}
        if note:
            d["note"] = note
        if agree is not None:
            d["routes_agree"] = agree
        out(d)
    else:
        for ln in _texp_lines(f):
            out(ln)
        if note:
            out(f"note: {note}")
        if agree is not None:
            out(f"routes agree: {'true' if agree else 'false'}")
    return 0 if agree is not False else 1


def cmd_tate(cfg: Config, args, out) -> int:
    from .serialize import render_series, series_json
    from .tate import cusp_false_eisenstein, tate_coeffs
    q = cfg.q
    N = args.order or cfg.x_order
    if N < q:
        raise UsageError(f"X-order must be at least q = {q}")
    g1, g2 = tate_coeffs(N, q)
    Emu = cusp_false_eisenstein(N, q)
    if cfg.json:
        out({"q": q, "g1": series_json(g1), "g2": series_json(g2), "E_mu": series_json(Emu)})
    else:
        out("g1 = " + render_series(g1, "X"))
        out("g2 = " + render_series(g2, "X"))
        out("E(mu) = " + render_series(Emu, "X"))
    return 0


def cmd_ms(cfg: Config, args, out) -> int:
    from .nearly_holomorphic import NearlyHoloForm, maass_shimura_nhf
    if args.r < 0:
        raise UsageError("r must be >= 0")
    f = build_form(args.form, cfg.q, args.order or cfg.t_order, args.k)
    F = f if isinstance(f, NearlyHoloForm) else NearlyHoloForm.from_texp(f)
    G = maass_shimura_nhf(F, args.r)
    if cfg.json:
        out({"form": args.form, "r": args.r, **G.to_json()})
    else:
        for ln in _nhf_lines(G):
            out(ln)
    return 0


def cmd_nhf(cfg: Config, args, out) -> int:
    from .nearly_holomorphic import NearlyHoloForm, compose_e2, decompose_e2
    q = cfg.q
    N = args.order or cfg.t_order
    f = build_form(args.form, q, N, args.k)
    F = f if isinstance(f, NearlyHoloForm) else NearlyHoloForm.from_texp(f)
    gs = decompose_e2(F)
    back = compose_e2(gs, F.prec, q, F.weight, F.type)
    ok = back.agrees(F)
    if cfg.json:
        out({**F.to_json(), "e2_decomposition": [g.to_json() for g in gs], "round_trip": ok})
    else:
        for ln in _nhf_lines(F):
            out(ln)
        out("F = sum_j g_j E_2^j with")
        for j, g in enumerate(gs):
            out(f"  g_{j} = {g}")
        out(f"recomposition matches: {'true' if ok else 'false'}")
    return 0 if ok else 1


def _parse_gamma(text: str, q: int):
    """'[[a,b],[c,d]]' or 'a,b,c,d' with entries polynomials in T."""
    from .evaluation import GL2K
    ents = [x.strip() for x in text.replace("[", "").replace("]", "").split(",")]
    if len(ents) != 4 or not all(ents):
        raise UsageError("gamma needs four entries")
    return GL2K.from_entries(q, *ents)


def cmd_eval(cfg: Config, args, out) -> int:
    from .evaluation import OmegaPoint, check_modularity, eval_nhf, eval_texp, parse_point
    from .local_field import local_field
    from .nearly_holomorphic import NearlyHoloForm
    q = cfg.q
    if cfg.s != 1:
        raise UsageError("numeric evaluation needs prime q")
    try:
        data = json.loads(args.point)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad point JSON: {exc}") from exc
    m = int(data.get("m", 2))
    F = local_field(q, m, q - 1, cfg.u_prec)
    pt = parse_point(data, F)
    digits = cfg.u_prec / (q - 1)
    N = args.order or int(2 * digits) + 10
    f = build_form(args.form, q, N, args.k)
    val = eval_nhf(f, pt) if isinstance(f, NearlyHoloForm) else eval_texp(f, pt)
    rc = 0
    report = None
    if args.gamma:
        g = _parse_gamma(args.gamma, q)
        tol = args.tol if args.tol is not None else digits - 5
        report = check_modularity(f, g, pt, tol)
        rc = 0 if report.passed else 1
    if cfg.json:
        d = {"form": args.form, "value": val.to_json(), "log_q_abs": None if val.is_zero() else val.log_abs()}
        if report is not None:
            d["modularity"] = [{"name": x.name, "digits": x.digits, "passed": x.passed} for x in report.lines]
        out(d)
    else:
        out(f"{args.form}(z) = {render_local(val)}")
        if not val.is_zero():
            out(f"log_q |value| = {val.log_abs():.4g}")
        if report is not None:
            out(str(report))
    return rc


def cmd_check(cfg: Config, args, out) -> int:
    from .checks import run_suite
    lines = run_suite(args.suite, cfg.q, cfg.u_prec if args.prec else None, cfg.seed)
    ok = all(x.passed for x in lines)
    if cfg.json:
        out({"suite": args.suite, "q": cfg.q, "passed": ok, "lines": [x.to_json() for x in lines]})
    else:
        for x in lines:
            out(str(x))
        out(f"{'ALL PASS' if ok else 'FAILURES'}")
    return 0 if ok else 1


COMMANDS = {"goss": cmd_goss, "expand": cmd_expand, "tate": cmd_tate, "ms": cmd_ms,
            "nhf": cmd_nhf, "eval": cmd_eval, "check": cmd_check}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    def out(x):
        print(json.dumps(x, indent=2, default=str) if isinstance(x, dict) else x)

    try:
        cfg = Config.from_args(args)
        return COMMANDS[args.cmd](cfg, args, out)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CrossCheckFailure, RouteMismatch) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except DrinfeldError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
