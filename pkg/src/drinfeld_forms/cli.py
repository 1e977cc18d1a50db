"""Command-line front end.

Subcommands: expand, verify, hecke, count, norms.  Exit codes: 0 success,
1 a check failed, 2 usage error, 3 the expansion cache was corrupt (the value
is recomputed and printed anyway).
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .errors import DrinfeldError
from .expansions import Expander, FormId, congruence_check
from .fields import base_field, monic_irreducibles, prime_power
from .goss import GossTable, goss_property_check
from .growth import (DivisionPoint, FundIndex, c_constant, growth_verify, log_norm_du,
                     log_norm_t)
from .hecke import (HeckeR2, count_recursion_check, eigencheck, gaussian_count,
                    superlattice_enumerate)
from .texp import TExp

CACHE_ENV = "DRINFELD_FORMS_CACHE"
MAX_Q = 9


class UsageError(Exception):
    pass


class CacheCorrupt(Exception):
    pass


# -- output

def texp_json(f, q, r, form):
    return {
        "q": q, "r": r, "form": str(form), "weight": f.weight, "type": f.type_l, "order": f.N,
        "coefficients": [[n, str(c)] for n, c in f.items()],
    }


def texp_table(f):
    lines = [f"order {f.N}, weight {f.weight}, type {f.type_l}"]
    lines += [f"t^{n}: {c}" for n, c in f.items()]
    return "\n".join(lines)


def dump(obj):
    return json.dumps(obj, sort_keys=True, indent=1)


def emit(args, text, obj):
    if getattr(args, "json", None):
        data = dump(obj) + "\n"
        if args.json == "-":
            sys.stdout.write(data)
        else:
            Path(args.json).write_text(data)
            print(text)
    else:
        print(text)


# -- cache

class ExpansionCache:
    """One JSON file per (q, r, form, engine version); a hit needs N_cached >= N."""

    def __init__(self, root):
        self.root = Path(root)

    @staticmethod
    def key(q, r, form):
        blob = json.dumps({"q": q, "r": r, "form": str(form), "engine": __version__}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:32]

    def path(self, q, r, form):
        return self.root / f"{self.key(q, r, form)}.json"

    def load(self, q, r, form, N):
        p = self.path(q, r, form)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text())
            if (data["q"], data["r"], data["form"], data["engine"]) != (q, r, str(form), __version__):
                raise ValueError("key mismatch")
            f = TExp.from_data(data["series"])
        except (ValueError, KeyError, TypeError, IndexError) as exc:
            raise CacheCorrupt(f"{p}: {exc}") from exc
        return f.truncate(N) if f.N >= N else None

    def store(self, q, r, form, f):
        self.root.mkdir(parents=True, exist_ok=True)
        data = {"q": q, "r": r, "form": str(form), "engine": __version__, "series": f.to_data()}
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, sort_keys=True)
        os.replace(tmp, self.path(q, r, form))


def build_cached(q, r, form, N, cache_dir, expander=None):
    """Returns (series, cache_was_corrupt)."""
    cache = ExpansionCache(cache_dir) if cache_dir else None
    corrupt = False
    if cache is not None:
        try:
            hit = cache.load(q, r, form, N)
        except CacheCorrupt as exc:
            print(f"warning: corrupt cache entry, recomputing ({exc})", file=sys.stderr)
            hit, corrupt = None, True
        if hit is not None:
            return hit, corrupt
    f = (expander or Expander(q, r)).build(form, N)
    if cache is not None:
        cache.store(q, r, form, f)
    return f, corrupt


# -- argument helpers

def check_q(q):
    try:
        prime_power(q)
    except ValueError:
        raise UsageError(f"q={q} is not a prime power")
    if q > MAX_Q:
        raise UsageError(f"q={q} exceeds the supported bound {MAX_Q}")
    return q


def parse_prime(q, text):
    fld = base_field(q)
    try:
        pi = fld.parse_poly(text)
    except ValueError as exc:
        raise UsageError(str(exc))
    if pi.degree() < 1 or not pi.leading_coefficient().is_one() or not pi.is_irreducible():
        raise UsageError(f"{text} is not a monic irreducible polynomial")
    return pi


def parse_form(text, r):
    try:
        form = FormId.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc))
    if form.kind == "g" and form.index > r:
        raise UsageError(f"g:{form.index} is not defined in rank {r}")
    return form


def cache_dir(args):
    return args.cache or os.environ.get(CACHE_ENV) or None


# -- commands

def cmd_expand(args):
    q = check_q(args.q)
    if not 2 <= args.r <= 3:
        raise UsageError("symbolic expansions are supported for 2 <= r <= 3")
    form = parse_form(args.form, args.r)
    f, corrupt = build_cached(q, args.r, form, args.order, cache_dir(args))
    emit(args, texp_table(f), texp_json(f, q, args.r, form))
    return 3 if corrupt else 0


def cmd_hecke(args):
    q = check_q(args.q)
    pi = parse_prime(q, args.prime)
    form = parse_form(args.form, 2)
    if args.i not in (0, 1, 2):
        raise UsageError("i must be 0, 1 or 2 in rank 2")
    ex = Expander(q, 2)
    P = q ** pi.degree()
    need = args.order * P if args.i == 1 else args.order
    f, corrupt = build_cached(q, 2, form, need, cache_dir(args), ex)
    g = HeckeR2(ex.ctx, pi).apply(f, args.i, args.order)
    obj = texp_json(g, q, 2, form)
    obj["hecke"] = {"prime": base_field(q).poly_str(pi), "i": args.i}
    emit(args, texp_table(g), obj)
    return 3 if corrupt else 0


def cmd_count(args):
    try:
        c = gaussian_count(args.r, args.i, args.P)
    except (ValueError, DrinfeldError) as exc:
        raise UsageError(str(exc))
    obj = {"r": args.r, "i": args.i, "P": args.P, "count": c}
    text = str(c)
    if args.enumerate:
        s = superlattice_enumerate(args.r, args.P, args.i)
        obj.update(enumerated=s.total, type1=s.type1, type2=s.type2)
        text += f"\nenumerated {s.total} (type 1: {s.type1}, type 2: {s.type2})"
    emit(args, text, obj)
    return 0


def cmd_norms(args):
    q = check_q(args.q)
    try:
        k = FundIndex.parse(args.findex)
    except ValueError as exc:
        raise UsageError(str(exc))
    if k.r != args.r:
        raise UsageError(f"index {k} does not have length r={args.r}")
    obj = {"q": q, "r": args.r, "findex": list(k.k), "log_t": log_norm_t(q, k)}
    lines = [f"log|t| = {obj['log_t']}"]
    if k.r >= 2:
        c = c_constant(q, k.prime())
        obj["c"] = c
        lines.append(f"c(k') = {c}")
    if args.u:
        fld = base_field(q)
        try:
            parts = [fld.parse_poly(x) for x in args.u.split(",")]
            u = DivisionPoint.from_polys(q, parts[0], parts[1:])
        except ValueError as exc:
            raise UsageError(f"bad --u: {exc}")
        if len(parts) != args.r + 1:
            raise UsageError(f"--u needs n followed by r={args.r} numerators")
        obj["log_du"] = log_norm_du(q, k, u)
        lines.append(f"log|d_u| = {obj['log_du']}")
    emit(args, "\n".join(lines), obj)
    return 0


# -- verify suites

def _line(ok, name, detail):
    return ok, f"{'PASS' if ok else 'FAIL'} {name}: {detail}"


def suite_goss(args):
    out = []
    for q in args.qs:
        k_max = 3 * q * q
        for s in (1, 2):
            ex = Expander(q, s + 1)
            ctx = ex.ctx
            cases = [("lattice", GossTable(ctx.ring, ctx.alphas(3)))]
            for pi in (base_field(q).T, monic_irreducibles(q, 2)[0]):
                if s == 2 and pi.degree() > 1:
                    continue
                cases.append((f"torsion {base_field(q).poly_str(pi)}",
                              GossTable(ctx.ring, ctx.torsion_alphas(pi), finite=True)))
            for name, tab in cases:
                rep = goss_property_check(tab, k_max)
                out.append(_line(rep.ok, f"Goss q={q} s={s} {name}", str(rep)))
    return out


def suite_congruence(args):
    out = []
    q, r = args.q, args.r
    N = args.order if args.order is not None else q ** 3
    ex = Expander(q, r)
    forms = [FormId("g", i) for i in range(1, r)] + [FormId("delta")]
    forms += [FormId("E", q ** i - 1) for i in range(1, r + 1)]
    forms += [FormId("alpha", i) for i in range(1, r + 1)]
    for form in forms:
        rep = congruence_check(ex.build(form, N))
        out.append(_line(rep.ok, f"support of {form} q={q} r={r} N={N}", str(rep)))
    return out


def suite_eigen(args):
    out = []
    q = args.q
    fld = base_field(q)
    pi = parse_prime(q, args.prime)
    N = args.order if args.order is not None else 2 * q * q
    ex = Expander(q, 2)
    P = fld.K(pi)
    table = [("g:1", 1, q - 1), ("delta", 1, q - 1), ("delta", 2, q * q - 1), ("h", 1, 1),
             (f"E:{q - 1}", 1, q - 1), (f"E:{q * q - 1}", 1, q * q - 1)]
    for form, i, e in table:
        res = eigencheck(form, pi, i, N, expander=ex)
        ok = res.is_eigen and res.eigenvalue == P ** e
        out.append(_line(ok, f"T_({fld.poly_str(pi)},{i}) {form}",
                         f"eigenvalue {res.eigenvalue} (expected pi^{e})" if res.is_eigen else res.detail))
    return out


def suite_counting(args):
    out = []
    P, r = args.P, args.r
    for rr in range(1, r + 1):
        for i in range(rr + 1):
            c = gaussian_count(rr, i, P)
            s = superlattice_enumerate(rr, P, i)
            ok = s.total == c and c % prime_power(P)[0] == 1
            if rr >= 2 and i >= 1:
                type1 = gaussian_count(rr - 1, i, P) if i < rr else 0
                ok = ok and s.type1 == type1
                ok = ok and s.type2 == P ** (rr - i) * gaussian_count(rr - 1, i - 1, P)
            if rr >= 2 and 1 <= i < rr:
                ok = ok and count_recursion_check(rr, i, P)
            out.append(_line(ok, f"c_({rr},{i})(P={P})", f"{c} enumerated {s.total}"))
    return out


def suite_growth(args):
    q, r = args.q, args.r
    N = args.order if args.order is not None else 64
    rep = growth_verify(q, r, N)
    return [_line(rep.ok, f"growth q={q} r={r}", rep.summary())]


SUITES = {"goss": suite_goss, "congruence": suite_congruence, "eigen": suite_eigen,
          "counting": suite_counting, "growth": suite_growth}


def cmd_verify(args):
    check_q(args.q)
    args.qs = [args.q] if args.q_given else [2, 3]
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        results += SUITES[name](args)
    for _, text in results:
        print(text)
    failed = sum(1 for ok, _ in results if not ok)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    if getattr(args, "json", None):
        obj = {"suite": args.suite, "results": [{"ok": ok, "line": text} for ok, text in results]}
        data = dump(obj) + "\n"
        if args.json == "-":
            sys.stdout.write(data)
        else:
            Path(args.json).write_text(data)
    return 1 if failed else 0


# -- parser

class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    ap = Parser(prog="drinfeld-forms", description="t-expansions and Hecke operators for Drinfeld modular forms")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("expand", help="t-expansion of a form")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--form", required=True, help="g:i, delta, h, E:k or alpha:i")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", metavar="PATH", help="write JSON ('-' for stdout)")
    p.add_argument("--cache", metavar="DIR", help=f"cache directory (default ${CACHE_ENV})")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=["goss", "congruence", "eigen", "counting", "growth", "all"], required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--prime", default="T")
    p.add_argument("--P", type=int, default=None)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hecke", help="apply T_(pi,i) to a rank-2 form")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--prime", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--form", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--cache", metavar="DIR")
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("count", help="number of superlattices with quotient (A/p)^i")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--P", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="also enumerate subspaces")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("norms", help="combinatorial log-norms on F_k")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--findex", required=True, help="comma-separated k_1,...,k_r")
    p.add_argument("--u", help="division point as n,x_1,...,x_r (polynomials)")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_norms)
    return ap


def _verify_defaults(args):
    args.q_given = args.q is not None
    args.q = args.q if args.q is not None else 2
    if args.r is None:
        args.r = 2 if args.suite in ("eigen", "growth") else 3
    if args.P is None:
        args.P = 2
    if args.suite == "counting" and args.r > 4:
        raise UsageError("counting suite supports r <= 4")
    if args.suite in ("congruence", "growth") and not 2 <= args.r <= 3:
        raise UsageError("r must be 2 or 3")


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            _verify_defaults(args)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DrinfeldError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
