"""Eigenvalues of T_(pi,i) on rank-2 forms for every monic irreducible pi up to a
given degree, printed as powers of pi."""

import argparse
from dataclasses import dataclass

from drinfeld_forms.expansions import Expander
from drinfeld_forms.fields import RatK, monic_irreducibles
from drinfeld_forms.hecke import eigencheck


@dataclass
class Config:
    q: int = 2
    max_degree: int = 2
    order: int = 0  # 0 means 2 q^2


def forms(q):
    return [("g:1", 1), ("delta", 1), ("delta", 2), ("h", 1), (f"E:{q - 1}", 1), (f"E:{q * q - 1}", 1),
            (f"E:{q ** 3 - 1}", 1)]


def exponent(ratio, pi, fld, limit=200):
    p = RatK.of(fld, pi)
    for e in range(limit):
        if p ** e == ratio:
            return e
    return None


def run(cfg):
    X = Expander(cfg.q, 2)
    N = cfg.order or 2 * cfg.q * cfg.q
    for d in range(1, cfg.max_degree + 1):
        for pi in monic_irreducibles(cfg.q, d):
            name = X.fld.poly_str(pi)
            cells = []
            for form, i in forms(cfg.q):
                res = eigencheck(form, pi, i, N, expander=X)
                e = exponent(res.eigenvalue, pi, X.fld) if res.is_eigen else None
                cells.append(f"T_{i} {form}: " + (f"pi^{e}" if e is not None else "not eigen"))
            print(f"pi = {name}")
            for c in cells:
                print("  " + c)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=Config.q)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--order", type=int, default=Config.order)
    a = ap.parse_args()
    run(Config(a.q, a.max_degree, a.order))


if __name__ == "__main__":
    main()
