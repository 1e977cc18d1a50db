"""Time the two routes to Delta (product over S_a, Eisenstein bootstrap) and the
h^(q-1) identity over a grid of (q, r, N)."""

import argparse
import time
from dataclasses import dataclass, field

from drinfeld_forms.expansions import Expander


@dataclass
class Config:
    grid: list = field(default_factory=lambda: [(2, 2, 32), (3, 2, 36), (2, 3, 64), (3, 3, 27)])


def run(cfg):
    print(f"{'q':>2} {'r':>2} {'N':>4}  {'product':>8}  {'eisenstein':>10}  agree  h-check")
    ok = True
    for q, r, N in cfg.grid:
        X = Expander(q, r)
        t0 = time.perf_counter()
        d = X.delta(N)
        t1 = time.perf_counter()
        g = X.g(r, N)
        t2 = time.perf_counter()
        sign = -1 if (r - 1) % 2 else 1
        h_ok = (X.h(N) ** (q - 1)).agrees(d.scale(sign), N)
        agree = d == g
        ok = ok and agree and h_ok
        print(f"{q:>2} {r:>2} {N:>4}  {t1 - t0:>7.2f}s  {t2 - t1:>9.2f}s  {str(agree):>5}  {h_ok}")
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", nargs="*", metavar="q,r,N", help="override the default grid")
    args = ap.parse_args()
    cfg = Config()
    if args.grid:
        cfg.grid = [tuple(int(x) for x in g.split(",")) for g in args.grid]
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
