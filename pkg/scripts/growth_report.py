"""Coefficient growth of the product function and the normalized Delta, h series at
the zero index, at the F_Q[T] sample point or at a generic point of F'_0."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from drinfeld_forms.growth import (equality_indices, generic_equality_indices, generic_point,
                                   growth_verify)


@dataclass
class Config:
    q: int = 2
    r: int = 3
    order: int = 64
    prec: int = 256
    point: str = "sample"  # or "generic" (q = 2, r = 3 only)
    json: str = ""


def run(cfg):
    kp = (0,) * (cfg.r - 1)
    pt = generic_point(cfg.q, cfg.r, cfg.prec) if cfg.point == "generic" else None
    rep = growth_verify(cfg.q, cfg.r, cfg.order, prec=cfg.prec, point=pt)
    print(rep.summary())
    print(f"certified digits: {rep.certified_digits if rep.certified_digits is not None else 'exact'}")
    for name in ("p", "a", "b"):
        eq = [x.k for x in rep.lines if x.series == name and x.verdict == "equal" and x.k > 0]
        print(f"{name}: equality at {eq}")
    print(f"forced everywhere: {equality_indices(cfg.q, cfg.r, kp, cfg.order)}")
    print(f"possible:          {generic_equality_indices(cfg.q, cfg.r, kp, cfg.order)}")
    for line in rep.failures:
        print(f"FAIL {line}")
    if cfg.json:
        Path(cfg.json).write_text(rep.to_json() + "\n")
    return rep.ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f, default in vars(Config()).items():
        ap.add_argument(f"--{f}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
