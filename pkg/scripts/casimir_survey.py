"""Casimir block constants, minimal polynomials and the Kaplansky test over small groups and B_{p,q}."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from hopforders.frobenius import (
    casimir_decomposition,
    check_casimir_commutation,
    compute_integrals,
    kaplansky_check,
    minpoly,
    wedderburn,
)
from hopforders.groups import build_group, small_group_specs
from hopforders.hopf import group_algebra
from hopforders.twist import build_bpq


@dataclass
class SurveyConfig:
    max_order: int = 24
    include_bpq: bool = True
    minpoly_max_dim: int = 36
    out: str | None = None


def survey(H) -> dict:
    F = compute_integrals(H)
    W = wedderburn(H)
    dec = casimir_decomposition(H, F, W)
    row = {
        "name": H.name,
        "dim": H.dim,
        "commutes": check_casimir_commutation(H, F).holds,
        "blocks": list(W.dims),
        "betas": [str(b.to_fraction()) for b in dec.betas],
        "decomposition_ok": dec.report.passed,
        "kaplansky": kaplansky_check(W).verdict,
    }
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=24)
    ap.add_argument("--no-bpq", action="store_true")
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = SurveyConfig(max_order=args.max_order, include_bpq=not args.no_bpq, out=args.out)

    rows = []
    for spec in small_group_specs(cfg.max_order):
        rows.append(survey(group_algebra(build_group(spec))))
    if cfg.include_bpq:
        B = build_bpq(2, 3, 2)
        row = survey(B)
        row["minpoly"] = str(minpoly(compute_integrals(B).C))
        rows.append(row)
    for row in rows:
        flag = "ok" if row["commutes"] and row["decomposition_ok"] and row["kaplansky"] else "FAIL"
        print(f"{row['name']:>24} dim {row['dim']:>3} blocks {row['blocks']} {flag}")
        if "minpoly" in row:
            print(f"{'':>24} minpoly(C) = {row['minpoly']}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
