"""Build obstruction certificates for several (p, q) pairs and tabulate them."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from hopforders.orders import obstruction_certificate


@dataclass
class SweepConfig:
    pairs: list[tuple[int, int]] = field(default_factory=lambda: [(2, 3), (2, 5), (3, 7)])
    r_for: dict[str, int] = field(default_factory=lambda: {"2,3": 2, "2,5": 4, "3,7": 2})
    zeta_exponent: int = 1
    out: str | None = None


def run(cfg: SweepConfig) -> list[dict]:
    rows = []
    for p, q in cfg.pairs:
        r = cfg.r_for[f"{p},{q}"]
        t = time.perf_counter()
        cert = obstruction_certificate(p, q, r, cfg.zeta_exponent)
        rows.append({
            "p": p, "q": q, "r": r,
            "final_value": str(cert.final_value),
            "verified": cert.verified,
            "steps": len(cert.steps),
            "seconds": round(time.perf_counter() - t, 2),
        })
        print(f"p={p} q={q} r={r}: final {cert.final_value} verified {cert.verified} "
              f"({len(cert.steps)} steps, {rows[-1]['seconds']}s)")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out")
    ap.add_argument("--quick", action="store_true", help="only (2,3)")
    args = ap.parse_args()
    cfg = SweepConfig(out=args.out)
    if args.quick:
        cfg.pairs = [(2, 3)]
    rows = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
