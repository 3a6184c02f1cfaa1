"""Character-support lower bound vs dual upper bound for a few group algebras and their duals."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from hopforders.exactnum import field_create
from hopforders.groups import GroupSpec, build_group
from hopforders.hopf import dual_hopf, group_algebra
from hopforders.orders import OrderError, RingSpec, order_sandwich


@dataclass
class TableConfig:
    rings: list[str] = field(default_factory=lambda: ["Z", "Z[1/2]", "Z[1/3]", "Z[1/6]", "Z[zeta_3]"])
    depth: int = 3


def cases():
    yield "Z2", group_algebra(build_group(GroupSpec.cyclic(2, "s")), field_create(2))
    yield "Z3", group_algebra(build_group(GroupSpec.cyclic(3, "s")), field_create(3))
    N = build_group(GroupSpec.semidirect_qp(3, 2, 2))
    KN = group_algebra(N, field_create(6))
    yield "S3", KN
    yield "S3 dual", dual_hopf(KN)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=3)
    cfg = TableConfig(depth=ap.parse_args().depth)
    print(f"{'algebra':>10} " + " ".join(f"{r:>8}" for r in cfg.rings))
    for name, H in cases():
        cells = []
        for text in cfg.rings:
            ring = RingSpec.parse(text)
            try:
                cells.append(str(order_sandwich(H, ring, cfg.depth).index))
            except OrderError:
                # rational rings cannot give a full-rank lattice over Q(zeta_3)
                cells.append("n/a")
        print(f"{name:>10} " + " ".join(f"{c:>8}" for c in cells))


if __name__ == "__main__":
    main()
