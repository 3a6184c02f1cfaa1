"""Command-line front end.

Every subcommand builds a :class:`CliReport`, prints it (``--text`` or
``--json``) and optionally writes it with ``--report``.  Exit codes: 0 when
every check passes, 1 when a check fails, 2 for usage errors.  Reports carry
no timestamps; per-phase timings are only included with ``--timings``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from hopforders import __version__
from hopforders.exactnum import field_create, format_coeff
from hopforders.groups import GroupError, GroupSpec, all_irreps, build_group
from hopforders.hopf import SAMPLE_SEED, SAMPLE_SIZE, HopfAlgebra, dual_hopf, group_algebra, verify_axioms
from hopforders.twist import TwistError, build_bpq, verify_twist

THREADS_ENV = "HOPFORDERS_THREADS"


class UsageError(Exception):
    pass


@dataclass
class CliReport:
    command: list[str]
    field_conductor: int | None = None
    checks: list[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    show_timings: bool = False

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def check(self, name: str, ok: bool, witness: Any = None, **extra) -> bool:
        entry: dict[str, Any] = {"name": name, "status": "pass" if ok else "fail"}
        entry.update(extra)
        if witness is not None and not ok:
            entry["witness"] = witness
        self.checks.append(entry)
        return ok

    def extend(self, prefix: str, rep_json: dict) -> None:
        for c in rep_json["checks"]:
            entry = dict(c)
            entry["name"] = f"{prefix}.{c['name']}"
            self.checks.append(entry)
        if rep_json.get("seed") is not None:
            self.data.setdefault("seeds", {})[prefix] = rep_json["seed"]

    def phase(self, name: str):
        report = self

        class _Timer:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                report.timings[name] = round(time.perf_counter() - self.t, 3)

        return _Timer()

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "version": __version__,
            "field_conductor": self.field_conductor,
            "checks": self.checks,
            "data": self.data,
            "passed": self.passed,
        }
        if self.show_timings:
            out["timings"] = self.timings
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def text(self) -> str:
        lines = [f"{' '.join(self.command)}"]
        if self.field_conductor is not None:
            lines.append(f"field: Q(zeta_{self.field_conductor})")
        for c in self.checks:
            line = f"{c['status'].upper():4}  {c['name']}"
            if c.get("mode") == "sampled":
                line += " (sampled)"
            if "witness" in c:
                line += f"  witness={json.dumps(c['witness'], sort_keys=True)}"
            lines.append(line)
        for k in sorted(self.data):
            lines.append(f"{k}: {json.dumps(self.data[k], sort_keys=True)}")
        if self.show_timings:
            for k, v in self.timings.items():
                lines.append(f"time[{k}]: {v}s")
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# helpers


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be >= 1")
    return n


def _load_algebra(path: str) -> HopfAlgebra:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return HopfAlgebra.loads(text)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"{path} is not a valid algebra file: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _group_spec(args) -> GroupSpec:
    if args.kind == "cyclic":
        if not args.k:
            raise UsageError("--k is required for a cyclic group")
        return GroupSpec.cyclic(args.k, args.names[0] if args.names else "g")
    if args.kind == "semidirect":
        if not (args.q and args.p and args.r):
            raise UsageError("--q, --p and --r are required for a semidirect product")
        names = tuple(args.names) if args.names else ("s", "a")
        return GroupSpec.semidirect_qp(args.q, args.p, args.r, names)
    if args.kind == "bpq":
        if not (args.q and args.p and args.r):
            raise UsageError("--q, --p and --r are required")
        return GroupSpec.product(GroupSpec.semidirect_qp(args.q, args.p, args.r, ("s", "a")),
                                 GroupSpec.semidirect_qp(args.q, args.p, args.r, ("t", "b")))
    raise UsageError(f"unknown group kind {args.kind!r}")


def _beta_str(c) -> str:
    return format_coeff(c.to_fraction()) if c.is_rational() else str(c)


# ---------------------------------------------------------------------------
# subcommands


def cmd_build_group(args, rep: CliReport) -> None:
    spec = _group_spec(args)
    with rep.phase("build"):
        G = build_group(spec, seed=args.seed)
    rep.check("constructed", True, mode=G.assoc_mode)
    rep.data["order"] = G.order
    rep.data["exponent"] = G.exponent()
    rep.data["generators"] = {k: G.labels[v] for k, v in sorted(G.gens.items())}
    if args.irreps:
        with rep.phase("irreps"):
            irreps = all_irreps(G)
        rep.check("irreps_homomorphisms", all(R.check_homomorphism() for R in irreps))
        rep.check("irreps_dimension_count", sum(R.dim ** 2 for R in irreps) == G.order)
        rep.data["irrep_dims"] = [R.dim for R in irreps]
    _write(args.out, json.dumps(G.to_json(), sort_keys=True) + "\n")


def cmd_group_algebra(args, rep: CliReport) -> None:
    if args.group:
        try:
            spec = GroupSpec.from_json(json.loads(Path(args.group).read_text())["spec"])
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot read group file {args.group}: {exc}") from exc
    else:
        spec = _group_spec(args)
    G = build_group(spec)
    K = field_create(args.field) if args.field else None
    H = group_algebra(G, K)
    rep.field_conductor = H.field.n
    rep.data["dim"] = H.dim
    rep.check("constructed", True)
    _write(args.out, H.dumps() + "\n")


def cmd_dual(args, rep: CliReport) -> None:
    H = _load_algebra(args.input)
    D = dual_hopf(H)
    rep.field_conductor = D.field.n
    rep.data["dim"] = D.dim
    rep.check("constructed", True)
    _write(args.out, D.dumps() + "\n")


def cmd_bpq(args, rep: CliReport) -> None:
    with rep.phase("build"):
        B = build_bpq(args.p, args.q, args.r, args.zeta_exponent, args.conductor)
    rep.field_conductor = B.field.n
    rep.data["dim"] = B.dim
    rep.data["name"] = B.name
    with rep.phase("twist"):
        rep.extend("twist", verify_twist(B.twist).to_json())
    _write(args.out, B.dumps() + "\n")


def cmd_verify(args, rep: CliReport) -> None:
    H = _load_algebra(args.input)
    rep.field_conductor = H.field.n
    rep.data["dim"] = H.dim
    exhaustive = True if args.exhaustive else (False if args.sampled else None)
    with rep.phase("axioms"):
        r = verify_axioms(H, seed=args.seed, sample_size=args.sample_size, exhaustive=exhaustive,
                          workers=_threads())
    rep.extend("axioms", r.to_json())
    rep.data["seed"] = args.seed
    if H.twist is not None:
        with rep.phase("twist"):
            rep.extend("twist", verify_twist(H.twist).to_json())


def cmd_casimir(args, rep: CliReport) -> None:
    from hopforders.frobenius import (
        FrobeniusError,
        casimir_decomposition,
        central_element_E,
        check_casimir_commutation,
        compute_integrals,
        integral_report,
        kaplansky_check,
        minpoly,
        wedderburn,
    )

    H = _load_algebra(args.input)
    rep.field_conductor = H.field.n
    try:
        with rep.phase("integrals"):
            F = compute_integrals(H)
    except FrobeniusError as exc:
        rep.check("integrals", False, witness=str(exc))
        return
    rep.data["eps_Lambda"] = _beta_str(F.eps_Lambda)
    rep.extend("integrals", integral_report(F).to_json())
    with rep.phase("commutation"):
        com = check_casimir_commutation(H, F)
    rep.check("casimir_commutation", com.holds, com.witness, count=com.count)
    rep.check("commutation_matches_involutory", com.consistent, {"involutory": com.involutory})
    W = None
    if args.decompose or args.e_elements or args.minpoly:
        with rep.phase("wedderburn"):
            W = wedderburn(H, verify=False)
            from hopforders.frobenius import wedderburn_report

            rep.extend("wedderburn", wedderburn_report(W, seed=args.seed).to_json())
        rep.data["block_dims"] = W.dims
        kap = kaplansky_check(W)
        rep.data["kaplansky"] = kap.to_json()
        rep.check("kaplansky", kap.verdict, kap.to_json())
    if args.decompose:
        with rep.phase("decomposition"):
            dec = casimir_decomposition(H, F, W)
        rep.extend("decomposition", dec.report.to_json())
        rep.data["betas"] = [_beta_str(b) for b in dec.betas]
    if args.e_elements:
        alphas = []
        for i in range(W.s):
            res = central_element_E(H, F, W, i)
            rep.check(f"E[{W.names[i]}].central", res.central)
            rep.check(f"E[{W.names[i]}].acts_by_alpha", res.acts_by_alpha)
            rep.check(f"E[{W.names[i]}].alpha_integral", res.alpha_integral)
            alphas.append(_beta_str(res.alpha))
        rep.data["alphas"] = alphas
    if args.minpoly:
        with rep.phase("minpoly"):
            mp = minpoly(F.C)
        rep.data["minpoly"] = mp.to_json()
        rep.check("minpoly_integer_flag_matches_kaplansky", mp.integral == kaplansky_check(W).verdict)
        if args.expect_minpoly is not None:
            rep.check("expect_minpoly", str(mp) == args.expect_minpoly.strip(),
                      {"expected": args.expect_minpoly, "got": str(mp)})


def cmd_obstruction(args, rep: CliReport) -> None:
    from hopforders.orders import ObstructionCertificate, obstruction_certificate

    if args.load:
        try:
            text = Path(args.load).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.load}: {exc.strerror}") from exc
        with rep.phase("reverify"):
            cert = ObstructionCertificate.loads(text)
    else:
        if args.p is None or args.q is None or args.r is None:
            raise UsageError("--p, --q and --r are required (or --load)")
        with rep.phase("certificate"):
            cert = obstruction_certificate(args.p, args.q, args.r, args.zeta_exponent)
    for s in cert.steps:
        rep.check(s.step_name, s.verified, {"claimed_identity": s.claimed_identity})
    final = format_coeff(cert.final_value)
    rep.data["final_value"] = final
    rep.data["parameters"] = {"p": cert.p, "q": cert.q, "r": cert.r, "zeta_exponent": cert.zeta_exponent}
    rep.check("final_value_is_1/p", cert.final_value == Fraction(1, cert.p), {"final_value": final})
    if args.expect_final is not None:
        want = _frac(args.expect_final)
        rep.check("expect_final", cert.final_value == want, {"expected": str(want), "got": final})
    _write(args.out, cert.dumps() + "\n")


def cmd_weak_order(args, rep: CliReport) -> None:
    from hopforders.frobenius import compute_integrals, kaplansky_check, wedderburn
    from hopforders.orders import OrderError, weak_order

    H = _load_algebra(args.input)
    rep.field_conductor = H.field.n
    F = compute_integrals(H)
    W = wedderburn(H, seed=args.seed)
    kap = kaplansky_check(W)
    rep.data["kaplansky"] = kap.to_json()
    try:
        res = weak_order(W, F)
    except OrderError as exc:
        rep.check("weak_order", False, str(exc))
        return
    rep.data["weak_order"] = res.to_json()
    rep.check("closed_under_products", res.closed)
    rep.check("contains_one", res.contains_one)
    rep.check("casimir_coefficients_integral", res.integral)
    rep.check("block_transpose_symmetric", res.symmetric)


def cmd_sandwich(args, rep: CliReport) -> None:
    from hopforders.orders import OrderError, RingSpec, order_sandwich

    H = _load_algebra(args.input)
    rep.field_conductor = H.field.n
    try:
        ring = RingSpec.parse(args.ring)
        ring.check_field(H.field)
    except OrderError as exc:
        raise UsageError(str(exc)) from exc
    try:
        with rep.phase("sandwich"):
            sw = order_sandwich(H, ring, args.depth)
    except OrderError as exc:
        rep.check("sandwich", False, str(exc))
        return
    rep.data["ring"] = str(ring)
    rep.data["sandwich"] = {k: v for k, v in sw.to_json().items() if k not in ("lower", "upper")}
    rep.check("lower_stabilized", sw.lower.stabilized, rounds=sw.lower.rounds)
    rep.check("dual_stabilized", sw.dual_support.stabilized, rounds=sw.dual_support.rounds)
    rep.check("inclusion", sw.inclusion)
    if args.expect_index is not None:
        rep.check("expect_index", sw.index == args.expect_index, {"expected": args.expect_index, "got": sw.index})
    if args.lattices:
        _write(args.lattices, json.dumps({"lower": sw.lower.lattice.to_json(), "upper": sw.upper.to_json()},
                                         sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="output", action="store_const", const="json", help="print the JSON report")
    mode.add_argument("--text", dest="output", action="store_const", const="text", help="print a text summary")
    common.add_argument("--report", help="write the JSON report to this path")
    common.add_argument("--timings", action="store_true", help="include per-phase timings (non-deterministic)")
    common.add_argument("--seed", type=int, default=SAMPLE_SEED, help="sampling seed")

    p = argparse.ArgumentParser(prog="hopforders", description="Exact Hopf algebra computations over cyclotomic fields")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def group_flags(sp):
        sp.add_argument("--kind", choices=["cyclic", "semidirect", "bpq"], default="semidirect")
        sp.add_argument("--k", type=int)
        sp.add_argument("--q", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--names", nargs="+")

    sp = sub.add_parser("build-group", parents=[common], help="build a finite group and its irreps")
    group_flags(sp)
    sp.add_argument("--irreps", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_build_group)

    sp = sub.add_parser("group-algebra", parents=[common], help="write K G as an algebra file")
    group_flags(sp)
    sp.add_argument("--group", help="group JSON written by build-group")
    sp.add_argument("--field", type=int, help="conductor n of Q(zeta_n)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_group_algebra)

    sp = sub.add_parser("dual", parents=[common], help="dual Hopf algebra")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("bpq", parents=[common], help="build the twisted algebra B_{p,q}(zeta)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--zeta-exponent", type=int, default=1)
    sp.add_argument("--conductor", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bpq)

    sp = sub.add_parser("verify", parents=[common], help="check the Hopf algebra axioms")
    sp.add_argument("--input", required=True)
    sp.add_argument("--sample-size", type=int, default=SAMPLE_SIZE)
    m = sp.add_mutually_exclusive_group()
    m.add_argument("--exhaustive", action="store_true")
    m.add_argument("--sampled", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("casimir", parents=[common], help="integrals, Casimir element and block data")
    sp.add_argument("--input", required=True)
    sp.add_argument("--decompose", action="store_true")
    sp.add_argument("--minpoly", action="store_true")
    sp.add_argument("--e-elements", action="store_true")
    sp.add_argument("--expect-minpoly")
    sp.set_defaults(func=cmd_casimir)

    sp = sub.add_parser("obstruction", parents=[common], help="certificate forcing 1/p into R")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--zeta-exponent", type=int, default=1)
    sp.add_argument("--out", help="write the certificate JSON")
    sp.add_argument("--load", help="re-verify a stored certificate instead of building one")
    sp.add_argument("--expect-final")
    sp.set_defaults(func=cmd_obstruction)

    sp = sub.add_parser("weak-order", parents=[common], help="weak order over Z from matrix units")
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_weak_order)

    sp = sub.add_parser("sandwich", parents=[common], help="character-support bounds for Hopf orders")
    sp.add_argument("--input", required=True)
    sp.add_argument("--ring", default="Z")
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--expect-index", type=int)
    sp.add_argument("--lattices", help="write both lattices to this path")
    sp.set_defaults(func=cmd_sandwich)
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = CliReport(command=["hopforders"] + _echo(argv), show_timings=args.timings)
    func: Callable = args.func
    try:
        func(args, rep)
    except UsageError as exc:
        print(f"hopforders: error: {exc}", file=sys.stderr)
        return 2
    except (GroupError, TwistError, ValueError) as exc:
        # parameter errors raised by the library (bad p, q, r and friends)
        print(f"hopforders: error: {exc}", file=sys.stderr)
        return 2
    if args.report:
        Path(args.report).write_text(rep.dumps())
    stdout.write(rep.dumps() if args.output == "json" else rep.text())
    return 0 if rep.passed else 1


def _echo(argv: Sequence[str]) -> list[str]:
    # drop flags that only change presentation
    skip = {"--json", "--text", "--timings"}
    out = []
    it = iter(argv)
    for a in it:
        if a in skip:
            continue
        if a == "--report":
            next(it, None)
            continue
        out.append(a)
    return out


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
