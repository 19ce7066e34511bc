"""Command line front end.

Subcommands: field, critgroup, smithgroup, prank, trees, blocks,
verify, compare, export.  Output is JSON (sorted keys, so identical
invocations are byte identical) or a short text rendering.  Exit codes:
0 success, 1 verification failure, 2 invalid parameters.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from peisert import compare as cmp
from peisert import critical
from peisert.critical import VerificationError, factor_prime_power
from peisert.digits import CarryContext
from peisert.field import FieldTable, is_prime
from peisert.galois_ring import GaloisRing
from peisert.graphs import (
    adjacency_matrix,
    generalized,
    laplacian,
    matrix_market_string,
)
from peisert.snf import PrecisionError, rank_mod_p

SNF_SIZE_GUARD = 400
FORMULA_SIZE_GUARD = 10**7
PRANK_MATRIX_GUARD = 1024


def _add_common(sub):
    sub.add_argument("--q", type=int, help="field size q (prime power)")
    sub.add_argument("--p", type=int, help="characteristic, used with --t")
    sub.add_argument("--t", type=int, help="half the extension degree, q = p^(2t)")
    sub.add_argument("--graph", choices=("peisert", "paley"), default="peisert")
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--out", help="write output to this path instead of stdout")
    sub.add_argument("--jobs", type=int, default=1, help="worker cap for parallel suites")
    sub.add_argument("--force", action="store_true", help="ignore size guards")
    sub.add_argument("--precision", type=int, help="Galois ring precision override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peisert",
        description="Exact Smith/critical group computations for Peisert and Paley graphs",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name, descr in (
        ("field", "construct GF(p^n) and report its tables"),
        ("critgroup", "critical group of the chosen graph"),
        ("smithgroup", "Smith group of the adjacency matrix"),
        ("prank", "p-rank of the Peisert Laplacian"),
        ("trees", "number of spanning trees"),
        ("blocks", "per-block elementary divisor reports"),
        ("verify", "run a named verification suite"),
        ("compare", "run the full q = p^2 Paley vs Peisert suite"),
        ("export", "write a matrix in Matrix Market format"),
    ):
        sub = subs.add_parser(name, help=descr)
        _add_common(sub)
        if name in ("critgroup", "smithgroup"):
            sub.add_argument("--method", choices=("formula", "snf", "both"), default="formula")
        if name == "critgroup":
            sub.add_argument("--blocks", action="store_true", dest="with_blocks",
                             help="include per-block reports in the output")
        if name == "verify":
            sub.add_argument("--suite", required=True, choices=(
                "carries", "stickelberger", "action", "blocks", "berndt", "canon", "m0"))
        if name == "export":
            sub.add_argument("--matrix", required=True,
                             help="adjacency | laplacian | generalized:a,b,c")
            sub.add_argument("--matrix-format", dest="matrix_format",
                             choices=("matrixmarket",), default="matrixmarket")
    return parser


def _resolve_q(args) -> tuple[int, int, int]:
    """(q, p, m) from --q or --p/--t."""
    if args.q is not None:
        if args.p is not None or args.t is not None:
            raise ValueError("give either --q or --p/--t, not both")
        p, m = factor_prime_power(args.q)
        return args.q, p, m
    if args.p is None or args.t is None:
        raise ValueError("either --q or both --p and --t are required")
    if not is_prime(args.p):
        raise ValueError(f"p = {args.p} is not prime")
    if args.t < 1:
        raise ValueError("t must be positive")
    return args.p ** (2 * args.t), args.p, 2 * args.t


def _require_peisert_order(q, p, m):
    if p % 4 != 3 or m % 2:
        raise ValueError(f"q = {q} is not a Peisert order (need p = 3 mod 4 and q = p^(2t))")


def _context(q, p, m) -> CarryContext:
    _require_peisert_order(q, p, m)
    return CarryContext(p, m // 2)


def _ring(args, q, p, m) -> tuple[FieldTable, GaloisRing]:
    field = FieldTable(p, m)
    k = args.precision if args.precision else m + 2
    return field, GaloisRing(field, k)


def _emit(args, payload: dict) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_text(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(payload, indent=0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1).rstrip("\n"))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines) + "\n"


def _group_payload(group) -> dict:
    return {"invariant_factors": [int(d) for d in group.invariant_factors]}


def _divisor_payload(group) -> dict:
    return {
        str(p): {str(e): int(c) for e, c in sorted(exps.items())}
        for p, exps in group.elementary_divisors().items()
    }


def _block_payload(blocks) -> list[dict]:
    return [dataclasses.asdict(b) for b in blocks]


def _checks_payload(checks) -> dict:
    return {
        "checks": len(checks),
        "failures": [c for c in checks if not c["ok"]],
    }


# -- subcommands -------------------------------------------------------


def _cmd_field(args) -> int:
    q, p, m = _resolve_q(args)
    field = FieldTable(p, m)
    payload = {
        "p": p, "n": m, "q": q,
        "modulus": field.modulus,
        "beta": field.beta,
    }
    if args.graph == "peisert" and (p % 4 != 3 or m % 2):
        payload["connection_set"] = None
    else:
        payload["connection_set"] = list(field.connection_set(args.graph))
    _emit(args, payload)
    return 0


def _guard_snf(args, q):
    if q > SNF_SIZE_GUARD and not args.force:
        raise ValueError(
            f"q = {q} exceeds the matrix-path guard of {SNF_SIZE_GUARD}; pass --force")


def _cmd_critgroup(args) -> int:
    q, p, m = _resolve_q(args)
    if q > FORMULA_SIZE_GUARD:
        raise ValueError(f"q = {q} exceeds the size cap {FORMULA_SIZE_GUARD}")
    if args.method in ("snf", "both"):
        _guard_snf(args, q)
    if args.graph == "peisert":
        _require_peisert_order(q, p, m)
    elif q % 4 != 1:
        raise ValueError("paley graphs need q = 1 mod 4")
    collect = getattr(args, "with_blocks", False) or q <= 2050
    group, details = critical.critical_group(
        q, kind=args.graph, method=args.method, collect_blocks=collect)
    payload = {
        "q": q,
        "graph": args.graph,
        "method": args.method,
        "critical_group": _group_payload(group),
        "elementary_divisors": _divisor_payload(group),
        "p_rank": details["p_rank"],
        "spanning_trees": str(critical.spanning_trees(q)),
    }
    if collect and details.get("blocks") is not None:
        payload["blocks"] = _block_payload(details["blocks"])
    _emit(args, payload)
    return 0


def _cmd_smithgroup(args) -> int:
    q, p, m = _resolve_q(args)
    group = None
    if args.method in ("formula", "both"):
        _require_peisert_order(q, p, m)
        group = critical.smith_group_formula(q)
    if args.method in ("snf", "both"):
        _guard_snf(args, q)
        if q % 4 != 1:
            raise ValueError("need q = 1 mod 4")
        field = FieldTable(p, m)
        snf_group, _ = critical.smith_group_snf(field, args.graph)
        if group is not None and snf_group != group:
            raise VerificationError(
                f"formula and matrix paths disagree: {group!r} vs {snf_group!r}")
        group = snf_group if group is None else group
    payload = {
        "q": q,
        "graph": args.graph,
        "method": args.method,
        "smith_group": _group_payload(group),
        "elementary_divisors": _divisor_payload(group),
    }
    _emit(args, payload)
    return 0


def _cmd_prank(args) -> int:
    q, p, m = _resolve_q(args)
    ctx = _context(q, p, m)
    formula = critical.p_rank_formula(p, ctx.t)
    payload = {"q": q, "p": p, "p_rank_formula": formula}
    agree = True
    if q <= PRANK_MATRIX_GUARD or args.force:
        field = FieldTable(p, m)
        L = laplacian(adjacency_matrix(field, args.graph))
        matrix_rank = rank_mod_p(L, p)
        payload["p_rank_matrix"] = matrix_rank
        agree = matrix_rank == formula
        payload["agree"] = agree
    _emit(args, payload)
    return 0 if agree else 1


def _cmd_trees(args) -> int:
    q, _, _ = _resolve_q(args)
    if q % 4 != 1:
        raise ValueError("need q = 1 mod 4")
    _emit(args, {"q": q, "spanning_trees": str(critical.spanning_trees(q))})
    return 0


def _cmd_blocks(args) -> int:
    q, p, m = _resolve_q(args)
    ctx = _context(q, p, m)
    _, blocks = critical.p_part_profile(
        ctx, ring_factory=critical.default_ring_factory(ctx), collect_blocks=True)
    _emit(args, {"q": q, "p": p, "t": ctx.t, "blocks": _block_payload(blocks)})
    return 0


def _cmd_verify(args) -> int:
    q, p, m = _resolve_q(args)
    ctx = _context(q, p, m)
    suite = args.suite
    if suite == "carries":
        checks = cmp.verify_carries(ctx)
    else:
        field, ring = _ring(args, q, p, m)
        if suite == "stickelberger":
            checks = cmp.verify_stickelberger(ctx, ring)
        elif suite == "action":
            checks = cmp.verify_action_formula(field, ring)
        elif suite == "blocks":
            checks = _verify_blocks(ctx, ring)
            checks.extend(cmp.verify_block_displays(ctx, field, ring))
        elif suite == "berndt":
            checks = cmp.verify_berndt(ctx, field, ring)
        elif suite == "canon":
            checks = cmp.verify_canonical_blocks(ctx, field, ring)
        elif suite == "m0":
            checks = cmp.verify_m0_basis_change(ctx, field, ring)
        else:  # pragma: no cover
            raise ValueError(f"unknown suite {suite!r}")
    payload = {"q": q, "suite": suite}
    payload.update(_checks_payload(checks))
    _emit(args, payload)
    return 0 if not payload["failures"] else 1


def _verify_blocks(ctx, ring) -> list[dict]:
    checks = []
    for i in range(1, ctx.r):
        formula = critical.block_divisors_formula(ctx, i, ring_factory=lambda: ring)
        local = critical.block_divisors_local(ctx, i, ring)
        checks.append({
            "name": f"block formula vs local i={i}",
            "ok": sorted(formula.exponents) == sorted(local.exponents),
            "formula": list(formula.exponents),
            "local": list(local.exponents),
        })
    try:
        critical.m0_divisors(ctx, ring)
        checks.append({"name": "m0 local reduction", "ok": True})
    except VerificationError as exc:
        checks.append({"name": "m0 local reduction", "ok": False, "detail": str(exc)})
    return checks


def _cmd_compare(args) -> int:
    if args.q is not None:
        q, p, m = _resolve_q(args)
        if m != 2:
            raise ValueError("the comparison suite needs q = p^2")
    elif args.p is not None:
        if args.t not in (None, 1):
            raise ValueError("compare runs at q = p^2; --t is not accepted")
        p = args.p
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        q = p * p
    else:
        raise ValueError("compare needs --p P (runs at q = p^2)")
    _require_peisert_order(q, p, 2)
    ctx = CarryContext(p, 1)
    field, ring = _ring(args, q, p, 2)
    k = (q - 1) // 2
    samples = list(cmp.DEFAULT_GRID) + [(-1, k, 0)]  # the Laplacian pair
    checks = cmp.compare_generalized(field, samples=samples)
    checks.extend(cmp.verify_canonical_blocks(ctx, field, ring))
    checks.extend(cmp.verify_m0_basis_change(ctx, field, ring))
    checks.extend(cmp.verify_berndt(ctx, field, ring))
    payload = {"q": q, "p": p}
    payload.update(_checks_payload(checks))
    _emit(args, payload)
    return 0 if not payload["failures"] else 1


def _cmd_export(args) -> int:
    q, p, m = _resolve_q(args)
    field = FieldTable(p, m)
    A = adjacency_matrix(field, args.graph)
    spec = args.matrix
    if spec == "adjacency":
        M = A
    elif spec == "laplacian":
        M = laplacian(A)
    elif spec.startswith("generalized:"):
        try:
            a, b, c = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError as exc:
            raise ValueError("expected generalized:a,b,c with integers") from exc
        M = generalized(A, a, b, c)
    else:
        raise ValueError(f"unknown matrix kind {spec!r}")
    text = matrix_market_string(M)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "field": _cmd_field,
    "critgroup": _cmd_critgroup,
    "smithgroup": _cmd_smithgroup,
    "prank": _cmd_prank,
    "trees": _cmd_trees,
    "blocks": _cmd_blocks,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return _COMMANDS[args.command](args)
    except (VerificationError, PrecisionError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
