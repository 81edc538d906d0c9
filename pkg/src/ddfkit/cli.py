"""Command-line front end.

Subcommands: construct, verify, period, feasible, expand, split, catalog.
Families travel as JSON; exit codes are 0 for success/pass, 1 for domain
failures (a named library error or a failed verification), 2 for usage or
parse problems.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import factorize, pisano_data, pisano_period
from .composition import chain_from_subgroups, ddf_for_group, standard_chain
from .constructions import (
    cyclic_abelian_ddf,
    ea_product_ddf,
    heisenberg_ddf,
    patterned_starter,
    pisano_ddf,
    q4_order3_ddf,
    roots_of_unity_ddf,
)
from .errors import DdfError
from .ferrero import DiffFamily, feasible_parameters, split_family
from .groups import AbelianProduct, element_from_json, group_from_json
from .verify import (
    FamilyReport,
    check_difference_family,
    expand_to_nrb,
    is_disjoint,
    is_partition_of_nonzero,
    verify_2_design,
    verify_near_resolution,
)

USAGE_EXIT = 2
DOMAIN_EXIT = 1


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out_path: "str | None") -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _element_str(e) -> str:
    if len(e) == 2 and all(0 <= x <= 9 for x in e):
        return f"{e[0]}{e[1]}"
    if len(e) == 1:
        return str(e[0])
    return "(" + ",".join(str(x) for x in e) + ")"


def _pretty_family(fam: DiffFamily) -> str:
    lines = [f"({fam.v},{fam.k},{fam.lam}) family, {len(fam.blocks)} blocks"]
    for i, block in enumerate(fam.blocks):
        lines.append(f"B{i} = {{" + ",".join(_element_str(e) for e in block) + "}")
    return "\n".join(lines) + "\n"


def _parse_int_list(raw: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise SystemExit(USAGE_EXIT)


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _load_family(path: str) -> DiffFamily:
    data = _load_json(path)
    try:
        return DiffFamily.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        print(f"bad family file {path}: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _require(args, names: list[str]) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            print(f"--method {args.method} needs --{name.replace('_', '-')}", file=sys.stderr)
            raise SystemExit(USAGE_EXIT)


def cmd_construct(args) -> int:
    meta: dict = {"method": args.method}
    if args.method == "roots":
        _require(args, ["q", "k"])
        fam = roots_of_unity_ddf(args.q, args.k)
        meta.update(q=args.q, k=args.k)
    elif args.method == "ea":
        _require(args, ["moduli", "k"])
        qs = _parse_int_list(args.moduli)
        fam = ea_product_ddf(qs, args.k)
        meta.update(prime_powers=qs, k=args.k)
    elif args.method == "cyclic":
        _require(args, ["moduli", "k"])
        mods = _parse_int_list(args.moduli)
        fam = cyclic_abelian_ddf(mods, args.k)
        meta.update(moduli=mods, k=args.k)
    elif args.method == "pisano":
        _require(args, ["p", "k"])
        data = pisano_data(args.p)
        fam = pisano_ddf(args.p, args.k)
        meta.update(p=args.p, k=args.k, pi_p=data.pi_p, pi_p2=data.pi_p2, phi=data.phi.rows())
    elif args.method == "q4":
        _require(args, ["q"])
        fam = q4_order3_ddf(args.q)
        meta.update(q=args.q)
    elif args.method == "heisenberg":
        _require(args, ["q"])
        if args.units is not None:
            units = _parse_int_list(args.units)
            fam = heisenberg_ddf(args.q, units=units)
            meta.update(q=args.q, units=units)
        else:
            _require(args, ["k"])
            fam = heisenberg_ddf(args.q, k=args.k)
            meta.update(q=args.q, k=args.k)
    elif args.method == "starter":
        _require(args, ["moduli"])
        mods = _parse_int_list(args.moduli)
        fam = patterned_starter(AbelianProduct(mods))
        meta.update(moduli=mods)
    elif args.method == "compose":
        _require(args, ["job"])
        job = _load_json(args.job)
        try:
            G = group_from_json(job["group"])
            k = int(job["k"])
            chain_spec = job.get("chain", "standard")
        except (KeyError, TypeError, ValueError) as exc:
            print(f"bad job file: {exc}", file=sys.stderr)
            return USAGE_EXIT
        if chain_spec == "standard":
            chain = standard_chain(G)
        else:
            chain = chain_from_subgroups(
                G, [[element_from_json(e) for e in level] for level in chain_spec]
            )
        fam = ddf_for_group(G, chain, k)
        meta.update(k=k, order=G.order)
    else:  # argparse choices make this unreachable
        return USAGE_EXIT

    # Families are re-verified by their constructors; this is the output
    # gate making the emitted claim independent of the construction path.
    report = check_difference_family(fam.group, fam.blocks, fam.lam)
    if not report.passed:
        print("constructed family failed re-verification", file=sys.stderr)
        return DOMAIN_EXIT
    payload = fam.to_json()
    payload["meta"] = meta
    if args.output:
        _emit(_dump(payload), args.output)
    if args.pretty:
        sys.stdout.write(_pretty_family(fam))
    elif not args.output:
        sys.stdout.write(_dump(payload))
    return 0


def _mode_report(fam: DiffFamily, mode: str, lam: int) -> FamilyReport:
    base = check_difference_family(fam.group, fam.blocks, lam)
    violations = list(base.violations)
    if mode in ("ddf", "pdf") and not is_disjoint(fam.blocks):
        violations.append("blocks are not pairwise disjoint")
    if mode == "ddf" and lam == fam.k - 1:
        if not is_partition_of_nonzero(fam.group, fam.blocks):
            violations.append("blocks do not partition the non-zero elements")
    if mode == "pdf":
        covered = sum(len(b) for b in fam.blocks)
        union = {e for b in fam.blocks for e in b}
        if covered != fam.group.order or union != set(fam.group.elements()):
            violations.append("blocks do not partition the whole group")
    return FamilyReport(
        passed=base.passed and len(violations) == len(base.violations),
        lam=lam,
        census_min=base.census_min,
        census_max=base.census_max,
        violations=tuple(violations),
    )


def cmd_verify(args) -> int:
    fam = _load_family(args.family)
    lam = args.lam if args.lam is not None else fam.lam
    report = _mode_report(fam, args.as_kind, lam)
    sys.stdout.write(_dump(report.to_json()))
    return 0 if report.passed else DOMAIN_EXIT


def cmd_period(args) -> int:
    print(pisano_period(args.n))
    return 0


def cmd_feasible(args) -> int:
    print("true" if feasible_parameters(args.v, args.k) else "false")
    return 0


def cmd_expand(args) -> int:
    fam = _load_family(args.family)
    design = expand_to_nrb(fam.group, fam, side=args.side)
    nr = verify_near_resolution(design)
    two = verify_2_design(design, fam.k, fam.k - 1)
    payload = {
        "design": design.to_json(),
        "near_resolvable": nr,
        "two_design": two,
    }
    _emit(_dump(payload), args.output)
    return 0 if nr and two else DOMAIN_EXIT


def cmd_split(args) -> int:
    fam = _load_family(args.family)
    first, second = split_family(fam.group, fam)
    payload = {"first": first.to_json(), "second": second.to_json()}
    if args.output:
        _emit(_dump(payload), args.output)
    if args.pretty:
        sys.stdout.write(_pretty_family(first))
        sys.stdout.write(_pretty_family(second))
    elif not args.output:
        sys.stdout.write(_dump(payload))
    return 0


def _exact_root(v: int, n: int) -> "int | None":
    r = round(v ** (1 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 2 and cand**n == v:
            return cand
    return None


def _catalog_attempts(v: int, k: int):
    """Construction attempts applicable to the (v, k) cell."""
    if feasible_parameters(v, k):
        qs = sorted(p**e for p, e in factorize(v).items())
        yield "ea", lambda: ea_product_ddf(qs, k)
    if k == 2 and v % 2 == 1:
        yield "starter", lambda: patterned_starter(AbelianProduct((v,)))
    cube = _exact_root(v, 3)
    if cube is not None and k % 2 == 1 and (cube - 1) % k == 0:
        yield "heisenberg", lambda: heisenberg_ddf(cube, k=k)
    quart = _exact_root(v, 4)
    if quart is not None:
        if k == 3 and quart % 3 != 0:
            yield "q4", lambda: q4_order3_ddf(quart)
        if quart != 5:
            try:
                if pisano_data(quart).pi_p % k == 0:
                    yield "pisano", lambda: pisano_ddf(quart, k)
            except (DdfError, ValueError):
                pass


def cmd_catalog(args) -> int:
    lines = ["method\tv\tk\tverified\tblocks\tseconds"]
    for v in range(2, args.vmax + 1):
        for k in range(2, args.kmax + 1):
            for name, attempt in _catalog_attempts(v, k):
                start = time.perf_counter()
                try:
                    fam = attempt()
                    ok = True
                    nblocks = len(fam.blocks)
                except (DdfError, ValueError):
                    ok, nblocks = False, 0
                elapsed = time.perf_counter() - start
                lines.append(f"{name}\t{v}\t{k}\t{str(ok).lower()}\t{nblocks}\t{elapsed:.3f}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddfkit",
        description="Construct and verify disjoint (v,k,k-1) difference families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a verified family and emit its JSON")
    c.add_argument(
        "--method",
        required=True,
        choices=["roots", "ea", "cyclic", "pisano", "q4", "heisenberg", "starter", "compose"],
    )
    c.add_argument("--p", type=int, help="prime (pisano)")
    c.add_argument("--q", type=int, help="prime power (roots, q4, heisenberg)")
    c.add_argument("--k", type=int, help="block size")
    c.add_argument("--moduli", help="comma-separated list (ea, cyclic, starter)")
    c.add_argument("--units", help="comma-separated unit codes (heisenberg)")
    c.add_argument("--job", help="JSON job file (compose)")
    c.add_argument("-o", "--output", help="write JSON here instead of stdout")
    c.add_argument("--pretty", action="store_true", help="print compact xy block notation")
    c.set_defaults(func=cmd_construct)

    vf = sub.add_parser("verify", help="check a family file and emit a report")
    vf.add_argument("family")
    vf.add_argument("--as", dest="as_kind", choices=["df", "ddf", "pdf"], default="ddf")
    vf.add_argument("--lambda", dest="lam", type=int, help="override the declared multiplicity")
    vf.set_defaults(func=cmd_verify)

    pe = sub.add_parser("period", help="Fibonacci period modulo n")
    pe.add_argument("n", type=int)
    pe.set_defaults(func=cmd_period)

    fe = sub.add_parser("feasible", help="can a fixed-point-free pair of order k exist at order v")
    fe.add_argument("v", type=int)
    fe.add_argument("k", type=int)
    fe.set_defaults(func=cmd_feasible)

    ex = sub.add_parser("expand", help="expand a family into its translate design")
    ex.add_argument("family")
    ex.add_argument("--side", choices=["right", "left"], default="right")
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_expand)

    sp = sub.add_parser("split", help="split a family into two half-multiplicity families")
    sp.add_argument("family")
    sp.add_argument("-o", "--output")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=cmd_split)

    ca = sub.add_parser("catalog", help="attempt constructions over a parameter range")
    ca.add_argument("--vmax", type=int, required=True)
    ca.add_argument("--kmax", type=int, default=12)
    ca.add_argument("-o", "--output")
    ca.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DdfError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except (TypeError, ValueError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return DOMAIN_EXIT


if __name__ == "__main__":
    sys.exit(main())
