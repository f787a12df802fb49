"""Command-line entry point.

Exit codes: 0 success, 1 a verify check failed, 2 invalid parameters,
3 methods disagree, 4 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from typing import Callable, Sequence

from . import characters as ch
from .cache import cache_key, resolve_cache
from .combinatorics import KTypeLabel, as_degree, as_rank, base_point, is_valid_ktype
from .errors import InvalidParameters, MethodDisagreement, SizeCapExceeded
from .geometry import DEFAULT_T_MAX_CAP, FaceSystem, export_geometry
from .multiplicity import (
    ALL_METHODS,
    Method,
    decompose_component,
    multiplicity,
    multiplicity_table,
    total_multiplicity,
)
from .oracle import DEFAULT_BASIS_CAP, harmonic_character_oracle, verify_lebruyn_procesi_freeness
from .serialization import encode_document, render_tsv, result_document

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_DISAGREE, EXIT_CAP = 0, 1, 2, 3, 4


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _label(args) -> KTypeLabel:
    r = as_rank(args.r)
    if args.z is None or args.s is None:
        raise InvalidParameters("--z and --s are required")
    label = KTypeLabel(args.z, args.s)
    if label.r != r:
        raise InvalidParameters(f"--s has {label.r} entries but --r is {r}")
    return label


def _degree(args) -> tuple[int, ...]:
    if args.n is None:
        raise InvalidParameters("--n is required")
    return as_degree(args.n, as_rank(args.r))


# commands: each returns (inputs, build) where build() makes the document


def cmd_mult(args):
    label = _label(args)
    if args.steps < 0:
        raise InvalidParameters("--steps must be >= 0")
    method = Method(args.method)
    inputs = {"r": label.r, "z": label.z, "s": label.s, "steps": args.steps,
              "method": str(method), "check": args.check, "total": args.total}

    def build():
        table = multiplicity_table(label, args.steps, method, cross_check=args.check)
        ray = table.ray
        rows = [
            {"t": t, "n": res.n, "multiplicity": res.value, "method": str(res.method),
             "reason": res.reason, "values": res.values, "agreement": res.agreement}
            for t, res in table
        ]
        outputs = {
            "label": {"z": label.z, "s": label.s, "valid": is_valid_ktype(label)},
            "ray": None if ray is None else {"base": ray.b, "first_valid_t": ray.first_valid_t},
            "rows": rows,
            "off_ray_multiplicity": table.off_ray,
        }
        if args.total:
            outputs["total"] = total_multiplicity(label, method)
        methods = [str(m) for m in ALL_METHODS] if args.check else [str(method)]
        return result_document("mult", inputs, outputs, methods, True if args.check else None)

    return inputs, build


def cmd_decompose(args):
    n = _degree(args)
    inputs = {"r": len(n), "n": n, "check": args.check}

    def build():
        comps = decompose_component(n)
        components = [
            {"z": lab.z, "s": lab.s, "multiplicity": m, "dimension": lab.dimension} for lab, m in comps.items()
        ]
        outputs = {
            "n": n,
            "z": next(iter(comps)).z if comps else None,
            "components": components,
            "total_dimension": sum(c["multiplicity"] * c["dimension"] for c in components),
        }
        methods = ["character_shell"]
        agreement = None
        if args.check:
            methods.append("character_recursive")
            recursive = ch.decompose_into_irreps(ch.char_H_recursive(n))
            shell = {lab.s: m for lab, m in comps.items()}
            agreement = dict(recursive.items()) == shell
            if not agreement:
                raise MethodDisagreement("H_n decomposition", n, {
                    "character_shell": sum(c["multiplicity"] * c["dimension"] for c in components),
                    "character_recursive": recursive.dimension(),
                })
        return result_document("decompose", inputs, outputs, methods, agreement)

    return inputs, build


def cmd_geometry(args):
    r = as_rank(args.r)
    if args.s is None:
        raise InvalidParameters("--s is required")
    s = as_degree(args.s, r)
    if args.steps < 0:
        raise InvalidParameters("--steps must be >= 0")
    if args.steps > args.t_cap:
        raise SizeCapExceeded("t_max", args.steps, args.t_cap)
    inputs = {"r": r, "s": s, "z": args.z, "steps": args.steps if args.z is not None else 0, "t_cap": args.t_cap}

    def build():
        ray = None
        if args.z is not None:
            if len(args.z) != r - 1:
                raise InvalidParameters(f"--z must have {r - 1} entries")
            ray = base_point(args.z, r)
            if ray is None:
                raise InvalidParameters(f"r={r} does not divide sum(z); there is no ray")
        return export_geometry(FaceSystem(s), ray, inputs["steps"], cap=args.t_cap)

    return inputs, build


def cmd_character(args):
    n = _degree(args)
    kind = args.kind
    method = args.char_method or ("product" if kind == "P" else "shell")
    valid = {"P": ("product", "double_sum"), "H": ("shell", "recursive", "oracle")}[kind]
    if method not in valid:
        raise InvalidParameters(f"method {method!r} does not apply to chi({kind}_n); choose from {valid}")
    inputs = {"r": len(n), "n": n, "kind": kind, "basis": args.basis, "method": method,
              "basis_cap": args.basis_cap}

    def build():
        poly = irreps = None
        if method == "product":
            poly = ch.char_P(n)
        elif method == "double_sum":
            irreps = ch.char_P_double_sum(n)
        elif method == "shell":
            irreps = ch.char_H_shell(n)
        elif method == "recursive":
            poly = ch.char_H_recursive(n)
        else:
            poly = harmonic_character_oracle(n, cap=args.basis_cap)
        outputs = {"n": n, "kind": kind, "basis": args.basis, "method": method}
        if args.basis == "laurent":
            poly = poly if poly is not None else irreps.rebuild()
            outputs["terms"] = [{"exponent": e, "coefficient": c} for e, c in poly.sorted_terms()]
            outputs["text"] = str(poly)
            outputs["dimension"] = poly.dimension()
        else:
            irreps = irreps if irreps is not None else ch.decompose_into_irreps(poly)
            outputs["irreps"] = [{"p": p, "multiplicity": m} for p, m in ch.iter_irreps(irreps)]
            outputs["dimension"] = irreps.dimension()
        return result_document("character", inputs, outputs, [method], None)

    return inputs, build


def _check(name: str, cases: Sequence, predicate: Callable) -> dict:
    count = 0
    for case in cases:
        count += 1
        ok, detail = predicate(case)
        if not ok:
            return {"name": name, "passed": False, "cases": count, "counterexample": detail}
    return {"name": name, "passed": True, "cases": count, "counterexample": None}


def cmd_verify(args):
    r = as_rank(args.r)
    if min(args.max_n, args.label_max, args.order, args.oracle_max) < 0:
        raise InvalidParameters("verify bounds must be >= 0")
    inputs = {"r": r, "oracle_max": args.oracle_max, "max_n": args.max_n, "label_max": args.label_max,
              "order": args.order, "basis_cap": args.basis_cap}

    def build():
        oracle_range = list(itertools.product(range(args.oracle_max + 1), repeat=r))

        def oracle_vs_shell(n):
            got = harmonic_character_oracle(n, cap=args.basis_cap)
            want = ch.char_H_shell(n).rebuild()
            return got == want, {"n": n, "oracle": str(got), "shell": str(want)}

        def freeness(n):
            return verify_lebruyn_procesi_freeness(n, cap=args.basis_cap), {"n": n}

        def quadrangle(case):
            label, n = case
            try:
                multiplicity(label, n, cross_check=True)
            except MethodDisagreement as exc:
                return False, {"z": label.z, "s": label.s, "n": n, "values": exc.values}
            return True, None

        def quad_cases():
            rng = range(-args.label_max, args.label_max + 1)
            for z in itertools.product(rng, repeat=r - 1):
                ray = base_point(z, r)
                if ray is None:
                    continue
                for _, n in ray.points(args.max_n):
                    if max(n) > args.max_n:
                        break
                    for s in itertools.product(range(args.label_max + 1), repeat=r):
                        label = KTypeLabel(z, s)
                        if is_valid_ktype(label):
                            yield label, n

        checks = [
            _check("oracle_vs_shell", oracle_range, oracle_vs_shell),
            _check("freeness", oracle_range, freeness),
            _check("method_quadrangle", quad_cases(), quadrangle),
            _check("generating_function", [args.order], lambda k: (ch.verify_gf_identity(k), {"order": k})),
        ]
        methods = [str(m) for m in ALL_METHODS] + ["oracle"]
        return result_document("verify", inputs, {"checks": checks}, methods,
                               all(c["passed"] for c in checks))

    return inputs, build


COMMANDS = {
    "mult": cmd_mult,
    "decompose": cmd_decompose,
    "geometry": cmd_geometry,
    "character": cmd_character,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="theta-harmonics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--r", type=int, required=True, help="number of 2x2 blocks (r >= 2)")
        if fmt:
            p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--cache", help="directory for cached result documents")
        p.add_argument("--no-cache", action="store_true", help="ignore any configured cache")

    p = sub.add_parser("mult", help="graded multiplicities of F_{z,s} along its ray")
    common(p)
    p.add_argument("--z", type=_int_list, required=True)
    p.add_argument("--s", type=_int_list, required=True)
    p.add_argument("--steps", type=int, default=10, help="last t in b + t*(1,...,1)")
    p.add_argument("--method", choices=[str(m) for m in Method], default=str(Method.COMBINATORIAL))
    p.add_argument("--check", action="store_true", help="run every method and require agreement")
    p.add_argument("--total", action="store_true", help="also report the sum over all degrees")

    p = sub.add_parser("decompose", help="K-type decomposition of H_n")
    common(p)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--check", action="store_true", help="compare against the invariant recursion")

    p = sub.add_parser("geometry", help="export M, S and shells as JSON")
    common(p, fmt=False)
    p.add_argument("--s", type=_int_list, required=True)
    p.add_argument("--z", type=_int_list, default=None, help="include shells along ray(z)")
    p.add_argument("--steps", type=int, default=0)
    p.add_argument("--t-cap", type=int, default=DEFAULT_T_MAX_CAP)

    p = sub.add_parser("character", help="chi(P_n) or chi(H_n)")
    common(p)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--kind", choices=("P", "H"), default="H")
    p.add_argument("--basis", choices=("laurent", "irreps"), default="irreps")
    p.add_argument("--method", dest="char_method", default=None,
                   help="P: product|double_sum; H: shell|recursive|oracle")
    p.add_argument("--basis-cap", type=int, default=DEFAULT_BASIS_CAP)

    p = sub.add_parser("verify", help="cross-check all methods and the differential oracle")
    common(p)
    p.add_argument("--oracle-max", type=int, default=2, help="oracle checks cover n in [0, k]^r")
    p.add_argument("--max-n", type=int, default=6, help="quadrangle degrees have entries <= k")
    p.add_argument("--label-max", type=int, default=3, help="quadrangle labels have |entries| <= k")
    p.add_argument("--order", type=int, default=10, help="generating-function order")
    p.add_argument("--basis-cap", type=int, default=DEFAULT_BASIS_CAP)
    return parser


def render(doc: dict, fmt: str) -> str:
    if fmt == "json" or doc.get("command") is None:
        return encode_document(doc)
    return render_tsv(doc)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "json")
    try:
        inputs, build = COMMANDS[args.command](args)
        cache = resolve_cache(args.cache, args.no_cache)
        key = cache_key(args.command, inputs)
        doc = cache.get(key) if cache else None
        if doc is None:
            doc = build()
            if cache:
                cache.put(key, doc)
        text = render(doc, fmt)
    except InvalidParameters as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except MethodDisagreement as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DISAGREE
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CAP
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "verify" and not doc["agreement"]:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
