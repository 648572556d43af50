"""Command-line front end: build groups and kernels, run verification suites."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import groups, identities, representations, star, su2

__all__ = ["main", "run"]

_CHECKS = ("roundtrip", "closure", "assoc") + identities.CHARACTER_CHECKS

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_USAGE = 2
_EXIT_IO = 3


class _IoFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# deterministic machine output: floats carry 17 significant digits

def _fmt_float(x: float) -> str:
    return "%.17g" % x


def _emit(value, out: list) -> None:
    if isinstance(value, bool):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_fmt_float(value))
    elif isinstance(value, dict):
        out.append("{")
        for idx, (key, item) in enumerate(value.items()):
            if idx:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _emit(item, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for idx, item in enumerate(value):
            if idx:
                out.append(", ")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def machine_dumps(doc) -> str:
    out: list = []
    _emit(doc, out)
    out.append("\n")
    return "".join(out)


def _write_output(doc, args, stream) -> None:
    text = machine_dumps(doc)
    path = getattr(args, "output", None)
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise _IoFailure(f"cannot write {path}: {exc}") from exc
    else:
        stream.write(text)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _IoFailure(f"cannot read {path}: {exc}") from exc


def _fmt_c(z: complex) -> str:
    if abs(z.imag) < 5e-13:
        return "%g" % z.real
    return "%g%+gj" % (z.real, z.imag)


def _print_reports(reports, fmt, stream, header: dict) -> None:
    if fmt == "machine":
        doc = dict(header)
        doc["reports"] = [r.to_doc() for r in reports]
        doc["passed"] = all(r.passed for r in reports)
        stream.write(machine_dumps(doc))
        return
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        scheme = f" scheme={r.scheme}" if r.scheme else ""
        extra = ""
        if r.alt_prefactor is not None:
            extra = (
                f" (prefactor {r.prefactor:g}; alternative {r.alt_prefactor:g}"
                f" gives residual {r.alt_prefactor_residual:.3e})"
            )
        stream.write(
            f"{status} {r.name} group={r.group} irrep={r.irrep}{scheme} "
            f"residual={r.max_residual:.3e} tol={r.tolerance:g}{extra}\n"
        )
        for note in r.notes:
            stream.write(f"     note: {note}\n")


# ---------------------------------------------------------------------------
# argument helpers

def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _csv_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _csv_nodes(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated node counts")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def _add_common(p: argparse.ArgumentParser, tol: float = 1e-10, trials: int = 100) -> None:
    p.add_argument("--tol", type=_positive_float, default=tol, help="tolerance")
    p.add_argument("--trials", type=_positive_int, default=trials, help="random trials")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument(
        "--format", choices=("human", "machine"), default="human", dest="fmt",
        help="output format",
    )


def _matrix_from_doc(doc: dict) -> np.ndarray:
    mat = doc["matrix"]
    return np.array([[complex(re, im) for re, im in row] for row in mat])


def _matrix_to_doc(m: np.ndarray) -> dict:
    return {"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m]}


# ---------------------------------------------------------------------------
# command implementations

def _cmd_groups(args) -> int:
    if args.action == "list":
        doc = {
            "command": "groups-list",
            "groups": [
                {"name": name, "order": groups.builtin_group(name).order}
                for name in groups.BUILTIN_GROUPS
            ],
        }
        if args.fmt == "machine":
            sys.stdout.write(machine_dumps(doc))
        else:
            for entry in doc["groups"]:
                sys.stdout.write(f"{entry['name']}  order {entry['order']}\n")
        return _EXIT_OK
    g = groups.builtin_group(args.group)
    if getattr(args, "output", None):
        _write_output(groups.group_to_doc(g), args, sys.stdout)
        return _EXIT_OK
    if args.fmt == "machine":
        doc = {
            "command": "groups-show",
            "group": groups.group_to_doc(g),
            "identity": g.identity,
            "inverses": [int(x) for x in g.inverses],
            "classes": [list(c) for c in g.classes],
        }
        sys.stdout.write(machine_dumps(doc))
        return _EXIT_OK
    sys.stdout.write(f"{g.name}  order {g.order}  identity {g.names[g.identity]}\n")
    width = max(len(n) for n in g.names)
    header = " ".join(n.rjust(width) for n in g.names)
    sys.stdout.write(" " * (width + 2) + header + "\n")
    for i in range(g.order):
        row = " ".join(g.names[g.table[i, j]].rjust(width) for j in range(g.order))
        sys.stdout.write(f"{g.names[i].rjust(width)}  {row}\n")
    classes = "  ".join("{" + ",".join(g.names[x] for x in c) + "}" for c in g.classes)
    sys.stdout.write(f"classes: {classes}\n")
    return _EXIT_OK


def _cmd_character_table(args) -> int:
    g = groups.builtin_group(args.group)
    irreps = representations.builtin_irreps(args.group)
    table = representations.character_table(g, irreps)
    doc = {
        "command": "character-table",
        "group": g.name,
        "labels": list(table.labels),
        "elements": list(g.names),
        "classes": [list(c) for c in g.classes],
        "rows": [
            [[float(z.real), float(z.imag)] for z in row] for row in table.rows
        ],
    }
    if args.fmt == "machine" or getattr(args, "output", None):
        _write_output(doc, args, sys.stdout)
        return _EXIT_OK
    width = max(len(n) for n in g.names)
    width = max(width, 6)
    label_w = max(len(lab) for lab in table.labels)
    sys.stdout.write(" " * (label_w + 2) + " ".join(n.rjust(width) for n in g.names) + "\n")
    for lab, row in zip(table.labels, table.rows):
        cells = " ".join(_fmt_c(z).rjust(width) for z in row)
        sys.stdout.write(f"{lab.rjust(label_w)}  {cells}\n")
    return _EXIT_OK


def _build_pair(group_name: str, label: str, scheme: str):
    r = representations.builtin_irrep(group_name, label)
    return r, star.quantizer_pair(r, scheme)


def _cmd_kernel(args) -> int:
    r, pair = _build_pair(args.group, args.irrep, args.scheme)
    if args.k_elem is not None:
        if not 0 <= args.k_elem < r.group.order:
            raise ValueError(f"--k-elem index {args.k_elem} out of range for order {r.group.order}")
        kernel = star.k_deformed_kernel(pair, r.matrices[args.k_elem])
    elif args.k_file:
        kernel = star.k_deformed_kernel(pair, _matrix_from_doc(_load_json(args.k_file)))
    else:
        kernel = star.star_kernel(pair)
    doc = star.kernel_to_doc(kernel, layout=args.layout)
    doc["irrep"] = args.irrep
    _write_output(doc, args, sys.stdout)
    return _EXIT_OK


def _cmd_symbol(args) -> int:
    r, pair = _build_pair(args.group, args.irrep, args.scheme)
    if args.matrix_file:
        a = _matrix_from_doc(_load_json(args.matrix_file))
    else:
        a = np.eye(r.dim, dtype=complex)
    values = star.symbol(pair, a)
    doc = star.function_to_doc(values)
    if args.fmt == "machine" or getattr(args, "output", None):
        _write_output(doc, args, sys.stdout)
        return _EXIT_OK
    for name, v in zip(r.group.names, values):
        sys.stdout.write(f"{name}: {_fmt_c(v)}\n")
    return _EXIT_OK


def _cmd_reconstruct(args) -> int:
    r, pair = _build_pair(args.group, args.irrep, args.scheme)
    values = star.function_from_doc(_load_json(args.function_file))
    a = star.reconstruct(pair, values)
    doc = _matrix_to_doc(a)
    if args.fmt == "machine" or getattr(args, "output", None):
        _write_output(doc, args, sys.stdout)
        return _EXIT_OK
    for row in a:
        sys.stdout.write("  ".join(_fmt_c(z) for z in row) + "\n")
    return _EXIT_OK


def _cmd_verify(args) -> int:
    r = representations.builtin_irrep(args.group, args.irrep)
    checks = _CHECKS if args.check == "all" else (args.check,)
    reports = identities.standard_checks(
        r, tol=args.tol, trials=args.trials, seed=args.seed, checks=checks
    )
    header = {
        "command": "verify",
        "group": groups.builtin_group(args.group).name,
        "irrep": args.irrep,
        "tolerance": args.tol,
        "trials": args.trials,
        "seed": args.seed,
    }
    _print_reports(reports, args.fmt, sys.stdout, header)
    return _EXIT_OK if all(r.passed for r in reports) else _EXIT_CHECK_FAILED


_REFERENCE_KERNELS = ("pointwise", "convolution")


def _named_kernel(group_name: str, name: str, scheme: str) -> star.StarKernel:
    g = groups.builtin_group(group_name)
    if name in _REFERENCE_KERNELS:
        return star.reference_kernels(g)[name]
    r = representations.builtin_irrep(group_name, name)
    return star.star_kernel(star.quantizer_pair(r, scheme))


def _cmd_compat(args) -> int:
    k1 = _named_kernel(args.group, args.kernel1, args.scheme)
    k2 = _named_kernel(args.group, args.kernel2, args.scheme)
    reports = identities.check_compatibility(
        k1, k2, args.lambdas, trials=args.trials, seed=args.seed, tol=args.tol
    )
    reports = tuple(replace(r, irrep=f"{args.kernel1}+{args.kernel2}") for r in reports)
    header = {
        "command": "compat",
        "group": groups.builtin_group(args.group).name,
        "kernels": [args.kernel1, args.kernel2],
        "lambdas": list(args.lambdas),
        "tolerance": args.tol,
        "trials": args.trials,
        "seed": args.seed,
    }
    _print_reports(reports, args.fmt, sys.stdout, header)
    return _EXIT_OK if all(r.passed for r in reports) else _EXIT_CHECK_FAILED


def _cmd_verify_kernel(args) -> int:
    kernel = star.kernel_from_doc(_load_json(args.path))
    report = identities.verify_associativity(
        kernel, trials=args.trials, seed=args.seed, tol=args.tol
    )
    header = {
        "command": "verify-kernel",
        "path": args.path,
        "tolerance": args.tol,
        "trials": args.trials,
        "seed": args.seed,
    }
    _print_reports([report], args.fmt, sys.stdout, header)
    return _EXIT_OK if report.passed else _EXIT_CHECK_FAILED


def _su2_report(name, scheme, tol, residual) -> identities.IdentityReport:
    return identities.IdentityReport(
        name=name,
        group="SU2",
        irrep="spin-1/2",
        scheme=scheme,
        tolerance=tol,
        max_residual=residual,
        passed=residual <= tol,
    )


def su2_verification_reports(
    nodes=(8, 8, 8), trials: int = 50, seed: int = 0, tol: float = 1e-10
) -> tuple[identities.IdentityReport, ...]:
    """Volume, orthogonality, round-trip, closure and Lie-kernel checks."""
    grid = su2.haar_grid(*nodes)
    rng = np.random.default_rng(seed)
    reports = [
        _su2_report("volume", None, tol, abs(grid.volume - su2.VOLUME)),
        _su2_report("orthogonality", None, tol, su2.haar_orthogonality_residual(grid)),
    ]
    for scheme in ("primary", "dual"):
        worst = 0.0
        mats = identities.random_matrices(rng, trials, 2)
        for a in mats:
            f = su2.su2_symbol_samples(a, grid, scheme)
            back = su2.su2_reconstruct(f, grid, scheme)
            worst = max(worst, float(np.abs(back - a).max()))
        reports.append(_su2_report("roundtrip", scheme, tol, worst))
    probes = [su2.SU2_IDENTITY] + [
        su2.su2_element(*rng.uniform(0.0, 2.0, 3)) for _ in range(2)
    ]
    for scheme in ("primary", "dual"):
        worst = 0.0
        a_mats = identities.random_matrices(rng, trials, 2)
        b_mats = identities.random_matrices(rng, trials, 2)
        for a, b in zip(a_mats, b_mats):
            f1 = su2.su2_symbol_samples(a, grid, scheme)
            f2 = su2.su2_symbol_samples(b, grid, scheme)
            for g in probes:
                got = su2.su2_star(f1, f2, g, grid, scheme)
                want = su2.su2_symbol(a @ b, g, scheme)
                worst = max(worst, abs(got - want))
        reports.append(_su2_report("closure", scheme, tol, worst))
    worst = 0.0
    for _ in range(trials):
        triple = [su2.su2_element(*rng.uniform(-8.0, 8.0, 3)) for _ in range(3)]
        got = su2.su2_lie_kernel(*triple, scheme="dual")
        want = su2.lie_kernel_expansion(*triple)
        worst = max(worst, abs(got - want))
    reports.append(_su2_report("lie-expansion", "dual", tol, worst))
    return tuple(reports)


def _cmd_su2_verify(args) -> int:
    reports = su2_verification_reports(
        nodes=args.nodes, trials=args.trials, seed=args.seed, tol=args.tol
    )
    header = {
        "command": "su2-verify",
        "nodes": list(args.nodes),
        "tolerance": args.tol,
        "trials": args.trials,
        "seed": args.seed,
    }
    _print_reports(reports, args.fmt, sys.stdout, header)
    return _EXIT_OK if all(r.passed for r in reports) else _EXIT_CHECK_FAILED


def _cmd_su2_kernel(args) -> int:
    if len(args.angles) != 9:
        raise ValueError("--angles needs nine numbers: theta,phi,psi for each of three elements")
    g1, g2, g3 = (
        su2.su2_element(*args.angles[i : i + 3]) for i in (0, 3, 6)
    )
    if args.lie:
        value = su2.su2_lie_kernel(g1, g2, g3, scheme=args.scheme)
    else:
        value = su2.su2_kernel(g1, g2, g3, scheme=args.scheme)
    doc = {
        "command": "su2-kernel",
        "scheme": args.scheme,
        "lie": bool(args.lie),
        "value": [value.real, value.imag],
    }
    if args.fmt == "machine" or getattr(args, "output", None):
        _write_output(doc, args, sys.stdout)
    else:
        sys.stdout.write(f"{_fmt_c(value)}\n")
    return _EXIT_OK


def _cmd_su2_star(args) -> int:
    grid1, f1 = su2.samples_from_doc(_load_json(args.f1))
    grid2, f2 = su2.samples_from_doc(_load_json(args.f2))
    if (grid1.n_theta, grid1.n_phi, grid1.n_psi) != (grid2.n_theta, grid2.n_phi, grid2.n_psi):
        raise ValueError("the two sampled functions live on different grids")
    if args.at is not None:
        if len(args.at) != 3:
            raise ValueError("--at needs theta,phi,psi")
        g = su2.su2_element(*args.at)
        value = su2.su2_star(f1, f2, g, grid1, scheme=args.scheme)
        doc = {"command": "su2-star", "scheme": args.scheme, "value": [value.real, value.imag]}
        if args.fmt == "machine" or getattr(args, "output", None):
            _write_output(doc, args, sys.stdout)
        else:
            sys.stdout.write(f"{_fmt_c(value)}\n")
        return _EXIT_OK
    values = np.array(
        [su2.su2_star(f1, f2, g, grid1, scheme=args.scheme) for g in grid1.elements]
    )
    _write_output(su2.samples_to_doc(grid1, values), args, sys.stdout)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupstar",
        description="Star products on finite groups and SU(2) from quantizer/dequantizer pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("groups", help="list built-in groups or show one")
    gsub = p.add_subparsers(dest="action", required=True)
    pl = gsub.add_parser("list", help="list built-in groups")
    pl.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    pl.set_defaults(func=_cmd_groups)
    ps = gsub.add_parser("show", help="show a multiplication table")
    ps.add_argument("group")
    ps.add_argument("-o", "--output", help="write the group table document to a file")
    ps.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    ps.set_defaults(func=_cmd_groups)

    p = sub.add_parser("character-table", help="characters of all irreps of a group")
    p.add_argument("group")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    p.set_defaults(func=_cmd_character_table)

    p = sub.add_parser("kernel", help="compute a star-product kernel")
    p.add_argument("group")
    p.add_argument("irrep")
    p.add_argument("--scheme", choices=("primary", "dual"), default="primary")
    p.add_argument("--k-elem", type=int, default=None, help="deform by the image of element INDEX")
    p.add_argument("--k-file", default=None, help="deform by a matrix loaded from FILE")
    p.add_argument(
        "--layout", choices=("output-first", "output-last"), default="output-first",
        help="index order of the serialized tensor",
    )
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_kernel, fmt="machine")

    p = sub.add_parser("symbol", help="symbol of an operator")
    p.add_argument("group")
    p.add_argument("irrep")
    p.add_argument("--scheme", choices=("primary", "dual"), default="primary")
    p.add_argument("--matrix-file", default=None, help="operator matrix (defaults to identity)")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    p.set_defaults(func=_cmd_symbol)

    p = sub.add_parser("reconstruct", help="operator from a sampled function")
    p.add_argument("group")
    p.add_argument("irrep")
    p.add_argument("--scheme", choices=("primary", "dual"), default="primary")
    p.add_argument("--function-file", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("verify", help="run verification checks for one irrep")
    p.add_argument("group")
    p.add_argument("irrep")
    p.add_argument("--check", choices=_CHECKS + ("all",), default="all")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compat", help="associativity of kernel superpositions")
    p.add_argument("group")
    p.add_argument("kernel1", help="irrep label or pointwise/convolution")
    p.add_argument("kernel2", help="irrep label or pointwise/convolution")
    p.add_argument("--scheme", choices=("primary", "dual"), default="primary")
    p.add_argument("--lambdas", type=_csv_floats, default=(0.5, 1.0, 2.0))
    _add_common(p, trials=50)
    p.set_defaults(func=_cmd_compat)

    p = sub.add_parser("verify-kernel", help="check a kernel file for associativity")
    p.add_argument("path")
    _add_common(p, trials=50)
    p.set_defaults(func=_cmd_verify_kernel)

    p = sub.add_parser("su2", help="spin-1/2 star products on SU(2)")
    ssub = p.add_subparsers(dest="action", required=True)

    pk = ssub.add_parser("kernel", help="kernel value at three group elements")
    pk.add_argument("--angles", type=_csv_floats, required=True,
                    help="nine numbers: theta,phi,psi per element")
    pk.add_argument("--scheme", choices=("primary", "dual"), default="primary")
    pk.add_argument("--lie", action="store_true", help="antisymmetrized kernel")
    pk.add_argument("-o", "--output")
    pk.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    pk.set_defaults(func=_cmd_su2_kernel)

    pst = ssub.add_parser("star", help="star product of two sampled functions")
    pst.add_argument("--f1", required=True)
    pst.add_argument("--f2", required=True)
    pst.add_argument("--scheme", choices=("primary", "dual"), default="primary")
    pst.add_argument("--at", type=_csv_floats, default=None, help="evaluate at theta,phi,psi")
    pst.add_argument("-o", "--output")
    pst.add_argument("--format", choices=("human", "machine"), default="human", dest="fmt")
    pst.set_defaults(func=_cmd_su2_star)

    pv = ssub.add_parser("verify", help="quadrature, round-trip and closure checks")
    pv.add_argument("--nodes", type=_csv_nodes, default=(8, 8, 8))
    _add_common(pv, trials=50)
    pv.set_defaults(func=_cmd_su2_verify)

    return parser


def run(argv) -> int:
    """Parse arguments, execute one subcommand, return the exit status."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else _EXIT_OK
    try:
        return args.func(args)
    except _IoFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_IO
    except (ValueError, IndexError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_USAGE


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
