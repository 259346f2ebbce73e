"""Command-line front end.

Subcommands: catalog, modular, enum, nimrep, kostant, chiral,
degenerate, ising, verify-all.  Exit status 0 on success, 1 when a
check fails, 2 on usage errors.  Output is deterministic: identical
inputs and flags produce byte-identical bytes (files contain no
timestamps and all floats are formatted by fixed rules).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .catalog import ade_graph, gen_su2, graph_meta, list_catalog
from .chiral_analysis import (chiral_norm_check, commutant_check,
                              degenerate_invariant, global_indices,
                              lr_counting)
from .fileio import (catalog_dict, dumps_canonical, graph_dict,
                     load_coupling_matrix, load_fusion_system,
                     load_invariant_catalog, modular_data_dict,
                     save_invariant_catalog)
from .invariant_enum import (build_records, enumerate_invariants,
                             matrix_stats, type_I_factor)
from .kostant import format_poly, kostant_suite
from .modular_data import modular_data, verify_modular, verlinde_check
from .nimrep import NimrepBuildError, build_nimrep_su2, spectrum_check, \
    verify_nimrep
from .reports import Report

__all__ = ["ising_partition", "main"]

ISING_GUARD = 24

BOND_CONVENTION = (
    "Bonds are the shift edges (i,j)-(i+1,j) and (i,j)-(i,j+1) with both "
    "indices periodic, so widths 1 and 2 pick up self and doubled bonds. "
    "The transfer matrix couples consecutive rows and attaches each row's "
    "horizontal bonds to the arriving row (row-to-row convention); the "
    "torus trace is independent of that split.")


def ising_partition(M: int, N: int, beta: float,
                    coupling: float = 1.0) -> tuple[float, float]:
    """Partition function of the Ising model on the M x N torus, twice.

    Returns (Z_brute, Z_trace): the configuration sum over all 2^(M*N)
    spin assignments, and trace(T^N) for the 2^M x 2^M row-to-row
    transfer matrix.  Energy is -coupling * sum over bonds of s s'; see
    BOND_CONVENTION for the exact bond multiset.
    """
    if M < 1 or N < 1:
        raise ValueError("M and N must be >= 1")
    if M * N > ISING_GUARD:
        raise ValueError(f"M*N = {M * N} exceeds the brute-force guard "
                         f"of {ISING_GUARD}")
    bJ = float(beta) * float(coupling)
    sites = M * N

    z_brute = 0.0
    step = 1 << min(sites, 18)
    shifts = np.arange(sites, dtype=np.int64)
    for start in range(0, 1 << sites, step):
        codes = np.arange(start, min(start + step, 1 << sites),
                          dtype=np.int64)
        spins = (((codes[:, None] >> shifts[None, :]) & 1) * 2 - 1)
        spins = spins.reshape(-1, M, N).astype(np.int64)
        bonds = ((spins * np.roll(spins, -1, axis=1)).sum(axis=(1, 2))
                 + (spins * np.roll(spins, -1, axis=2)).sum(axis=(1, 2)))
        z_brute += float(np.exp(bJ * bonds).sum())

    states = ((np.arange(1 << M)[:, None] >> np.arange(M)[None, :]) & 1)
    states = (states * 2 - 1).astype(np.float64)
    horiz = np.exp(bJ * (states * np.roll(states, -1, axis=1)).sum(axis=1))
    if N == 1:
        # diagonal of T without materialising it: s . s = M on the diagonal
        z_trace = float(np.exp(bJ * M) * horiz.sum())
    else:
        T = np.exp(bJ * (states @ states.T)) * horiz[None, :]
        z_trace = float(np.trace(np.linalg.matrix_power(T, N)))
    return z_brute, z_trace


def _report_obj(rep: Report) -> dict:
    return {
        "title": rep.title,
        "ok": rep.ok,
        "checks": [{"name": c.name, "ok": c.ok, "skipped": c.skipped,
                    "detail": c.detail} for c in rep.checks],
    }


def _emit(args, text_lines: list[str], machine_obj) -> None:
    if getattr(args, "format", "text") == "machine":
        sys.stdout.write(dumps_canonical(machine_obj))
    else:
        for line in text_lines:
            print(line)


def _matrix_lines(Z: np.ndarray) -> list[str]:
    width = max(len(str(int(v))) for v in np.asarray(Z).ravel())
    return [" ".join(f"{int(v):>{width}}" for v in row) for row in Z]


def _resolve_system(args):
    """--system su2 (with --level) or a fusion-system file path."""
    if args.system == "su2":
        if getattr(args, "level", None) is None:
            raise SystemExit2("--system su2 requires --level")
        return gen_su2(args.level), f"su2:{args.level}"
    return load_fusion_system(args.system), args.system


class SystemExit2(Exception):
    """Usage error discovered after argparse (still exits with 2)."""


def _cmd_catalog(args) -> int:
    if args.graph is not None:
        g = affine_or_ordinary(args.graph, args.affine)
        obj = graph_dict(g)
        if args.out:
            from .fileio import save_graph
            save_graph(g, args.out)
        _emit(args, [dumps_canonical(obj).rstrip("\n")], obj)
        return 0
    cat = list_catalog()
    lines = ["systems:"]
    lines += [f"  {s}" for s in cat["systems"]]
    lines.append("ordinary graphs:")
    lines.append("  " + " ".join(cat["ordinary_graphs"]))
    lines.append("affine graphs (append ^ or pass --affine):")
    lines.append("  " + " ".join(cat["affine_graphs"]))
    _emit(args, lines, cat)
    return 0


def affine_or_ordinary(name: str, affine: bool):
    from .catalog import affine_ade
    if name.endswith("^"):
        name, affine = name[:-1], True
    return affine_ade(name) if affine else ade_graph(name)


def _cmd_modular(args) -> int:
    F, _ = _resolve_system(args)
    md = modular_data(F)
    reports = [verify_modular(md, tol=args.tolerance), verlinde_check(md)]
    if args.out:
        from .fileio import save_modular_data
        save_modular_data(md, args.out)
    obj = modular_data_dict(md)
    obj["reports"] = [_report_obj(r) for r in reports]
    _emit(args, [str(r) for r in reports], obj)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_enum(args) -> int:
    F, sys_id = _resolve_system(args)
    md = modular_data(F)
    result = enumerate_invariants(md, budget=args.budget, tol=args.tolerance)
    records = build_records(result)
    header = {
        "system": sys_id,
        "level": args.level,
        "tolerance": args.tolerance,
        "budget": args.budget,
        "tool_version": __version__,
        "commutant_dimension": result.commutant_dim,
        "count": len(records),
    }
    obj = catalog_dict(header, records)
    if args.out:
        save_invariant_catalog(obj, args.out)
    lines = [f"{len(records)} coupling matrices for {sys_id} "
             f"(commutant dimension {result.commutant_dim}, "
             f"{result.nodes} search nodes, mode {result.mode})"]
    for i, rec in enumerate(records):
        wit = ("type I" if rec["type_I"] is not None else
               "type II" if rec["twist"] is not None else "unfactored")
        if rec["twist"] is not None:
            wit += (f" (parent {rec['twist']['parent']}, "
                    f"twist {tuple(rec['twist']['theta'])})")
        lines.append(f"[{i}] trace {rec['trace']}, total {rec['total']}, "
                     f"sum of squares {rec['sum_sq']}, "
                     f"permutation {rec['permutation']}, {wit}")
        lines += _matrix_lines(np.array(rec["Z"]))
    _emit(args, lines, obj)
    return 0


def _cmd_nimrep(args) -> int:
    g = ade_graph(args.graph)
    F = gen_su2(args.level)
    try:
        nim = build_nimrep_su2(g, args.level)
    except NimrepBuildError as exc:
        meta = graph_meta(args.graph)
        print(f"build failed: {exc} (graph Coxeter number {meta.coxeter}, "
              f"so the matching level is {meta.coxeter - 2})",
              file=sys.stderr)
        return 1
    reports = [verify_nimrep(nim, F)]
    lines = []
    for j, G in enumerate(nim.G):
        lines.append(f"G_{j} =")
        lines += _matrix_lines(G)
    if args.against:
        obj = load_invariant_catalog(args.against)
        match = [np.array(rec["Z"], dtype=np.int64)
                 for rec in obj["invariants"]
                 if int(rec["trace"]) == g.n_vertices]
        if not match:
            print(f"no record in {args.against} has trace "
                  f"{g.n_vertices}", file=sys.stderr)
            return 1
        md = modular_data(F)
        reports.append(spectrum_check(nim, match[0], md,
                                      tol=args.tolerance))
    lines += [str(r) for r in reports]
    machine = {"graph": args.graph, "level": args.level,
               "generators": [G.tolist() for G in nim.G],
               "reports": [_report_obj(r) for r in reports]}
    _emit(args, lines, machine)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_kostant(args) -> int:
    suite = kostant_suite(args.graph, J=args.truncation)
    series = suite.series
    lines = [f"{suite.name}: restriction series on the affine graph, "
             f"truncation J = {series.J}"]
    head = "  j | " + " ".join(f"{g:>4}" for g in range(series.n.shape[1]))
    lines.append(head)
    for j in range(series.J + 1):
        lines.append(f"{j:>3} | "
                     + " ".join(f"{int(v):>4}" for v in series.n[j]))
    lines.append(f"(r, s) = {suite.rs}")
    for p in suite.polys:
        star = " (extension vertex)" if p.vertex == series.graph.star else ""
        lines.append(f"p_{p.vertex}{star} = {format_poly(p.coeffs)}")
    reports = [suite.series_report, suite.rs_report, suite.match_report]
    lines += [str(r) for r in reports]
    machine = {"graph": suite.name, "truncation": series.J,
               "series": series.n.tolist(), "rs": list(suite.rs),
               "polynomials": [{"vertex": p.vertex,
                                "coeffs": list(p.coeffs)}
                               for p in suite.polys],
               "reports": [_report_obj(r) for r in reports]}
    _emit(args, lines, machine)
    return 0 if suite.ok else 1


def _cmd_chiral(args) -> int:
    F, sys_id = _resolve_system(args)
    Z = load_coupling_matrix(args.invariant)
    if Z.shape[0] != F.n:
        raise ValueError(f"coupling matrix is {Z.shape[0]}x{Z.shape[1]} but "
                         f"the system has {F.n} sectors")
    gi = global_indices(Z, F.d)
    reports = [commutant_check(F, Z), chiral_norm_check(F, Z,
                                                        tol=args.tolerance),
               lr_counting(Z, F.d)]
    lines = [f"global indices for {sys_id}:",
             f"  w       = {gi.w!r}",
             f"  w_plus  = {gi.w_plus!r}",
             f"  w_minus = {gi.w_minus!r}",
             f"  w_alpha = {gi.w_alpha!r}",
             f"  w_zero  = {gi.w_zero!r}"]
    lines += [str(r) for r in reports]
    machine = {"system": sys_id,
               "global_indices": {"w": gi.w, "w_plus": gi.w_plus,
                                  "w_minus": gi.w_minus,
                                  "w_alpha": gi.w_alpha,
                                  "w_zero": gi.w_zero},
               "reports": [_report_obj(r) for r in reports]}
    _emit(args, lines, machine)
    return 0 if all(r.ok for r in reports) else 1


def _parse_labels(F, raw: str) -> list[int]:
    # Semicolons separate label names that contain commas, e.g. "(0,0);(1,0)".
    sep = ";" if ";" in raw else ","
    out = []
    for token in raw.split(sep):
        token = token.strip()
        if token in F.labels:
            out.append(F.labels.index(token))
        else:
            out.append(int(token))
    return out


def _cmd_degenerate(args) -> int:
    F, sys_id = _resolve_system(args)
    gamma = _parse_labels(F, args.gamma)
    theta = _parse_labels(F, args.theta)
    Z = degenerate_invariant(F, gamma, theta, tol=args.tolerance)
    b = type_I_factor(Z)
    record = {"Z": Z.tolist(), **matrix_stats(Z),
              "type_I": None if b is None else b.tolist(), "twist": None}
    header = {"system": sys_id,
              "gamma": [F.labels[i] for i in gamma],
              "theta": [F.labels[i] for i in theta],
              "tolerance": args.tolerance,
              "tool_version": __version__,
              "count": 1}
    obj = catalog_dict(header, [record])
    if args.out:
        save_invariant_catalog(obj, args.out)
    lines = [f"coupling matrix from degenerate subsystem "
             f"{header['gamma']} with bosonic part {header['theta']}:"]
    lines += _matrix_lines(Z)
    _emit(args, lines, obj)
    return 0


def _cmd_ising(args) -> int:
    z_brute, z_trace = ising_partition(args.m, args.n, args.beta,
                                       args.coupling)
    rel = abs(z_brute - z_trace) / max(abs(z_brute), 1e-300)
    ok = rel < 1e-12
    lines = [f"Z (configuration sum) = {z_brute!r}",
             f"Z (transfer trace)    = {z_trace!r}",
             f"relative difference   = {rel:.3e} "
             f"({'ok' if ok else 'MISMATCH'})"]
    machine = {"m": args.m, "n": args.n, "beta": args.beta,
               "coupling": args.coupling, "z_brute": z_brute,
               "z_trace": z_trace, "ok": ok}
    _emit(args, lines, machine)
    return 0 if ok else 1


def _cmd_verify_all(args) -> int:
    from .acceptance import render_lines, run_all
    results = run_all()
    lines = render_lines(results)
    for line in lines:
        print(line)
    if args.format == "text":
        n_pass = sum(r.passed for r in results)
        print(f"{n_pass}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modkit",
        description="Coupling-matrix toolkit: modular data, invariant "
                    "enumeration, nimreps, restriction polynomials, and "
                    "a transfer-matrix demonstration.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("text", "machine"),
                       default="text")
        return p

    p = add("catalog", _cmd_catalog, help="list built-in systems and graphs")
    p.add_argument("action", nargs="?", choices=("list",), default="list")
    p.add_argument("--graph", help="export one graph instead of listing")
    p.add_argument("--affine", action="store_true",
                   help="with --graph: the affine extension")
    p.add_argument("--out", help="write the graph file here")

    p = add("modular", _cmd_modular,
            help="modular data (S, T) and its verification report")
    p.add_argument("--system", default="su2",
                   help="'su2' (with --level) or a fusion-system file")
    p.add_argument("--level", type=int)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--out", help="write the modular-data file here")

    p = add("enum", _cmd_enum, help="enumerate all coupling matrices")
    p.add_argument("--system", default="su2")
    p.add_argument("--level", type=int)
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--out", help="write the invariant-catalog file here")

    p = add("nimrep", _cmd_nimrep,
            help="graph generators and their spectra")
    p.add_argument("--graph", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--against",
                   help="invariant-catalog file; the record whose trace "
                        "equals the vertex count is checked spectrally")
    p.add_argument("--tolerance", type=float, default=1e-7)

    p = add("kostant", _cmd_kostant,
            help="restriction series, (r, s) pair, and polynomials")
    p.add_argument("--graph", required=True)
    p.add_argument("--truncation", type=int, default=None)

    p = add("chiral", _cmd_chiral,
            help="global indices and coupling-identity reports")
    p.add_argument("--system", default="su2")
    p.add_argument("--level", type=int)
    p.add_argument("--invariant", required=True,
                   help="coupling-matrix file")
    p.add_argument("--tolerance", type=float, default=1e-6)

    p = add("degenerate", _cmd_degenerate,
            help="coupling matrix from a degenerate subsystem")
    p.add_argument("--system", default="su2")
    p.add_argument("--level", type=int)
    p.add_argument("--gamma", required=True,
                   help="comma-separated closed label set")
    p.add_argument("--theta", required=True,
                   help="comma-separated bosonic degenerate labels")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--out", help="write a one-record catalog file here")

    p = add("ising", _cmd_ising,
            help="torus partition function, brute force vs transfer "
                 "trace. " + BOND_CONVENTION)
    p.add_argument("--m", type=int, required=True, help="strip width M")
    p.add_argument("--n", type=int, required=True, help="torus length N")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--coupling", type=float, default=1.0)

    add("verify-all", _cmd_verify_all,
        help="run every acceptance criterion, one PASS/FAIL line each")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        parser.error(str(exc))          # exits with status 2
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
