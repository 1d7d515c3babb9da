"""Command-line front end: ``hodge-spectra <command> [input] [options]``.

Exit status is 0 on success, 1 when any check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .coefficients import DEFAULT_ORACLE_BUDGET
from .families import CLOSED_FORM_KINDS, FamilyError, FamilySpec, closed_form_spectrum, gen_family, parse_family
from .graph import Graph, GraphError, components, diameter, enumerate_triangles, is_connected
from .helmholtzian import build_H_direct, build_H_factored
from .incidence import Orientation, canonical_orientation
from .ingest import InputError, parse_edgelist, parse_graph6, parse_graph6_line
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    Spectrum,
    charpoly_exact,
    eigen_spectrum,
    h_integral_test,
    least_eigenvalue_bounds,
    nullity_formula,
    nullity_rank,
    triangles_from_nullity,
)
from .verify import VerifyOptions, run_verify

log = logging.getLogger("hodge_spectra")

COMMANDS = ("matrix", "spectrum", "charpoly", "nullity", "triangles", "bounds", "family", "verify")
SAFE_INT = 2**53


class UsageError(ValueError):
    """Bad command, conflicting flags, or input the command cannot accept."""


@dataclass
class Options:
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    seed: int = 42


@dataclass
class RunReport:
    input: dict
    command: str
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.get("status") != "fail" for c in self.checks)

    def as_dict(self) -> dict:
        return {"input": self.input, "command": self.command, "results": self.results,
                "checks": self.checks, "timings": self.timings}


def json_int(x: int):
    """Exact integers beyond double precision become decimal strings."""
    x = int(x)
    return str(x) if abs(x) > SAFE_INT else x


def _fmt_value(v) -> str:
    return str(v) if isinstance(v, (int, np.integer)) else f"{v:.12g}"


def spectrum_payload(sp: Spectrum) -> dict:
    return {_fmt_value(v): k for v, k in sp.items()}


def _best_spectrum(h, cluster_tol: float) -> Spectrum:
    """Exact integer spectrum when the exact char-poly confirms it, else clustered floats."""
    ok, exact = h_integral_test(h, cluster_tol)
    return exact if ok else eigen_spectrum(h, cluster_tol)


def _graph_payload(g: Graph, o: Orientation) -> dict:
    w, _ = components(g)
    out = {"n": g.n, "m": g.m, "components": w, "arcs": [list(a) for a in o.arcs]}
    if g.names is not None:
        out["names"] = list(g.names)
    return out


def run_command(cmd: str, g: Graph, o: Orientation | None = None, options: Options | None = None,
                spec: FamilySpec | None = None, descriptor: dict | None = None) -> RunReport:
    """Dispatch one command on one graph and collect results, checks and timings."""
    if cmd not in COMMANDS:
        raise UsageError(f"unknown command {cmd!r}; choose from {', '.join(COMMANDS)}")
    options = options or Options()
    o = o or canonical_orientation(g)
    o.validate(g)
    rep = RunReport(dict(descriptor or {}, n=g.n, m=g.m), cmd)
    t0 = time.perf_counter()
    tol = options.cluster_tol

    if cmd == "matrix":
        if g.m == 0:
            rep.results = {"matrix": [], "provenance": "empty"}
        else:
            h = build_H_direct(g, o)
            rep.results = {"matrix": h.matrix.tolist(), "provenance": h.provenance,
                           "arcs": [list(a) for a in o.arcs]}
            same = np.array_equal(h.matrix, build_H_factored(g, o).matrix)
            rep.checks.append({"name": "direct = factored", "status": "pass" if same else "fail"})

    elif cmd == "spectrum":
        if g.m == 0:
            rep.results = {"spectrum": {}, "kind": "exact-integer"}
        else:
            sp = _best_spectrum(build_H_direct(g, o), tol)
            rep.results = {"spectrum": spectrum_payload(sp), "kind": sp.kind, "tolerance": tol}
            if spec is not None and spec.kind in CLOSED_FORM_KINDS:
                cf = closed_form_spectrum(spec)
                ok = cf.matches(eigen_spectrum(build_H_direct(g, o), tol), 1e-8)
                rep.checks.append({"name": "closed-form family spectrum", "status": "pass" if ok else "fail"})

    elif cmd == "charpoly":
        coeffs = charpoly_exact(build_H_direct(g, o)).coeffs if g.m else (1,)
        rep.results = {"coefficients": [json_int(c) for c in coeffs], "kind": "exact-integer"}

    elif cmd == "nullity":
        if g.m == 0:
            rep.results = {"rank": 0, "formula": 0, "formula_valid": True}
        else:
            eta = nullity_rank(g, o)
            formula, valid = nullity_formula(g)
            trailing = charpoly_exact(build_H_direct(g, o)).nullity
            rep.results = {"rank": eta, "formula": formula, "formula_valid": valid, "charpoly_trailing_zeros": trailing}
            rep.checks.append({"name": "rank = char-poly trailing zeros", "status": "pass" if eta == trailing else "fail"})
            if valid:
                rep.checks.append({"name": "formula = rank", "status": "pass" if formula == eta else "fail"})

    elif cmd == "triangles":
        tris = enumerate_triangles(g)
        rep.results = {"count": len(tris), "triangles": [list(t) for t in tris]}
        if g.m:
            val, valid = triangles_from_nullity(g)
            rep.results.update(from_nullity=val, from_nullity_valid=valid)
            if valid:
                rep.checks.append({"name": "triangle count from nullity",
                                   "status": "pass" if val == len(tris) else "fail"})

    elif cmd == "bounds":
        if g.m == 0 or not is_connected(g):
            raise UsageError("bounds need a connected graph with at least one edge")
        b = least_eigenvalue_bounds(g, build_H_direct(g, o))
        rep.results = {"least_eigenvalue": b.least, "bound_i": b.bound_i, "bound_ii": b.bound_ii,
                       "attains_i": b.attains_i, "complete": g.is_complete(), "diameter": diameter(g)}
        rep.checks += [
            {"name": "least eigenvalue <= bound (i)", "status": "pass" if b.holds_i else "fail"},
            {"name": "least eigenvalue <= bound (ii)",
             "status": "skipped" if b.bound_ii is None else ("pass" if b.holds_ii else "fail")},
            {"name": "equality in (i) iff complete", "status": "pass" if b.equality_iff_complete else "fail"},
        ]

    elif cmd == "family":
        if spec is None:
            raise UsageError("the family command needs --family SPEC")
        rep.results = {"family": str(spec), "graph": _graph_payload(g, o)}
        if g.m:
            sp = eigen_spectrum(build_H_direct(g, o), tol)
            rep.results["eigensolve"] = spectrum_payload(sp)
            if spec.kind in CLOSED_FORM_KINDS:
                cf = closed_form_spectrum(spec)
                rep.results["closed_form"] = spectrum_payload(cf)
                ok = cf.total == g.m and cf.matches(sp, 1e-8)
                rep.checks.append({"name": "closed form matches eigensolve", "status": "pass" if ok else "fail"})
            ok, _ = h_integral_test(build_H_direct(g, o), tol)
            rep.results["h_integral"] = ok

    elif cmd == "verify":
        checks = run_verify(g, o, VerifyOptions(tol, options.oracle_budget, options.seed), spec)
        rep.checks = [c.as_dict() for c in checks]
        counts = {s: sum(c["status"] == s for c in rep.checks) for s in ("pass", "fail", "skipped")}
        rep.results = counts

    rep.timings["total_s"] = round(time.perf_counter() - t0, 6)
    return rep


# --- output ------------------------------------------------------------------


def _rows(rep: RunReport) -> list[list]:
    r = rep.results
    if rep.command == "matrix":
        return [list(row) for row in r["matrix"]]
    if rep.command == "spectrum":
        return [[v, k] for v, k in r["spectrum"].items()]
    if rep.command == "charpoly":
        return [[k, c] for k, c in enumerate(r["coefficients"])]
    if rep.command == "verify":
        return [[c["module"], c["name"], c["status"]] for c in rep.checks]
    return [[k, json.dumps(v) if isinstance(v, (list, dict)) else v] for k, v in r.items()]


def render(reports: list[RunReport], fmt: str, batch: bool = False) -> str:
    if fmt == "json":
        payload = [r.as_dict() for r in reports] if batch else reports[0].as_dict()
        return json.dumps(payload, indent=2)
    blocks = []
    for i, rep in enumerate(reports):
        rows = _rows(rep)
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            for row in rows:
                writer.writerow(([i] if batch else []) + row)
            blocks.append(buf.getvalue().rstrip("\n"))
        else:
            blocks.append("\n".join(" ".join(str(x) for x in row) for row in rows))
    return ("\n\n" if fmt == "plain" else "\n").join(b for b in blocks if b)


# --- argument handling -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hodge-spectra",
        description="Helmholtzian (Hodge 1-Laplacian) matrices, spectra and checks for simple graphs.",
    )
    p.add_argument("command", choices=COMMANDS)
    src = p.add_argument_group("input (exactly one)")
    src.add_argument("--input", metavar="FILE", help="edge-list file ('-' for stdin)")
    src.add_argument("--graph6", metavar="STR", help="a single graph6 string")
    src.add_argument("--family", metavar="SPEC", help="family spec, e.g. split:4,2 or windmill:2;2,2")
    src.add_argument("--batch", metavar="FILE", help="graph6 file, one report per line")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--cluster-tol", type=float, default=DEFAULT_CLUSTER_TOL,
                   help="relative eigenvalue clustering tolerance (default %(default)g)")
    p.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET,
                   help="state budget for the basic-subgraph oracle (default %(default)d)")
    p.add_argument("--seed", type=int, default=42, help="seed for random vectors and orientations")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_inputs(args) -> list[tuple[Graph, Orientation, FamilySpec | None, dict]]:
    given = [k for k in ("input", "graph6", "family", "batch") if getattr(args, k) is not None]
    if len(given) != 1:
        raise UsageError(f"give exactly one of --input, --graph6, --family, --batch (got {len(given)})")
    if args.input is not None:
        g, o = parse_edgelist(_read(args.input))
        return [(g, o, None, {"source": "edgelist", "path": args.input})]
    if args.graph6 is not None:
        g = parse_graph6_line(args.graph6)
        return [(g, canonical_orientation(g), None, {"source": "graph6", "graph6": args.graph6})]
    if args.family is not None:
        spec = parse_family(args.family)
        g = gen_family(spec)
        return [(g, canonical_orientation(g), spec, {"source": "family", "family": str(spec)})]
    out = []
    for i, g in enumerate(parse_graph6(_read(args.batch))):
        out.append((g, canonical_orientation(g), None, {"source": "batch", "path": args.batch, "index": i}))
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.cluster_tol <= 0:
        parser.error("--cluster-tol must be positive")
    opts = Options(args.cluster_tol, args.oracle_budget, args.seed)
    try:
        inputs = load_inputs(args)
        reports = [run_command(args.command, g, o, opts, spec, desc) for g, o, spec, desc in inputs]
    except (UsageError, InputError, FamilyError, GraphError, OSError) as exc:
        print(f"hodge-spectra: error: {exc}", file=sys.stderr)
        return 2
    print(render(reports, args.format, batch=args.batch is not None))
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
