"""Command-line drivers with deterministic TSV output.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 a resource
cap was hit (the message names the cap).

A GRAPH argument is a path to a file in the text format, or one of the
built-in names ``hypercube<N>``, ``chain<N>``, ``witness`` and
``complete:<s0>,<s1>,...``.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass
from typing import Callable

from . import graph as G
from .basis import hilbert_from_basis, hilbert_from_linalg
from .errors import CapExceeded, GraphFormatError, NonUniformGraphError
from .field import DEFAULT_MODULUS, Field
from .koszul import (
    DEFAULT_LATTICE_CAP,
    euler_check,
    is_distributive,
    lattice_closure,
    lemma42_check,
    lemma44_check,
    relation_family,
    tor_table,
)
from .relations import full_relation_span, p_span, presentation, quadratic_ideal_component
from .tensor import DEFAULT_AMBIENT_CAP, GradedComponent, concat_subspaces, full_power

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    field_modulus: int = DEFAULT_MODULUS
    ambient_cap: int = DEFAULT_AMBIENT_CAP
    path_cap: int = G.DEFAULT_PATH_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    seed: int = 0

    def field(self) -> Field:
        try:
            return Field(self.field_modulus)
        except ValueError as exc:
            raise InputError(str(exc)) from None


def _tf(b: bool) -> str:
    return "true" if b else "false"


def resolve_graph(spec: str) -> G.LayeredGraph:
    if os.path.exists(spec):
        try:
            return G.load(spec)
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"{spec}: not a text file ({exc})") from None
    m = re.fullmatch(r"(hypercube|chain)(\d+)", spec)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise InputError(f"{spec}: size must be >= 1")
        return G.hypercube(n) if m.group(1) == "hypercube" else G.chain(n)
    if spec == "witness":
        return G.non_uniform_witness()
    if spec.startswith("complete:"):
        return G.complete_layered(_parse_sizes(spec[len("complete:"):]))
    raise InputError(f"no such graph file or built-in graph: {spec!r}")


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad layer sizes {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise InputError(f"bad layer sizes {text!r}")
    return sizes


# subcommands -----------------------------------------------------------------
# each returns (exit code, output lines)


def cmd_generate(args, cfg: RunConfig):
    if args.kind in ("hypercube", "chain"):
        if args.n is None or args.n < 1:
            raise InputError(f"generate {args.kind} needs --n >= 1")
        g = G.hypercube(args.n) if args.kind == "hypercube" else G.chain(args.n)
    elif args.kind == "complete":
        g = G.complete_layered(_parse_sizes(args.sizes or "1,2,2"))
    else:
        g = G.non_uniform_witness()
    return EXIT_OK, G.dumps(g).splitlines()


def cmd_validate(args, cfg: RunConfig):
    g = resolve_graph(args.graph)
    problems = G.validate(g)
    if problems:
        return EXIT_FAIL, [f"INVALID\t{p}" for p in problems]
    return EXIT_OK, [f"VALID\tvertices {len(g.vertices)}\tedges {len(g.edges)}\theight {g.height}"]


def cmd_check_uniform(args, cfg: RunConfig):
    g = resolve_graph(args.graph)
    res = g.is_uniform()
    if res.uniform:
        return EXIT_OK, ["UNIFORM"]
    v, u, w = res.witness
    return EXIT_FAIL, [f"NON-UNIFORM v={v}\tu={u}\tw={w}"]


def cmd_relations(args, cfg: RunConfig):
    g = resolve_graph(args.graph)
    field = cfg.field()
    p = presentation(g, args.presentation, field)
    lines = [f"relation\t{vec.format()}" for vec in p.relation_vectors()]
    pa = p if args.presentation == "a" else presentation(g, "a", field)
    ok = True
    for k in range(2, args.max + 1):
        full = full_relation_span(g, k, field, cfg.ambient_cap, cfg.path_cap)
        quad = quadratic_ideal_component(pa, k, cfg.ambient_cap)
        ok &= full == quad
        lines.append(f"degree\t{k}\tdim_ideal\t{full.dim}\tdim_quadratic\t{quad.dim}")
    return (EXIT_OK if ok else EXIT_FAIL), lines


def cmd_hilbert(args, cfg: RunConfig):
    g = resolve_graph(args.graph)
    basis = lin = None
    if args.mode in ("basis", "both"):
        basis = hilbert_from_basis(g, args.max)
    if args.mode in ("linalg", "both"):
        lin = hilbert_from_linalg(g, args.presentation, args.max, cfg.field(), cfg.ambient_cap)
    lines, ok = [], True
    for k in range(args.max + 1):
        b = str(basis[k]) if basis else "-"
        l_ = str(lin[k]) if lin else "-"
        match = "-"
        if basis and lin:
            match = _tf(basis[k] == lin[k])
            ok &= basis[k] == lin[k]
        lines.append(f"degree\t{k}\tbasis\t{b}\tlinalg\t{l_}\tmatch\t{match}")
    return (EXIT_OK if ok else EXIT_FAIL), lines


def cmd_koszul(args, cfg: RunConfig, emit: Callable[[str], None]):
    g = resolve_graph(args.graph)
    p = presentation(g, args.presentation, cfg.field())
    ok = True
    if args.method == "tor":
        table = tor_table(p, args.max, cfg.ambient_cap)
        for i, j, d in table.rows():
            emit(f"i\t{i}\tj\t{j}\ttor\t{d}")
        ok = table.is_koszul()
        emit(f"koszul_up_to\t{args.max}\t{_tf(ok)}")
    elif args.method == "euler":
        res = euler_check(p, args.max, cfg.ambient_cap)
        for n, r in enumerate(res, 1):
            emit(f"degree\t{n}\tresidual\t{r}")
        ok = all(r == 0 for r in res)
    else:
        if args.presentation != "gr":
            raise InputError("--method lattice uses the gr presentation")
        for k in range(3, args.max + 1):
            ok &= _lattice_rows(g, p, k, args.include_p, cfg, emit)
    return (EXIT_OK if ok else EXIT_FAIL), []


def _lattice_rows(g, p, k, include_p, cfg: RunConfig, emit) -> bool:
    gens = relation_family(p, k, cfg.ambient_cap)
    if include_p is not None:
        v, l = include_p
        if v not in g or v == G.STAR:
            raise InputError(f"--include-p: no positive vertex {v!r}")
        gens.insert(0, concat_subspaces(
            p_span(g, v, l, p.field), full_power(p.generator_dim, k - 1, p.field, cfg.ambient_cap), cfg.ambient_cap))
    grading = GradedComponent(p.alphabet, k, cfg.ambient_cap).level_profiles()
    lat = lattice_closure(gens, cfg.lattice_cap, grading=grading)
    # size first: the triple check is the expensive part
    emit(f"degree\t{k}\tgenerators\t{len(gens)}\tsize\t{lat.size}")
    res = is_distributive(lat)
    emit(f"degree\t{k}\tdistributive\t{_tf(res.distributive)}")
    return res.distributive


def _parse_include_p(text: str):
    name, sep, lev = text.rpartition(":")
    try:
        if not sep or not name:
            raise ValueError
        return name, int(lev)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected VERTEX:L, got {text!r}") from None


def cmd_lemma_check(args, cfg: RunConfig, emit: Callable[[str], None]):
    g = resolve_graph(args.graph)
    p = presentation(g, "gr", cfg.field())
    ok = True
    if args.lemma == "4.2":
        ks = [args.k] if args.k is not None else list(range(2, args.max + 1))
        for k in ks:
            if k < 2:
                raise InputError("--k must be >= 2")
            r = lemma42_check(g, k, p, cfg.ambient_cap)
            ok &= r.holds
            emit(f"k\t{k}\tlhs_dim\t{r.lhs_dim}\trhs_dim\t{r.rhs_dim}\tholds\t{_tf(r.holds)}")
    elif args.lemma == "4.4":
        vs = [args.v] if args.v is not None else [v.name for v in g.positive if v.level >= 2]
        js = [args.j] if args.j is not None else [1, 2]
        ls = [args.l] if args.l is not None else [0, 1]
        for v in vs:
            if v not in g or g.level(v) < 2:
                raise InputError(f"--v must name a vertex of level >= 2, got {v!r}")
            for j in js:
                for l in ls:
                    if j < 1 or l < 0:
                        raise InputError("need --j >= 1 and --l >= 0")
                    r = lemma44_check(g, v, j, l, p, cfg.ambient_cap)
                    ok &= r.holds
                    emit(f"v\t{v}\tj\t{j}\tl\t{l}\tlhs_dim\t{r.lhs_dim}\trhs_dim\t{r.rhs_dim}\tholds\t{_tf(r.holds)}")
    else:
        ks = [args.k] if args.k is not None else list(range(3, args.max + 1))
        for k in ks:
            if k < 2:
                raise InputError("--k must be >= 2")
            ok &= _lattice_rows(g, p, k, args.include_p, cfg, emit)
    emit("PASS" if ok else "FAIL")
    return (EXIT_OK if ok else EXIT_FAIL), []


# argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=DEFAULT_MODULUS, help="prime modulus (default %(default)s)")
    common.add_argument("--ambient-cap", type=int, default=DEFAULT_AMBIENT_CAP,
                        help="max coordinates of a tensor component (default %(default)s)")
    common.add_argument("--path-cap", type=int, default=G.DEFAULT_PATH_CAP,
                        help="max paths enumerated per vertex pair (default %(default)s)")
    common.add_argument("--lattice-cap", type=int, default=DEFAULT_LATTICE_CAP,
                        help="max lattice elements (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized routines (default 0)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="layered-koszul", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common], help="write a built-in graph in the text format")
    s.add_argument("kind", choices=["hypercube", "chain", "complete", "witness"])
    s.add_argument("--n", type=int, help="size for hypercube/chain")
    s.add_argument("--sizes", help="comma-separated layer sizes for complete (default 1,2,2)")

    for name, hlp in [("validate", "check the standing hypotheses"),
                      ("check-uniform", "report uniformity, with a witness if it fails")]:
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("graph")

    s = sub.add_parser("relations", parents=[common], help="relation basis and ideal dimensions per degree")
    s.add_argument("graph")
    s.add_argument("--max", type=int, default=4)
    s.add_argument("--presentation", choices=["a", "gr"], default="a")

    s = sub.add_parser("hilbert", parents=[common], help="graded dimensions by basis count and by linear algebra")
    s.add_argument("graph")
    s.add_argument("--max", type=int, default=4)
    s.add_argument("--mode", choices=["basis", "linalg", "both"], default="both")
    s.add_argument("--presentation", choices=["a", "gr"], default="gr")

    s = sub.add_parser("koszul", parents=[common], help="bounded-degree Koszulity checks")
    s.add_argument("graph")
    s.add_argument("--method", choices=["tor", "euler", "lattice"], default="tor")
    s.add_argument("--max", type=int, default=6)
    s.add_argument("--presentation", choices=["a", "gr"], default="gr")
    s.add_argument("--include-p", type=_parse_include_p, metavar="VERTEX:L",
                   help="add P_L(VERTEX) V^(k-1) to the lattice generators")

    s = sub.add_parser("lemma-check", parents=[common], help="check one of the structural subspace identities")
    s.add_argument("graph")
    s.add_argument("--lemma", choices=["4.2", "4.4", "4.6"], required=True)
    s.add_argument("--k", type=int, help="tensor length (default: all up to --max)")
    s.add_argument("--max", type=int, default=4)
    s.add_argument("--v", help="vertex for 4.4 (default: all of level >= 2)")
    s.add_argument("--j", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--include-p", type=_parse_include_p, metavar="VERTEX:L")
    return ap


_SIMPLE = {
    "generate": cmd_generate,
    "validate": cmd_validate,
    "check-uniform": cmd_check_uniform,
    "relations": cmd_relations,
    "hilbert": cmd_hilbert,
}
_STREAMING = {"koszul": cmd_koszul, "lemma-check": cmd_lemma_check}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout

    def emit(line: str):
        out.write(line + "\n")
        out.flush()

    cfg = RunConfig(args.field, args.ambient_cap, args.path_cap, args.lattice_cap, args.seed)
    try:
        cfg.field()  # primality is checked before any work
        if getattr(args, "max", 0) is not None and getattr(args, "max", 0) < 0:
            raise InputError("--max must be >= 0")
        if args.command in _STREAMING:
            code, lines = _STREAMING[args.command](args, cfg, emit)
        else:
            code, lines = _SIMPLE[args.command](args, cfg)
        for line in lines:
            emit(line)
        return code
    except CapExceeded as exc:
        print(f"error: cap exceeded: {exc.cap_name} (limit {exc.limit}): {exc}", file=sys.stderr)
        return EXIT_CAP
    except NonUniformGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
