"""Command-line front end.

Exit codes: 0 success, 1 a check came out false or a domain error occurred,
2 usage or input-format error.  Arrays are read and written in the OA
interchange format; a positional ``input`` of ``-`` (the default) means stdin.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bounds, codes, metrics, spacefill
from . import constructions as cons
from .errors import FormatError, NotMOLS, OAError
from .integrate import INTEGRANDS, METHODS, PLACEMENTS, SamplePlan, draw_points, variance_study
from .oa import LevelCollapseMap, OrthogonalArray, format_oa, parse_oa, read_annotations, verify_strength


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


def _emit_array(A: OrthogonalArray, comments=()) -> None:
    sys.stdout.write(format_oa(A, comments))


def _emit_bool(ok: bool) -> int:
    print("true" if ok else "false")
    return 0 if ok else 1


# --- construct ------------------------------------------------------------------------


def _hadamard_out(H: np.ndarray, args, label: str) -> int:
    if args.format == "pm":
        sys.stdout.write(cons.format_pm(H))
    else:
        A = cons.hadamard_to_oa(H)
        _emit_array(A, [f"construct: {label}", "strength: 2"])
    return 0


def cmd_construct(args) -> int:
    g = args.generator
    if g == "rao-hamming":
        A = cons.rao_hamming(args.s, args.n)
        label = f"rao-hamming s={args.s} n={args.n}"
    elif g in ("sylvester", "paley1", "paley2"):
        if g == "sylvester":
            return _hadamard_out(cons.sylvester(args.m), args, f"sylvester m={args.m}")
        H = cons.paley1(args.q) if g == "paley1" else cons.paley2(args.q)
        return _hadamard_out(H, args, f"{g} q={args.q}")
    elif g == "ds-expand":
        D = _scheme(args)
        A = cons.ds_expand(D, add_column=not args.no_extra_column)
        label = f"ds-expand s={D.s}"
    elif g == "kronecker":
        D = _scheme(args)
        B = parse_oa(_read(args.oa)) if args.oa else cons.rao_hamming(D.s, 2)
        A = cons.kronecker_oa(B, D)
        label = f"kronecker s={D.s}"
    elif g == "he":
        if args.a:
            A0 = parse_oa(_read(args.a))
            Bs = [parse_oa(_read(p)) for p in args.b]
        else:
            if args.s is None:
                raise UsageError("he needs --s or --a/--b")
            A0 = OrthogonalArray.fixed(np.arange(args.s)[:, None], args.s)
            Bs = [cons.rao_hamming(args.s, 2)] * args.s
        A = cons.he_expand(A0, Bs)
        label = f"he s={A0.levels[0]}"
    elif g == "mols-to-oa":
        A = cons.mols_to_oa(cons.parse_squares(_read(args.input)))
        label = "mols-to-oa"
    elif g == "code-to-oa":
        if args.s is None:
            raise UsageError("code-to-oa needs --s")
        C = codes.code_from_generator(codes.parse_matrix(_read(args.input)), args.s)
        A = codes.code_to_oa(C)
        label = f"code-to-oa s={args.s}"
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(g)
    _emit_array(A, [f"construct: {label}", f"strength: {A.strength}"])
    return 0


def _scheme(args) -> cons.DifferenceScheme:
    if args.ds:
        A = parse_oa(_read(args.ds))
        return cons.DifferenceScheme(A.cells, A.levels[0])
    if args.s is None:
        raise UsageError("need --s (GF(s) multiplication table) or --ds FILE")
    return cons.gf_difference_scheme(args.s)


# --- verify -----------------------------------------------------------------------------


def _maps(args, A: OrthogonalArray, s0: int):
    """``--map`` gives one shared collapse map; ``--maps`` one per column, ';'-separated."""
    if args.maps:
        per_col = [LevelCollapseMap(tuple(_ints(m)), s0) for m in args.maps.split(";")]
        return per_col
    if args.map:
        return LevelCollapseMap(tuple(_ints(args.map)), s0)
    return LevelCollapseMap.floor_div(A.levels[0], s0)


def cmd_verify(args) -> int:
    kind = args.kind
    text = _read(args.input)
    if kind == "hadamard":
        return _emit_bool(cons.is_hadamard(cons.parse_pm(text)))
    if kind == "mols":
        try:
            cons.parse_squares(text)
        except NotMOLS:
            return _emit_bool(False)
        return _emit_bool(True)
    if kind == "bibd":
        M = codes.parse_matrix(text)
        return _emit_bool(cons.verify_bibd(M, args.v, args.b, args.r, args.k, args.lam))

    A = parse_oa(text)
    notes = read_annotations(text)
    if kind == "strength":
        t = args.t if args.t is not None else _note_int(notes, "strength")
        return _emit_bool(verify_strength(A, t))
    if kind == "ds":
        s = args.s or A.levels[0]
        return _emit_bool(cons.verify_difference_scheme(A.cells, s))
    if kind in ("sliced", "nested"):
        s0 = _required(args.s0, "--s0")
        maps = _maps(args, A, s0)
        mode = "shared" if spacefill.shared_map(maps) else "per-column"
        print(f"# collapse map: {mode}")
        if kind == "sliced":
            spec = args.slices or notes.get("slices")
            if not spec:
                raise UsageError("sliced needs --slices or a '# slices:' annotation")
            P = spacefill.SlicePartition.parse(spec)
            return _emit_bool(spacefill.verify_sliced(A, P, maps, s0, args.balanced))
        rows = spacefill._parse_range(_required(args.rows, "--rows"))
        return _emit_bool(spacefill.verify_nested(A, rows, maps, s0))
    if kind == "strong":
        return _emit_bool(spacefill.verify_strong(A, _required(args.s, "--s"), _required(args.t, "--t")))
    if kind == "strong2plus":
        return _emit_bool(spacefill.verify_strong_2plus(A, _required(args.s, "--s")))
    if kind == "grouped":
        spec = args.groups or notes.get("groups")
        if not spec:
            raise UsageError("grouped needs --groups or a '# groups:' annotation")
        t = args.t if args.t is not None else _note_int(notes, "strength")
        return _emit_bool(spacefill.verify_grouped(A, spacefill.GroupSpec.parse(spec, t)))
    raise UsageError(kind)  # pragma: no cover


def _required(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _note_int(notes: dict, key: str) -> int:
    if key not in notes:
        raise UsageError(f"--t missing and no '# {key}:' annotation")
    return _ints(notes[key])[0]


# --- metrics, bound, sample, study --------------------------------------------------


def cmd_metrics(args) -> int:
    A = parse_oa(_read(args.input))
    if args.kind == "j":
        cols = _ints(_required(args.cols, "--cols"))
        print(metrics.j_characteristic(A, cols))
        return 0
    if args.kind == "gr":
        print(metrics.generalized_resolution(A))
        return 0
    return _emit_bool(metrics.is_regular(A))


def cmd_bound(args) -> int:
    print("\n".join(bounds.bound_report(args.k, args.s, args.t).lines()))
    return 0


def cmd_sample(args) -> int:
    if args.kind == "lhc":
        A = parse_oa(_read(args.input))
        L = spacefill.oa_to_lhc(A, args.seed)
        comments = [
            "latin hypercube: entries stored as l - 1",
            f"rng: {spacefill.RNG_CONTRACT}",
            f"seed: {args.seed}",
        ]
        _emit_array(L.to_oa(), comments)
        return 0
    A = parse_oa(_read(args.input)) if args.method.startswith("oa_") else None
    n = A.runs if A is not None else _required(args.n, "--n")
    k = A.factors if A is not None else _required(args.k, "--k")
    X = draw_points(SamplePlan(args.method, n, k, args.seed, A, args.placement))
    print(f"# points: method={args.method} placement={args.placement} seed={args.seed}")
    for row in X:
        print(" ".join(f"{v:.17g}" for v in row))
    return 0


def cmd_study(args) -> int:
    A = parse_oa(_read(args.input))
    methods = tuple(args.methods.split(",")) if args.methods else ("random", "lhs", "oa_lhs")
    S = variance_study(
        INTEGRANDS[args.function], A.runs, A.factors, A, args.replicates, args.seed, methods, args.placement
    )
    sys.stdout.write(S.table())
    return 0


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oakit", description="Orthogonal array toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an array")
    c.add_argument(
        "generator",
        choices=["rao-hamming", "sylvester", "paley1", "paley2", "ds-expand", "kronecker", "he", "mols-to-oa", "code-to-oa"],
    )
    c.add_argument("input", nargs="?", default="-", help="squares or generator matrix file")
    c.add_argument("--s", type=int)
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--q", type=int)
    c.add_argument("--ds", help="difference scheme file (OA format)")
    c.add_argument("--oa", help="strength-2 array for kronecker")
    c.add_argument("--a", help="array A for he")
    c.add_argument("--b", nargs="*", default=[], help="arrays B_1..B_n1 for he")
    c.add_argument("--no-extra-column", action="store_true")
    c.add_argument("--format", choices=["oa", "pm"], default="pm", help="output for Hadamard generators")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a property; prints true or false")
    v.add_argument(
        "kind",
        choices=["strength", "hadamard", "ds", "mols", "bibd", "sliced", "nested", "strong", "strong2plus", "grouped"],
    )
    v.add_argument("input", nargs="?", default="-")
    v.add_argument("--t", type=int)
    v.add_argument("--s", type=int)
    v.add_argument("--s0", type=int)
    v.add_argument("--map", help="shared collapse map, e.g. '0 0 1 1'")
    v.add_argument("--maps", help="per-column maps separated by ';'")
    v.add_argument("--slices", help="row blocks, e.g. '0-3 4-7'")
    v.add_argument("--rows", help="rows of the nested subarray, e.g. '0-3'")
    v.add_argument("--balanced", action="store_true")
    v.add_argument("--groups", help="column groups with strengths, e.g. '0-3:3 4-6:3'")
    for name in ("v", "b", "r", "k", "lam"):
        v.add_argument(f"--{name}", type=int)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("metrics", help="J-characteristics and resolution of two-level arrays")
    m.add_argument("kind", choices=["j", "gr", "regular"])
    m.add_argument("input", nargs="?", default="-")
    m.add_argument("--cols", help="0-based columns, e.g. '0,1,2'")
    m.set_defaults(func=cmd_metrics)

    b = sub.add_parser("bound", help="Rao and LP lower bounds on the run size")
    b.add_argument("k", type=int)
    b.add_argument("s", type=int)
    b.add_argument("t", type=int)
    b.set_defaults(func=cmd_bound)

    sp = sub.add_parser("sample", help="randomized designs and point sets")
    sp.add_argument("kind", choices=["lhc", "points"])
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--method", choices=METHODS, default="oa_lhs")
    sp.add_argument("--placement", choices=PLACEMENTS, default="jitter")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_sample)

    st = sub.add_parser("study", help="replicate variance comparison of sampling methods")
    st.add_argument("input", nargs="?", default="-", help="source array for oa_lhs")
    st.add_argument("--seed", type=int, required=True)
    st.add_argument("--function", choices=sorted(INTEGRANDS), default="additive")
    st.add_argument("--replicates", type=int, default=2000)
    st.add_argument("--methods", help="comma-separated subset of " + ",".join(METHODS))
    st.add_argument("--placement", choices=PLACEMENTS, default="jitter")
    st.set_defaults(func=cmd_study)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # a file path given after options is not bound to the optional positional
    if len(extra) == 1 and not extra[0].startswith("-") and getattr(args, "input", None) == "-":
        args.input = extra[0]
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"oakit: error: {exc}", file=sys.stderr)
        return 2
    except OAError as exc:
        print(f"oakit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"oakit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
