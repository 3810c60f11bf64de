"""Command-line surface: enumeration, tables, graphs, signs, determinants,
facets, signature/Schur checks, extraction, and the dual Cauchy identity.

Exit codes: 0 for success or a "yes" verdict, 1 for a "no" verdict (with
the witness on stdout), 2 for usage or resource errors.  Output is
deterministic for a fixed command line and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
from fractions import Fraction

from . import complexes, redgraph, tensors
from .coxeter import (
    Budget,
    BudgetExceededError,
    CoxeterSystem,
    abelian_spectrum,
    longest_element_reduced_words,
)
from .polyring import MPoly, conjugate_partition, exact_divide, partitions_in_box, schur, x_var
from .tensors import ParameterTensor, det_factored

USAGE_ERROR = 2
VERDICT_NO = 1


def _worker_cap() -> int:
    raw = os.environ.get("SUBWORD_LAB_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise SystemExit(f"SUBWORD_LAB_THREADS must be an integer, got {raw!r}")
    if cap < 1:
        raise SystemExit("SUBWORD_LAB_THREADS must be >= 1")
    return cap


def _system(args) -> CoxeterSystem:
    try:
        return CoxeterSystem.from_name(args.type)
    except ValueError as exc:
        raise SystemExit(str(exc))


def _budget(args) -> Budget:
    return Budget(max_words=args.budget_words, max_seconds=args.budget_seconds)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)


def _parse_x(text: str | None, length: int) -> list[Fraction]:
    if text is None:
        return [Fraction(i) for i in range(1, length + 1)]
    values = [Fraction(tok) for tok in text.split(",")]
    if len(values) != length:
        raise SystemExit(f"--x needs {length} comma-separated rationals")
    return values


def _load_matrix(path: str) -> complexes.Matrix:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        return complexes.parse_matrix_json(text)
    return complexes.parse_matrix_csv(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    sys_ = _system(args)
    budget = _budget(args)
    try:
        if args.count_only:
            count = 0
            for _ in longest_element_reduced_words(sys_, budget=budget):
                count += 1
            _emit(args, f"{count}\n")
        else:
            lines = []
            for w in longest_element_reduced_words(sys_, budget=budget):
                lines.append(sys_.format_word(w))
            _emit(args, "\n".join(lines) + "\n")
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc} (partial progress: {exc.partial})", file=_sys.stderr)
        return USAGE_ERROR
    return 0


def cmd_abelian(args) -> int:
    sys_ = _system(args)
    try:
        spec = abelian_spectrum(sys_, budget=_budget(args))
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=_sys.stderr)
        return USAGE_ERROR
    vectors = spec.sorted_vectors()
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "type": sys_.name,
                    "vectors": [list(v) for v in vectors],
                    "nu": spec.nu,
                    "mu": list(spec.mu),
                    "reduced_words": spec.word_count,
                },
                indent=2,
            )
            + "\n",
        )
    elif args.format == "csv":
        _emit(args, "\n".join(",".join(map(str, v)) for v in vectors) + "\n")
    else:
        lines = [f"abelian vectors of the longest element of {sys_.name}:"]
        lines += ["  (" + ", ".join(map(str, v)) + ")" for v in vectors]
        lines.append(f"count: {len(vectors)}")
        lines.append(f"nu: {spec.nu}")
        lines.append("mu: (" + ", ".join(map(str, spec.mu)) + ")")
        lines.append(f"reduced words: {spec.word_count}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_graph(args) -> int:
    sys_ = _system(args)
    word = sys_.parse_word(args.word) if args.word else None
    g = redgraph.build_graph(sys_, word)
    if args.minor != "none":
        g = redgraph.contract_preset(g, args.minor)
    if args.format == "dot":
        _emit(args, redgraph.to_dot(g))
    else:
        _emit(args, redgraph.to_json(g))
    return 0


def cmd_signs(args) -> int:
    sys_ = _system(args)
    g = redgraph.build_graph(sys_)
    if args.kind == "S":
        assignment = redgraph.s_sign_assignment(sys_, graph=g)
    elif args.kind == "T":
        assignment = redgraph.t_sign(sys_, normalization=args.normalization, graph=g)
    else:
        assignment = redgraph.punctual_sign(sys_, normalization=args.normalization, graph=g)
    if args.format == "dot":
        _emit(args, redgraph.to_dot(g, assignment))
    elif args.format == "json":
        _emit(args, redgraph.to_json(g, assignment))
    else:
        lines = [
            f"{sys_.format_word(w)} {'+' if s > 0 else '-'}"
            for w, s in sorted(assignment.values.items())
        ]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_det(args) -> int:
    sys_ = _system(args)
    word = sys_.parse_word(args.word)
    if args.tensor:
        with open(args.tensor) as fh:
            tensor = ParameterTensor.from_json(fh.read())
    elif args.counting_word:
        tensor = tensors.counting_parameter_tensor(args.counting_word, args.m)
    else:
        raise SystemExit("det needs --tensor FILE or --counting-word C")
    cert = det_factored(word, tensor)
    if args.format == "json":
        payload = {
            "word": sys_.format_word(word),
            "sign": cert.sign,
            "vandermonde_divisor": str(cert.divisor),
            "terms": [
                {
                    "columns": [[s, k] for s, k in cols],
                    "minor": str(minor),
                    "schur": str(schur_factor),
                }
                for cols, minor, schur_factor in cert.terms
            ],
            "support_size": cert.support_size,
            "determinant": str(cert.polynomial),
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"word: {sys_.format_word(word)}",
            f"sign: {'+' if cert.sign > 0 else '-'}1",
            f"vandermonde divisor: {cert.divisor}",
            f"non-zero minors ({len(cert.terms)} of {cert.support_size}):",
        ]
        for cols, minor, schur_factor in cert.terms:
            cols_text = ", ".join(f"(s{s},{k})" for s, k in cols)
            lines.append(f"  {{{cols_text}}}: minor {minor}, schur factor {schur_factor}")
        lines.append(f"determinant: {cert.polynomial}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_facets(args) -> int:
    sys_ = _system(args)
    p = sys_.parse_word(args.word)
    sc = complexes.build_complex(sys_, p)
    if args.format == "json":
        payload = {
            "type": sys_.name,
            "word": sys_.format_word(p),
            "facets": [list(f) for f in sc.facets],
            "non_vertices": list(sc.non_vertices),
            "facet_types": [sys_.format_word(sc.combinatorial_type(f)) for f in sc.facets],
        }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"facets of the subword complex of {sys_.format_word(p)} in {sys_.name}:"]
        for f in sc.facets:
            ctype = sys_.format_word(sc.combinatorial_type(f))
            lines.append(f"  {{{', '.join(map(str, f))}}}  type {ctype}")
        lines.append(f"non-vertices: {{{', '.join(map(str, sc.non_vertices))}}}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    sys_ = _system(args)
    p = sys_.parse_word(args.word)
    xs = _parse_x(args.x, len(p))
    if args.what == "signature":
        if not args.matrix:
            raise SystemExit("check signature needs --matrix FILE (csv or json)")
        matrix = _load_matrix(args.matrix)
        try:
            data = complexes.GaleMatrixData(matrix, p, xs)
        except ValueError as exc:
            raise SystemExit(str(exc))
        verdict = complexes.check_signature_matrix(data, sys_)
    else:
        if not args.tensor:
            raise SystemExit("check theorem-c needs --tensor FILE")
        with open(args.tensor) as fh:
            tensor = ParameterTensor.from_json(fh.read())
        verdict = complexes.check_schur_conditions(tensor, p, xs, sys_)
    _emit(args, verdict.to_json() + "\n")
    return 0 if verdict.ok else VERDICT_NO


def cmd_extract(args) -> int:
    sys_ = _system(args)
    p = sys_.parse_word(args.word)
    xs = _parse_x(args.x, len(p))
    if not args.matrix:
        raise SystemExit("extract needs --matrix FILE (csv or json)")
    matrix = _load_matrix(args.matrix)
    try:
        data = complexes.GaleMatrixData(matrix, p, xs)
    except ValueError as exc:
        raise SystemExit(str(exc))
    tensor = complexes.extract_parameter_tensor(data)
    _emit(args, tensor.to_json() + "\n")
    return 0


def cmd_dual_cauchy(args) -> int:
    a, b = args.a, args.b
    word = (1,) * a + (2,) * b
    rows = [[Fraction(0)] * (2 * (a + b)) for _ in range(a + b)]
    for k in range(a + b):
        rows[k][k] = Fraction(1)  # identity block: letter 1 curve 1, x, x^2, ...
    for k in range(a + b):
        # letter-2 block: alternating reversed powers
        rows[k][(a + b) + (a + b - 1 - k)] = Fraction((-1) ** (a + b - 1 - k))
    tensor = ParameterTensor(a + b, 2, a + b, tuple(tuple(r) for r in rows))
    cert = det_factored(word, tensor)
    lhs = exact_divide(cert.polynomial, cert.divisor)
    ys = [x_var(a + j) for j in range(1, b + 1)]
    xs = [x_var(i) for i in range(1, a + 1)]
    product_form = MPoly.constant(1)
    for xi in xs:
        for yj in ys:
            product_form = product_form * (1 + xi * yj)
    pairing = MPoly.constant(0)
    for lam in partitions_in_box(a, b):
        pairing = pairing + schur(lam, tuple(range(1, a + 1))) * schur(
            conjugate_partition(lam) + (0,) * (b - len(conjugate_partition(lam))),
            tuple(range(a + 1, a + b + 1)),
        )
    unit_minors = len(cert.terms)
    ok = lhs == product_form == pairing
    lines = [
        f"a={a} b={b}",
        f"non-zero minors: {unit_minors} (all 1: {all(m == 1 for _, m, _ in cert.terms)})",
        f"det/divisor == prod(1 + x_i y_j): {lhs == product_form}",
        f"det/divisor == sum_schur_pairs: {lhs == pairing}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else VERDICT_NO


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subword-lab",
        description="exact reduced-word combinatorics, sign functions, and chirotope checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, word_required=False):
        p.add_argument("--type", required=True, help="Coxeter type: A3, B4, D5, H3, I2:7")
        if word_required is not None:
            p.add_argument("--word", required=word_required, help="word as digits (or comma-separated)")
        p.add_argument("--format", default="table", choices=["table", "json", "csv", "dot"])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget-words", type=int, default=10**8)
        p.add_argument("--budget-seconds", type=float, default=600.0)
        p.add_argument("--out", default=None, help="write output to this path")

    p = sub.add_parser("enumerate", help="stream reduced words of the longest element")
    common(p, word_required=None)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("abelian", help="abelian vectors of the longest element")
    common(p, word_required=None)
    p.set_defaults(func=cmd_abelian)

    p = sub.add_parser("graph", help="graph of reduced expressions and its minors")
    common(p)
    p.add_argument("--minor", default="none", choices=list(redgraph.CONTRACTION_PRESETS))
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("signs", help="sign assignments on reduced words")
    common(p, word_required=None)
    p.add_argument("--kind", default="S", choices=["S", "T", "punctual"])
    p.add_argument("--normalization", default="greedy", choices=["greedy", "lex-least"])
    p.set_defaults(func=cmd_signs)

    p = sub.add_parser("det", help="factored model-matrix determinant")
    common(p, word_required=True)
    p.add_argument("--tensor", default=None, help="parameter tensor JSON file")
    p.add_argument("--counting-word", default=None, help="built-in tensor: 1, 12, 123, 213")
    p.add_argument("--m", type=int, default=None, help="repetition parameter (symbolic when omitted)")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("facets", help="facets of a subword complex")
    common(p, word_required=True)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("check", help="signature-matrix or Schur-side verdicts")
    p.add_argument("what", choices=["signature", "theorem-c"])
    common(p, word_required=True)
    p.add_argument("--matrix", default=None, help="Gale matrix file (csv or json)")
    p.add_argument("--tensor", default=None, help="parameter tensor JSON file")
    p.add_argument("--x", default=None, help="comma-separated rationals, default 1,2,...")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extract", help="interpolate a parameter tensor from a Gale matrix")
    common(p, word_required=True)
    p.add_argument("--matrix", default=None, help="Gale matrix file (csv or json)")
    p.add_argument("--x", default=None, help="comma-separated rationals, default 1,2,...")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("dual-cauchy", help="verify the dual Cauchy factorization")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=4)
    p.add_argument("--format", default="table", choices=["table", "json"])
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dual_cauchy)

    return parser


def main(argv: list[str] | None = None) -> int:
    _worker_cap()  # validate the env var even though work is sequential
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with its own code; normalize usage errors to 2
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=_sys.stderr)
            return USAGE_ERROR
        return exc.code if exc.code is not None else 0
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=_sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
