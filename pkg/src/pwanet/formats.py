"""On-disk formats: JSON documents for networks and PWA functions, SMT export.

Scalars in both JSON schemas are strings, never JSON numbers, so nothing is
ever routed through floating point: "2.7" means exactly 27/10, and "p/q"
forms are accepted too. Serialization always writes the canonical reduced
form, which makes serialize(parse(serialize(f))) byte-identical.

Network document:

    {"input_dim": 2, "output_dim": 2,
     "layers": [{"kind": "linear", "weights": [["2.7", "0"], ["1", "0.01"]],
                 "bias": ["1", "0.25"]},
                {"kind": "relu", "dim": 2},
                {"kind": "output"}]}

An {"kind": "unknown", "in_dim": a, "out_dim": b} layer marks a layer the
file cannot describe; it evaluates to nothing and blocks compilation.

PWA document:

    {"in_dim": 1, "out_dim": 1, "univalence": "unchecked",
     "pieces": [{"constraints": [{"c": ["1"], "b": "0"}],
                 "M": [["0"]], "b": ["0"]}, ...]}

"univalence" is one of "unchecked", "verified", "refuted"; a refuted
document does not carry the witness.

The SMT export targets QF_LRA: constants x_0..x_{n-1} and y_0..y_{m-1},
and per piece one assertion (=> <membership> <output rows>). It contains
no check-sat, so callers can conjoin their own assertions after it.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .numeric import ColVec, Mat, format_scalar, parse_scalar
from .polyhedra import LinearConstraint, Polyhedron
from .pwa import UNCHECKED, REFUTED, VERIFIED, AffinePiece, PwaFn
from .network import Network, OutputLayer, UnknownLayer, nn_linear, nn_relu

_UNIVALENCE_TAGS = (UNCHECKED, VERIFIED, REFUTED)


class ParseError(ValueError):
    """The document text does not follow the schema."""


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _get(obj, key, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _nat(value, where) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"{where}: expected a nonnegative integer")
    return value


def _scalar(value, where) -> Fraction:
    if not isinstance(value, str):
        raise ParseError(f"{where}: scalars must be strings, got {value!r}")
    try:
        return parse_scalar(value)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _scalar_list(value, where) -> list[Fraction]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list")
    return [_scalar(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _vector(value, dim, where) -> ColVec:
    entries = _scalar_list(value, where)
    if len(entries) != dim:
        raise ParseError(f"{where}: expected {dim} entries, got {len(entries)}")
    return ColVec(entries)


def _matrix(value, rows, cols, where) -> Mat:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of rows")
    if len(value) != rows:
        raise ParseError(f"{where}: expected {rows} rows, got {len(value)}")
    body = [_vector(row, cols, f"{where}[{i}]").entries for i, row in enumerate(value)]
    return Mat(body, cols=cols)


def parse_network(text: str) -> Network:
    """Read a network document. Chain consistency is validate_dims's job."""
    doc = _load_json(text)
    input_dim = _nat(_get(doc, "input_dim", "network"), "input_dim")
    output_dim = _nat(_get(doc, "output_dim", "network"), "output_dim")
    raw_layers = _get(doc, "layers", "network")
    if not isinstance(raw_layers, list):
        raise ParseError("layers: expected a list")
    layers = []
    for i, raw in enumerate(raw_layers):
        where = f"layer {i}"
        kind = _get(raw, "kind", where)
        if kind == "linear":
            raw_weights = _get(raw, "weights", where)
            if not isinstance(raw_weights, list) or not raw_weights:
                raise ParseError(f"{where}: weights must be a non-empty list of rows")
            first = raw_weights[0]
            if not isinstance(first, list):
                raise ParseError(f"{where}: weights must be a list of rows")
            weights = _matrix(raw_weights, len(raw_weights), len(first), f"{where}.weights")
            bias = _vector(_get(raw, "bias", where), weights.rows, f"{where}.bias")
            layers.append(nn_linear(weights, bias))
        elif kind == "relu":
            layers.append(nn_relu(_nat(_get(raw, "dim", where), f"{where}.dim")))
        elif kind == "output":
            layers.append(OutputLayer(output_dim))
        elif kind == "unknown":
            layers.append(
                UnknownLayer(
                    _nat(_get(raw, "in_dim", where), f"{where}.in_dim"),
                    _nat(_get(raw, "out_dim", where), f"{where}.out_dim"),
                )
            )
        else:
            raise ParseError(f"{where}: unknown kind {kind!r}")
    return Network(input_dim, output_dim, tuple(layers))


def parse_pwa(text: str) -> PwaFn:
    doc = _load_json(text)
    in_dim = _nat(_get(doc, "in_dim", "function"), "in_dim")
    out_dim = _nat(_get(doc, "out_dim", "function"), "out_dim")
    tag = _get(doc, "univalence", "function")
    if tag not in _UNIVALENCE_TAGS:
        raise ParseError(f"univalence: unknown tag {tag!r}")
    raw_pieces = _get(doc, "pieces", "function")
    if not isinstance(raw_pieces, list):
        raise ParseError("pieces: expected a list")
    pieces = []
    for i, raw in enumerate(raw_pieces):
        where = f"piece {i}"
        raw_constraints = _get(raw, "constraints", where)
        if not isinstance(raw_constraints, list):
            raise ParseError(f"{where}: constraints must be a list")
        constraints = []
        for k, rc in enumerate(raw_constraints):
            cwhere = f"{where} constraint {k}"
            c = _vector(_get(rc, "c", cwhere), in_dim, f"{cwhere}.c")
            b = _scalar(_get(rc, "b", cwhere), f"{cwhere}.b")
            constraints.append(LinearConstraint(c, b))
        m = _matrix(_get(raw, "M", where), out_dim, in_dim, f"{where}.M")
        b = _vector(_get(raw, "b", where), out_dim, f"{where}.b")
        pieces.append(AffinePiece(Polyhedron(in_dim, tuple(constraints)), m, b))
    return PwaFn(in_dim, out_dim, pieces, univalence=tag)


def serialize_pwa(fn: PwaFn) -> str:
    doc = {
        "in_dim": fn.in_dim,
        "out_dim": fn.out_dim,
        "univalence": fn.univalence,
        "pieces": [
            {
                "constraints": [
                    {
                        "c": [format_scalar(a) for a in lc.c],
                        "b": format_scalar(lc.b),
                    }
                    for lc in piece.polyhedron.constraints
                ],
                "M": [[format_scalar(a) for a in row] for row in piece.M.entries],
                "b": [format_scalar(a) for a in piece.b],
            }
            for piece in fn.pieces
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _smt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator) if q >= 0 else f"(- {-q.numerator})"
    core = f"(/ {abs(q.numerator)} {q.denominator})"
    return core if q > 0 else f"(- {core})"


def _smt_linear(coeffs, constant=None) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        terms.append(f"x_{k}" if c == 1 else f"(* {_smt_rat(c)} x_{k})")
    if constant is not None and constant != 0:
        terms.append(_smt_rat(constant))
    if not terms:
        return "0"
    if len(terms) == 1:
        return terms[0]
    return "(+ " + " ".join(terms) + ")"


def _smt_and(parts) -> str:
    parts = list(parts)
    if not parts:
        return "true"
    if len(parts) == 1:
        return parts[0]
    return "(and " + " ".join(parts) + ")"


def _smt_or(parts) -> str:
    parts = list(parts)
    if not parts:
        return "false"
    if len(parts) == 1:
        return parts[0]
    return "(or " + " ".join(parts) + ")"


def _piece_condition(piece: AffinePiece) -> str:
    return _smt_and(
        f"(<= {_smt_linear(lc.c.entries)} {_smt_rat(lc.b)})"
        for lc in piece.polyhedron.constraints
    )


def export_smt(fn: PwaFn, assert_domain: bool = False) -> str:
    """Emit a QF_LRA script relating inputs x_* to outputs y_* piece by piece.

    Each piece contributes one implication: membership in its polyhedron
    forces every output row to equal its affine expression. With
    assert_domain, one more assertion places x inside some piece.
    """
    lines = ["(set-logic QF_LRA)"]
    for k in range(fn.in_dim):
        lines.append(f"(declare-const x_{k} Real)")
    for r in range(fn.out_dim):
        lines.append(f"(declare-const y_{r} Real)")
    for piece in fn.pieces:
        rows = _smt_and(
            f"(= y_{r} {_smt_linear(piece.M.entries[r], piece.b[r])})"
            for r in range(fn.out_dim)
        )
        lines.append(f"(assert (=> {_piece_condition(piece)} {rows}))")
    if assert_domain:
        lines.append(f"(assert {_smt_or(_piece_condition(p) for p in fn.pieces)})")
    return "\n".join(lines) + "\n"
