"""Exact rational scalars, column vectors, and dense matrices.

Everything is built from `fractions.Fraction`, so arithmetic is exact.
Floats are rejected outright: a binary float that sneaks into a weight
or constraint would silently break the exact-equality reasoning the
rest of the library depends on. Decimal strings like "2.7" are parsed
exactly (27/10), as are "p/q" forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]


class DimensionError(ValueError):
    """Raised when operand shapes do not line up."""


def parse_scalar(text: str) -> Fraction:
    """Parse a decimal literal ("2.7", "-0.25") or a fraction ("p/q") exactly."""
    if not isinstance(text, str):
        raise ValueError(f"expected a string literal, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    except ValueError:
        raise ValueError(f"malformed rational literal {text!r}") from None


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, string, or Fraction to Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: floats are not exact, pass a string or Fraction"
        )
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_scalar(value: ScalarLike) -> str:
    """Canonical text for a scalar: "3", "-2", or reduced "p/q"."""
    return str(as_scalar(value))


class ColVec:
    """Immutable column vector of exact rationals."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[ScalarLike] = ()):
        self.entries: tuple[Fraction, ...] = tuple(as_scalar(e) for e in entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ColVec) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "ColVec([%s])" % ", ".join(str(e) for e in self.entries)


class Mat:
    """Immutable dense matrix of exact rationals.

    `cols` must be passed explicitly when there are zero rows, since the
    width cannot be inferred from an empty row list. Zero-width rows are
    fine without it.
    """

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[ScalarLike]] = (), cols: int | None = None):
        body = tuple(tuple(as_scalar(e) for e in row) for row in entries)
        if body:
            width = len(body[0])
            for row in body[1:]:
                if len(row) != width:
                    raise DimensionError("matrix rows have differing lengths")
            if cols is not None and cols != width:
                raise DimensionError(f"declared cols={cols} but rows have length {width}")
        else:
            if cols is None:
                raise DimensionError("a matrix with no rows needs an explicit cols")
            width = cols
        if width < 0:
            raise DimensionError("matrix width must be nonnegative")
        self.entries: tuple[tuple[Fraction, ...], ...] = body
        self.rows: int = len(body)
        self.cols: int = width

    def row(self, r: int) -> ColVec:
        return ColVec(self.entries[r])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"Mat({self.rows}x{self.cols}: [{rows}])"


def zeros_vec(dim: int) -> ColVec:
    return ColVec([0] * dim)


def zeros_mat(rows: int, cols: int) -> Mat:
    return Mat([[0] * cols for _ in range(rows)], cols=cols)


def identity(n: int) -> Mat:
    return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)


def dot(v: ColVec, w: ColVec) -> Fraction:
    """Inner product. The empty product is 0."""
    if v.dim != w.dim:
        raise DimensionError(f"dot of dim {v.dim} against dim {w.dim}")
    total = Fraction(0)
    for a, b in zip(v.entries, w.entries):
        total += a * b
    return total


def vec_add(v: ColVec, w: ColVec) -> ColVec:
    if v.dim != w.dim:
        raise DimensionError(f"vec_add of dim {v.dim} against dim {w.dim}")
    return ColVec(a + b for a, b in zip(v.entries, w.entries))


def vec_sub(v: ColVec, w: ColVec) -> ColVec:
    if v.dim != w.dim:
        raise DimensionError(f"vec_sub of dim {v.dim} against dim {w.dim}")
    return ColVec(a - b for a, b in zip(v.entries, w.entries))


def vec_scale(s: ScalarLike, v: ColVec) -> ColVec:
    f = as_scalar(s)
    return ColVec(f * a for a in v.entries)


def mat_add(a: Mat, b: Mat) -> Mat:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionError(f"mat_add of {a.rows}x{a.cols} against {b.rows}x{b.cols}")
    return Mat(
        ([x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)),
        cols=a.cols,
    )


def scalar_mult(s: ScalarLike, m: Mat) -> Mat:
    f = as_scalar(s)
    return Mat(([f * e for e in row] for row in m.entries), cols=m.cols)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise DimensionError(f"mat_mul of {a.rows}x{a.cols} against {b.rows}x{b.cols}")
    return Mat(
        (
            [
                sum((a.entries[i][k] * b.entries[k][j] for k in range(a.cols)), Fraction(0))
                for j in range(b.cols)
            ]
            for i in range(a.rows)
        ),
        cols=b.cols,
    )


def mat_vec_mul(m: Mat, x: ColVec) -> ColVec:
    if m.cols != x.dim:
        raise DimensionError(f"mat_vec_mul of {m.rows}x{m.cols} against dim {x.dim}")
    return ColVec(
        sum((row[k] * x.entries[k] for k in range(m.cols)), Fraction(0))
        for row in m.entries
    )


def transpose(m: Mat) -> Mat:
    return Mat(
        ([m.entries[i][j] for i in range(m.rows)] for j in range(m.cols)),
        cols=m.rows,
    )


def block_diag(a: Mat, b: Mat) -> Mat:
    """Stack a on the upper left and b on the lower right, zeros elsewhere."""
    cols = a.cols + b.cols
    body = [list(row) + [Fraction(0)] * b.cols for row in a.entries]
    body += [[Fraction(0)] * a.cols + list(row) for row in b.entries]
    return Mat(body, cols=cols)


def vec_concat(v: ColVec, w: ColVec) -> ColVec:
    return ColVec(v.entries + w.entries)


def extend_vec_bottom(v: ColVec, new_dim: int) -> ColVec:
    """Pad with zeros below: the original entries keep their positions."""
    if new_dim < v.dim:
        raise DimensionError(f"cannot extend dim {v.dim} down to {new_dim}")
    return ColVec(v.entries + (Fraction(0),) * (new_dim - v.dim))


def extend_vec_top(v: ColVec, new_dim: int) -> ColVec:
    """Pad with zeros above: the original entries shift to the bottom."""
    if new_dim < v.dim:
        raise DimensionError(f"cannot extend dim {v.dim} down to {new_dim}")
    return ColVec((Fraction(0),) * (new_dim - v.dim) + v.entries)
