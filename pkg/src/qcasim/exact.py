"""Exact rational scalars, small dense matrices, and four-square decompositions.

Every quantity in this package is an exact rational number.  Scalars are
``fractions.Fraction`` (aliased ``Rat``), which already guarantees the
canonical form we need: positive denominator, reduced by gcd, value equality.
Vectors and matrices are plain tuples of ``Rat``; the handful of operations
the simulator needs are free functions below.  Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, Sequence

Rat = Fraction

RVec = tuple[Rat, ...]
RMat = tuple[RVec, ...]

ZERO = Rat(0)
ONE = Rat(1)


class DimensionError(ValueError):
    """Structural mismatch: wrong vector length, non-square matrix, empty sum."""


def parse_rat(text: str) -> Rat:
    """Parse "num/den" (or integer shorthand like "2") into a Rat."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
    return value


def format_rat(value: Rat) -> str:
    """Render a Rat canonically: "-3/4", integers without the "/1"."""
    return str(value)


def rvec(entries: Iterable[Rat | int | str]) -> RVec:
    v = tuple(Rat(e) if not isinstance(e, str) else parse_rat(e) for e in entries)
    if not v:
        raise DimensionError("vector must have dimension >= 1")
    return v


def rmat(rows: Iterable[Iterable[Rat | int | str]], scale: Rat | int = 1) -> RMat:
    """Build a square matrix, optionally scaled (handy for 1/2- and 1/2k-scaled operators)."""
    s = Rat(scale)
    m = tuple(tuple(s * (Rat(e) if not isinstance(e, str) else parse_rat(e)) for e in row) for row in rows)
    if not m or any(len(row) != len(m) for row in m):
        raise DimensionError("matrix must be square with dimension >= 1")
    return m


def identity(dim: int) -> RMat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim))


def mat_apply(matrix: RMat, vector: RVec) -> RVec:
    """Exact matrix-vector product."""
    if len(matrix[0]) != len(vector):
        raise DimensionError(f"cannot apply {len(matrix)}x{len(matrix[0])} matrix to {len(vector)}-vector")
    return tuple(sum(row[j] * vector[j] for j in range(len(vector))) for row in matrix)


def mat_mul(a: RMat, b: RMat) -> RMat:
    if len(a[0]) != len(b):
        raise DimensionError("inner dimensions do not match")
    n = len(b[0])
    return tuple(tuple(sum(row[k] * b[k][j] for k in range(len(b))) for j in range(n)) for row in a)


def transpose(matrix: RMat) -> RMat:
    return tuple(zip(*matrix))


def gram_sum(elements: Sequence[RMat]) -> RMat:
    """Sum of transpose-products sum_i E_i^T E_i (entries are real, so this is the adjoint sum)."""
    if not elements:
        raise DimensionError("gram_sum of an empty list")
    dim = len(elements[0])
    if any(len(e) != dim for e in elements):
        raise DimensionError("gram_sum over mixed dimensions")
    out = [[ZERO] * dim for _ in range(dim)]
    for e in elements:
        for i in range(dim):
            for j in range(dim):
                out[i][j] += sum(e[r][i] * e[r][j] for r in range(dim))
    return tuple(tuple(row) for row in out)


def norm_sq(vector: RVec) -> Rat:
    return sum(x * x for x in vector)


def scale_vec(s: Rat, vector: RVec) -> RVec:
    return tuple(s * x for x in vector)


def primitive_direction(vector: RVec) -> tuple[int, ...]:
    """Rescale to a primitive integer vector with the same direction.

    Branch odds along a sampled trajectory depend only on the direction of the
    register vector, so the trajectory engine keeps vectors in this form to
    stop denominators from growing with the step count.  First nonzero entry
    is made positive for a canonical representative.
    """
    from math import gcd, lcm

    if all(x == 0 for x in vector):
        return tuple(0 for _ in vector)
    denom = lcm(*(x.denominator for x in vector))
    ints = [x.numerator * (denom // x.denominator) for x in vector]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def rat_sqrt(value: Rat) -> Rat | None:
    """Exact square root of a non-negative rational, or None when irrational."""
    if value < 0:
        return None
    if is_square(value.numerator) and is_square(value.denominator):
        return Rat(isqrt(value.numerator), isqrt(value.denominator))
    return None


def four_square(n: int) -> tuple[int, int, int, int]:
    """Canonical decomposition n = a^2+b^2+c^2+d^2 with a >= b >= c >= d >= 0.

    Searches descending with backtracking, so the first hit is the
    lexicographically largest decomposition; Lagrange guarantees one exists.
    """
    if n < 0:
        raise ValueError("four_square needs n >= 0")
    for a in range(isqrt(n), -1, -1):
        ra = n - a * a
        for b in range(min(a, isqrt(ra)), -1, -1):
            rb = ra - b * b
            for c in range(min(b, isqrt(rb)), -1, -1):
                d2 = rb - c * c
                d = isqrt(d2)
                if d * d == d2 and d <= c:
                    return (a, b, c, d)
    raise AssertionError(f"unreachable: no four-square decomposition found for {n}")


def four_square_all(n: int) -> Iterator[tuple[int, int, int, int]]:
    """All decompositions n = a^2+b^2+c^2+d^2 with a >= b >= c >= d >= 0."""
    if n < 0:
        raise ValueError("four_square_all needs n >= 0")
    for a in range(isqrt(n), -1, -1):
        ra = n - a * a
        for b in range(min(a, isqrt(ra)), -1, -1):
            rb = ra - b * b
            for c in range(min(b, isqrt(rb)), -1, -1):
                d2 = rb - c * c
                d = isqrt(d2)
                if d * d == d2 and d <= c:
                    yield (a, b, c, d)
