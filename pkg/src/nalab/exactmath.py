"""Exact scalar arithmetic, sparse multivariate polynomials and exact linear algebra.

Scalars are either ``fractions.Fraction`` (the rational field) or ``QuadExt``
(a real quadratic extension a + b*sqrt(d) with rational a, b).  ``ComplexScalar``
is a complex pair over a quadratic extension; it only appears as a construction
intermediate and is never stored in an algebra.  All arithmetic is exact: there
is no floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union


class FieldMismatchError(ValueError):
    """Operands do not live in the same field tower."""


class DivisionByZeroError(ZeroDivisionError):
    """Exact division by the zero scalar."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class QuadExt:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    d is a small positive square-free integer fixed per algebra (d=3 for the
    pseudo-octonion construction).  Representation is unique, so equality and
    hashing are component-wise.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 3):
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        if not (isinstance(d, int) and d > 1):
            raise ValueError("d must be an integer > 1")
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldMismatchError(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(o.a - self.a, o.b - self.b, self.d)

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise DivisionByZeroError("inverse of zero quadratic element")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def conjugate_root(self) -> "QuadExt":
        """The field conjugate a - b*sqrt(d)."""
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2 (rational)."""
        return self.a * self.a - self.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, d={self.d})"

    def __str__(self):
        return format_scalar(self)


class ComplexScalar:
    """Complex number over a quadratic extension: re + im*i with re, im QuadExt."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None, d: int = 3):
        if not isinstance(re, QuadExt):
            re = QuadExt(re, 0, d)
        if im is None:
            im = QuadExt(0, 0, re.d)
        elif not isinstance(im, QuadExt):
            im = QuadExt(im, 0, re.d)
        if re.d != im.d:
            raise FieldMismatchError("real and imaginary parts over different fields")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexScalar is immutable")

    def _coerce(self, other) -> "ComplexScalar":
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return ComplexScalar(other if isinstance(other, QuadExt)
                                 else QuadExt(other, 0, self.re.d))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ComplexScalar({self.re!r}, {self.im!r})"


Scalar = Union[Fraction, QuadExt]


def scalar_is_zero(x) -> bool:
    if isinstance(x, QuadExt):
        return x.is_zero()
    return x == 0


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact field arithmetic with explicit error contract.

    op is one of add, sub, mul, div.  Division by zero raises
    DivisionByZeroError; mixing distinct quadratic extensions raises
    FieldMismatchError.
    """
    if isinstance(a, QuadExt) and isinstance(b, QuadExt) and a.d != b.d:
        raise FieldMismatchError(f"sqrt({a.d}) vs sqrt({b.d})")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if scalar_is_zero(b):
            raise DivisionByZeroError("scalar division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def format_scalar(x: Scalar) -> str:
    """Canonical text form: 'n', 'n/m', or 'a+b*sqrt3' / 'a-b*sqrt3'."""
    if isinstance(x, QuadExt):
        if x.b == 0:
            return str(x.a)
        sep = "+" if x.b > 0 else "-"
        return f"{x.a}{sep}{abs(x.b)}*sqrt{x.d}"
    return str(x)


def parse_scalar(text: str, d: int = 3) -> Scalar:
    """Parse the scalar grammar R | R+R*sqrtD | R-R*sqrtD, R = [-]digits[/digits]."""
    import re

    t = text.strip().replace(" ", "")
    m = re.fullmatch(
        rf"(-?\d+(?:/\d+)?)(?:([+-])(-?\d+(?:/\d+)?)\*sqrt{d})?", t
    )
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    a = Fraction(m.group(1))
    if m.group(2) is None:
        return a
    b = Fraction(m.group(3))
    if m.group(2) == "-":
        b = -b
    return QuadExt(a, b, d)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse multivariate polynomial: map from exponent tuple to nonzero Scalar.

    Variables are positional (x_0 .. x_{nvars-1}); no zero coefficients are
    ever stored, so the zero polynomial has an empty term map and equality is
    map equality.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        object.__setattr__(self, "nvars", nvars)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if not scalar_is_zero(c):
                    clean[tuple(exps)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int, c=Fraction(1)) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("polynomial rings of different arity")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = MultiPoly.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if scalar_is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            if scalar_is_zero(other):
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars,
                             {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if scalar_is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v = v * x
            acc = v + acc
        return acc

    def _lead(self):
        """Leading (exponent, coeff) in lexicographic order."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact polynomial quotient self/other; raises if division is inexact.

        Used by fraction-free elimination, where every division is exact by
        the Sylvester determinant identity.
        """
        if isinstance(other, (int, Fraction, QuadExt)):
            other = MultiPoly.const(self.nvars, other)
        self._check(other)
        if other.is_zero():
            raise DivisionByZeroError("polynomial division by zero")
        rem = dict(self.terms)
        quo: dict = {}
        de, dc = other._lead()
        while rem:
            le = max(rem)
            lc = rem[le]
            qe = tuple(a - b for a, b in zip(le, de))
            if any(k < 0 for k in qe):
                raise ValueError("inexact polynomial division")
            qc = lc / dc
            quo[qe] = quo.get(qe, 0) + qc
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(qe, e2))
                s = rem.get(e, 0) - qc * c2
                if scalar_is_zero(s):
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return MultiPoly(self.nvars, quo)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e) if k
            )
            bits.append(f"{format_scalar(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def _entry_is_zero(x) -> bool:
    if isinstance(x, MultiPoly):
        return x.is_zero()
    return scalar_is_zero(x)


def _entry_exact_div(x, y):
    if isinstance(x, MultiPoly) or isinstance(y, MultiPoly):
        if not isinstance(x, MultiPoly):
            x = MultiPoly.const(y.nvars, x)
        return x.exact_div(y)
    return x / y


def poly_rank(matrix: Sequence[Sequence]) -> int:
    """Rank over the fraction field, by fraction-free Bareiss elimination.

    Entries may be MultiPoly over one ring, or plain scalars.  Pivots are the
    first nonzero entry in column order, so the result is deterministic.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix is not rectangular")
    rank = 0
    prev = None
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if not _entry_is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            x = rows[r][col]
            for c in range(ncols):
                num = p * rows[r][c] - x * rows[rank][c]
                rows[r][c] = num if prev is None else _entry_exact_div(num, prev)
        prev = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def span_membership(target: Sequence[Scalar],
                    generators: Sequence[Sequence[Scalar]]):
    """Decide whether target is a linear combination of the generators.

    Returns (inside, coefficients); when inside, the coefficients exactly
    reproduce the target in generator order.  Works over Q or a fixed Q(sqrt d).
    """
    n = len(target)
    if any(len(g) != n for g in generators):
        raise ValueError("vector length mismatch")
    k = len(generators)
    # solve  sum_j coeff_j * generators[j] = target  by column elimination
    aug = [[generators[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    pivots = []  # (row, col)
    row = 0
    for col in range(k):
        piv = None
        for r in range(row, n):
            if not scalar_is_zero(aug[r][col]):
                piv = r
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and not scalar_is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
    # inconsistent iff a zero row has nonzero rhs
    for r in range(row, n):
        if not scalar_is_zero(aug[r][k]):
            return False, None
    coeffs = [Fraction(0)] * k
    for r, c in pivots:
        coeffs[c] = aug[r][k]
    return True, coeffs


def solve_affine(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]):
    """Solve M v = rhs exactly; returns (particular, nullspace_basis) or None.

    The nullspace basis spans all homogeneous solutions, so the full solution
    set is particular + span(nullspace_basis).
    """
    m = len(matrix)
    if m == 0:
        return [], []
    n = len(matrix[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    row = 0
    pivot_cols = []
    for col in range(n):
        piv = None
        for r in range(row, m):
            if not scalar_is_zero(aug[r][col]):
                piv = r
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(m):
            if r != row and not scalar_is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
    for r in range(row, m):
        if not scalar_is_zero(aug[r][n]):
            return None
    particular = [Fraction(0)] * n
    for r, c in enumerate(pivot_cols):
        particular[c] = aug[r][n]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, c in enumerate(pivot_cols):
            v[c] = -aug[r][fc]
        basis.append(v)
    return particular, basis


def det(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant by Gaussian elimination over the field."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of non-square matrix")
    val = Fraction(1)
    sign = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not scalar_is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        p = rows[col][col]
        val = val * p
        inv = 1 / p if isinstance(p, Fraction) else p.inverse()
        for r in range(col + 1, n):
            if not scalar_is_zero(rows[r][col]):
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return val * sign if sign == 1 else -val


def scalar_rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a scalar matrix by Gaussian elimination (field arithmetic)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if not scalar_is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        inv = 1 / pv if isinstance(pv, Fraction) else pv.inverse()
        for r in range(rank + 1, len(rows)):
            if not scalar_is_zero(rows[r][col]):
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank
