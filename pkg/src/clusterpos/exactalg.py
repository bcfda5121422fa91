"""Exact scalars, sparse multivariate polynomials and dense exact matrices.

Scalars are :class:`fractions.Fraction` (or plain ``int``).  Polynomials live
in a :class:`PolyRing` fixed by an ordered tuple of variable names; mixing
rings raises :class:`VariableSetMismatch`.  Monomials are ordered
graded-lexicographically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    DivisionByZeroPoly,
    InexactDivision,
    NotSquare,
    VariableSetMismatch,
)

Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: Union[str, int]) -> Fraction:
    """Parse ``"p/q"`` or an integer; floats and decimals are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not an exact rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not an exact rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _grlex(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


class PolyRing:
    """Polynomial ring over the rationals in a fixed, ordered set of variables."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self._index = {n: k for k, n in enumerate(self.names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, name: str) -> "MultiPoly":
        k = self._index[name]
        exp = tuple(int(j == k) for j in range(self.nvars))
        return MultiPoly(self, {exp: 1})

    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(self.var(n) for n in self.names)

    def const(self, c: Scalar) -> "MultiPoly":
        c = _norm(c)
        if c == 0:
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * self.nvars: c})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})


class MultiPoly:
    """Sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Scalar]):
        self.ring = ring
        self.terms = {e: _norm(c) for e, c in terms.items() if c != 0}

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # coercion ---------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise VariableSetMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = _norm(s)
        return MultiPoly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return exact_quotient(self, other)

    def __rtruediv__(self, other):
        return exact_quotient(self._coerce(other), self)

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: _norm(other)}
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # inspection ------------------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def constant_value(self) -> Scalar:
        return self.terms.get((0,) * self.ring.nvars, 0)

    @property
    def nterms(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, ...], Scalar]:
        if not self.terms:
            raise DivisionByZeroPoly("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        """Substitute exact scalars for every variable."""
        vals = [Fraction(values[n]) for n in self.ring.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return _norm(total)

    def substitute(self, images: Mapping[str, "MultiPoly"], ring: PolyRing) -> "MultiPoly":
        """Replace each variable by a polynomial of ``ring``."""
        out = ring.zero()
        gens = [images[n] for n in self.ring.names]
        for e, c in self.terms.items():
            term = ring.const(c)
            for g, k in zip(gens, e):
                if k:
                    term = term * g ** k
            out = out + term
        return out

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(n for n, k in zip(self.ring.names, e) if k)
        return used

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def poly_arith(op: str, p: MultiPoly, q: MultiPoly = None) -> MultiPoly:
    if op == "neg":
        return -p
    if isinstance(p, MultiPoly) and isinstance(q, MultiPoly) and p.ring != q.ring:
        raise VariableSetMismatch(f"{p.ring} vs {q.ring}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``s`` with ``p == q * s`` or raise :class:`InexactDivision`."""
    if isinstance(q, MultiPoly) and isinstance(p, MultiPoly) and q.ring != p.ring:
        raise VariableSetMismatch(f"{p.ring} vs {q.ring}")
    if not isinstance(p, MultiPoly):
        p = q.ring.const(p)
    if not isinstance(q, MultiPoly):
        q = p.ring.const(q)
    if not q.terms:
        raise DivisionByZeroPoly("division by the zero polynomial")
    ring = p.ring
    lead_e, lead_c = q.leading()
    lead_c = Fraction(lead_c)
    q_terms = list(q.terms.items())
    rem = dict(p.terms)
    quotient: dict = {}
    while rem:
        e = max(rem, key=_grlex)
        shift = tuple(a - b for a, b in zip(e, lead_e))
        if any(s < 0 for s in shift):
            raise InexactDivision(
                f"{p} is not divisible by {q}", remainder=MultiPoly(ring, rem)
            )
        c = _norm(Fraction(rem[e]) / lead_c)
        quotient[shift] = c
        for qe, qc in q_terms:
            me = tuple(a + b for a, b in zip(qe, shift))
            v = rem.get(me, 0) - c * qc
            if v == 0:
                rem.pop(me, None)
            else:
                rem[me] = _norm(v)
    return MultiPoly(ring, quotient)


def is_zero(x) -> bool:
    if isinstance(x, MultiPoly):
        return not x.terms
    return x == 0


def exact_quotient(a, b):
    """Exact division for scalars and polynomials alike."""
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        if isinstance(b, MultiPoly) and b.is_constant() and b.terms:
            b = b.constant_value()
        if not isinstance(b, MultiPoly):
            if b == 0:
                raise DivisionByZeroPoly("division by zero")
            inv = Fraction(1) / Fraction(b)
            return a * inv
        return poly_exact_div(a, b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return _norm(Fraction(a) / Fraction(b))


class ExactMatrix:
    """Dense rectangular matrix of exact entries (scalars or polynomials)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int = None) -> "ExactMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * m
        out = []
        for row in self.rows:
            nz = [(c, x) for c, x in enumerate(row) if not is_zero(x)]
            new = []
            for col in cols:
                s = 0
                for c, x in nz:
                    y = col[c]
                    if not is_zero(y):
                        s = s + x * y
                new.append(s)
            out.append(new)
        return ExactMatrix(out)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix) or self.shape != other.shape:
            return NotImplemented if not isinstance(other, ExactMatrix) else False
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def is_unitriangular(self) -> bool:
        n, m = self.shape
        if n != m:
            return False
        for i in range(n):
            for j in range(i + 1):
                want = 1 if i == j else 0
                if not (self.rows[i][j] == want):
                    return False
        return True

    def det(self):
        return det(self)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]})"


def det(m: ExactMatrix):
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Works over any integral domain with exact division, so it serves both
    rational and polynomial entries.
    """
    n, k = m.shape
    if n != k:
        raise NotSquare(f"determinant of a {n}x{k} matrix")
    if n == 0:
        return 1
    if n == 1:
        return m.rows[0][0]
    if n == 2:
        (a, b), (c, d) = m.rows
        return a * d - b * c
    a = [list(r) for r in m.rows]
    sign = 1
    prev = None  # previous pivot; nothing to divide by on the first step
    for col in range(n - 1):
        if is_zero(a[col][col]):
            for r in range(col + 1, n):
                if not is_zero(a[r][col]):
                    a[col], a[r] = a[r], a[col]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[col][col]
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                num = a[i][j] * piv - a[i][col] * a[col][j]
                a[i][j] = num if prev is None else exact_quotient(num, prev)
            a[i][col] = 0
        prev = piv
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result
