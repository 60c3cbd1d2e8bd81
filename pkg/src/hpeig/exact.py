"""Exact scalars and dense linear algebra.

Two coefficient fields are supported:

* specialized mode: ``fractions.Fraction`` (plain ``int`` is accepted wherever a
  rational is expected), with the coupling constant fixed to a rational value;
* symbolic mode: :class:`ThetaRational`, reduced rational functions in the
  coupling constant with rational coefficients.

Both behave as Python numbers, so the same matrix and polynomial code runs over
either field.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

DEFAULT_SYMBOLIC_CAP = 24
THETA_SYMBOL = "θ"
NEG_INF = float("-inf")


class SymbolicCapError(ValueError):
    """Raised when a symbolic-mode computation exceeds the dimension cap."""


class PoleError(ZeroDivisionError):
    pass


class SingularSystemError(ArithmeticError):
    """A linear system expected to have a unique solution does not."""


def symbolic_cap(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("HP_SYMBOLIC_CAP")
    return int(env) if env else DEFAULT_SYMBOLIC_CAP


def _norm(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def div(a, b):
    """``a / b`` that stays exact when both operands are plain integers."""
    if isinstance(a, int) and isinstance(b, int):
        return _norm(Fraction(a, b))
    return a / b


def format_rational(c: Rational) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# univariate polynomials over Q


class ThetaPoly:
    """Univariate polynomial with rational coefficients, lowest power first.

    Used for polynomials in the coupling constant and, in specialized mode,
    for characteristic polynomials over Q.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Rational, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "ThetaPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c: Rational) -> "ThetaPoly":
        return cls._raw((c,)) if c != 0 else ZERO_POLY

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "ThetaPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> float | int:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ThetaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((other,) if other != 0 else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "ThetaPoly") -> "ThetaPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return ThetaPoly._raw(a)
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ThetaPoly(out)

    def __neg__(self) -> "ThetaPoly":
        return ThetaPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ThetaPoly") -> "ThetaPoly":
        return self + (-other)

    def __mul__(self, other) -> "ThetaPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO_POLY
            return ThetaPoly._raw(tuple(_norm(c * other) for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(b) == 1:
            return self * b[0]
        if len(a) == 1:
            return other * a[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return ThetaPoly._raw(tuple(_norm(c) for c in out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ThetaPoly":
        result, base = ONE_POLY, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "ThetaPoly") -> tuple["ThetaPoly", "ThetaPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        db = len(other.coeffs) - 1
        lead = Fraction(other.coeffs[-1])
        if len(rem) - 1 < db:
            return ZERO_POLY, self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = div(rem[k + db], lead)
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return ThetaPoly(_norm(c) for c in quot), ThetaPoly(_norm(c) for c in rem[:db])

    def __floordiv__(self, other: "ThetaPoly") -> "ThetaPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "ThetaPoly") -> "ThetaPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "ThetaPoly") -> "ThetaPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "ThetaPoly":
        return ThetaPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "ThetaPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self / self.coeffs[-1]

    def __truediv__(self, c: Rational) -> "ThetaPoly":
        c = Fraction(c)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return ThetaPoly._raw(tuple(_norm(x / c) for x in self.coeffs))

    def integer_primitive(self) -> tuple[Fraction, tuple[int, ...]]:
        """Return ``(scale, ints)`` with ``self == scale * ints`` and ints primitive, lead > 0."""
        if not self.coeffs:
            return Fraction(0), ()
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), tuple(v // g for v in ints)

    def __repr__(self) -> str:
        return f"ThetaPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO_POLY = ThetaPoly._raw(())
ONE_POLY = ThetaPoly._raw((1,))
THETA_POLY = ThetaPoly._raw((0, 1))


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (lowest power first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, c in enumerate(b):
            a[shift + j] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return a


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if a and a[-1] < 0:
        g = -g
    return [v // g for v in a] if g else a


def poly_gcd(a: ThetaPoly, b: ThetaPoly) -> ThetaPoly:
    """Monic gcd over Q via the primitive-part Euclidean algorithm."""
    if not a.coeffs:
        return b.monic()
    if not b.coeffs:
        return a.monic()
    if len(a.coeffs) == 1 or len(b.coeffs) == 1:
        return ONE_POLY
    x = list(a.integer_primitive()[1])
    y = list(b.integer_primitive()[1])
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem(x, y)
        x, y = y, _primitive(r)
    return ThetaPoly(x).monic()


# ---------------------------------------------------------------------------
# rational functions in theta


class ThetaRational:
    """Reduced rational function ``num/den`` in the coupling constant.

    The denominator is monic and coprime to the numerator, so equal values
    have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ThetaPoly | Rational = ZERO_POLY, den: ThetaPoly | Rational = ONE_POLY):
        r = reduce(_as_poly(num), _as_poly(den))
        self.num, self.den = r.num, r.den

    @classmethod
    def _raw(cls, num: ThetaPoly, den: ThetaPoly = ONE_POLY) -> "ThetaRational":
        x = object.__new__(cls)
        x.num = num
        x.den = den
        return x

    @classmethod
    def const(cls, c: Rational) -> "ThetaRational":
        return cls._raw(ThetaPoly.const(_norm(c)))

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ThetaRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.den.is_one() and len(self.num.coeffs) <= 1:
            return hash(self.num.coeffs[0] if self.num.coeffs else 0)
        return hash((self.num, self.den))

    def __add__(self, other) -> "ThetaRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return ThetaRational._raw(self.num + o.num)
        if self.den == o.den:
            return reduce(self.num + o.num, self.den)
        return reduce(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "ThetaRational":
        return ThetaRational._raw(-self.num, self.den)

    def __sub__(self, other) -> "ThetaRational":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "ThetaRational":
        return (-self) + other

    def __mul__(self, other) -> "ThetaRational":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO_RAT
            return ThetaRational._raw(self.num * other, self.den)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return ThetaRational._raw(self.num * o.num)
        return reduce(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ThetaRational":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ThetaRational._raw(self.num / other, self.den)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero")
        return reduce(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "ThetaRational":
        return _coerce(other) / self

    def __pow__(self, k: int) -> "ThetaRational":
        if k < 0:
            return ONE_RAT / (self ** (-k))
        return ThetaRational._raw(self.num ** k, self.den ** k)

    def __repr__(self) -> str:
        return f"ThetaRational({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def _as_poly(x) -> ThetaPoly:
    if isinstance(x, ThetaPoly):
        return x
    return ThetaPoly.const(_norm(x))


def _coerce(x) -> ThetaRational | None:
    if isinstance(x, ThetaRational):
        return x
    if isinstance(x, (int, Fraction)):
        return ThetaRational.const(x)
    return None


def reduce(num: ThetaPoly, den: ThetaPoly) -> ThetaRational:
    """Canonical form of ``num/den``: gcd-free, denominator monic."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    if num.is_zero():
        return ZERO_RAT
    if len(den.coeffs) > 1:
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
    lead = den.coeffs[-1]
    if lead != 1:
        num = num / lead
        den = den / lead
    return ThetaRational._raw(num, den)


ZERO_RAT = ThetaRational._raw(ZERO_POLY)
ONE_RAT = ThetaRational._raw(ONE_POLY)
THETA = ThetaRational._raw(THETA_POLY)

FieldScalar = Union[int, Fraction, ThetaRational]


def evaluate_at_theta(x: FieldScalar, theta0: Rational) -> Rational:
    """Substitute a rational value for the coupling constant."""
    if not isinstance(x, ThetaRational):
        return x
    theta0 = Fraction(theta0)
    d = x.den(theta0)
    if d == 0:
        raise PoleError(f"denominator {format_poly(x.den)} vanishes at θ={format_rational(theta0)}")
    return _norm(Fraction(x.num(theta0)) / d)


# ---------------------------------------------------------------------------
# theta mode


@dataclass(frozen=True)
class ThetaMode:
    """Coefficient field selector: ``theta0=None`` is symbolic."""

    theta0: Fraction | None = None

    @classmethod
    def symbolic(cls) -> "ThetaMode":
        return cls(None)

    @classmethod
    def at(cls, theta0: Rational | str) -> "ThetaMode":
        return cls(Fraction(theta0))

    @classmethod
    def parse(cls, text: str) -> "ThetaMode":
        text = text.strip()
        if text.lower() in ("sym", "symbolic", THETA_SYMBOL, "theta"):
            return cls(None)
        return cls(Fraction(text))

    @property
    def is_symbolic(self) -> bool:
        return self.theta0 is None

    @property
    def theta(self) -> FieldScalar:
        return THETA if self.theta0 is None else _norm(self.theta0)

    @property
    def zero(self) -> FieldScalar:
        return ZERO_RAT if self.theta0 is None else 0

    @property
    def one(self) -> FieldScalar:
        return ONE_RAT if self.theta0 is None else 1

    def coerce(self, x) -> FieldScalar:
        """Bring a scalar (possibly symbolic) into this mode's field."""
        if self.theta0 is None:
            if isinstance(x, ThetaRational):
                return x
            if isinstance(x, ThetaPoly):
                return ThetaRational._raw(x)
            return ThetaRational.const(x)
        if isinstance(x, ThetaRational):
            return evaluate_at_theta(x, self.theta0)
        if isinstance(x, ThetaPoly):
            return _norm(Fraction(x(self.theta0)))
        if isinstance(x, float):
            raise TypeError(f"inexact value {x!r} in exact arithmetic")
        return _norm(x) if isinstance(x, (int, Fraction)) else _norm(Fraction(x))

    def __str__(self) -> str:
        return "sym" if self.theta0 is None else format_rational(self.theta0)


SYMBOLIC = ThetaMode(None)


# ---------------------------------------------------------------------------
# canonical text form


def format_poly(p: ThetaPoly, var: str = THETA_SYMBOL) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = Fraction(p.coeffs[k])
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = format_rational(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_scalar(x: FieldScalar) -> str:
    if isinstance(x, ThetaRational):
        if x.den.is_one():
            return format_poly(x.num)
        return f"({format_poly(x.num)})/({format_poly(x.den)})"
    return format_rational(x)


_TERM = re.compile(r"^([+-]?)(?:(\d+(?:/\d+)?)(?:\*|$))?(?:(θ)(?:\^(\d+))?)?$")


def parse_poly(text: str) -> ThetaPoly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO_POLY
    terms = re.split(r"(?<=[^\^*/+-])(?=[+-])", s)
    coeffs: dict[int, Fraction] = {}
    for t in terms:
        m = _TERM.match(t)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse term {t!r} in {text!r}")
        sign, c, var, power = m.groups()
        coef = Fraction(c) if c else Fraction(1)
        if sign == "-":
            coef = -coef
        k = 0 if var is None else (int(power) if power else 1)
        coeffs[k] = coeffs.get(k, 0) + coef
    top = max(coeffs)
    return ThetaPoly(_norm(coeffs.get(k, 0)) for k in range(top + 1))


def parse_scalar(text: str) -> FieldScalar:
    """Inverse of :func:`format_scalar`."""
    s = text.strip()
    if THETA_SYMBOL not in s:
        return _norm(Fraction(s.replace(" ", "")))
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
    if m:
        return reduce(parse_poly(m.group(1)), parse_poly(m.group(2)))
    return ThetaRational._raw(parse_poly(s))


# ---------------------------------------------------------------------------
# dense matrices


def is_zero(x) -> bool:
    return not x


class ExactMatrix:
    """Dense matrix over Q or Q(θ); treated as immutable."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[FieldScalar]], ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix rows")

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero: FieldScalar = 0) -> "ExactMatrix":
        return cls([[zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int, one: FieldScalar = 1, zero: FieldScalar = 0) -> "ExactMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[FieldScalar]], nrows: int | None = None) -> "ExactMatrix":
        if not cols:
            return cls([[] for _ in range(nrows or 0)], 0)
        return cls([list(r) for r in zip(*cols)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, ThetaRational) for r in self.rows for x in r)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c: FieldScalar) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [0] * other.ncols
            for k, a in enumerate(r):
                if not a:
                    continue
                ok = orows[k]
                for j, b in enumerate(ok):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix(out, other.ncols)

    def apply(self, vec: Sequence[FieldScalar]) -> list:
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.rows)] if self.rows else [], self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def trace(self) -> FieldScalar:
        self._require_square()
        acc = 0
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix([[fn(a) for a in r] for r in self.rows], self.ncols)

    def is_scalar(self) -> bool:
        """True when the matrix equals ``c * I``."""
        n = self.nrows
        return all(
            (not self.rows[i][j]) if i != j else self.rows[i][i] == self.rows[0][0]
            for i in range(n)
            for j in range(n)
        )

    def _require_square(self) -> None:
        if self.nrows != self.ncols:
            raise ValueError(f"matrix is not square: {self.shape}")

    def charpoly(self, cap: int | None = None) -> list[FieldScalar]:
        return charpoly(self, cap)

    def kernel_basis(self) -> list[list[FieldScalar]]:
        return kernel_basis(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"


def charpoly(m: ExactMatrix, cap: int | None = None) -> list[FieldScalar]:
    """Coefficients of det(tI - M), monic, highest power first.

    Faddeev-LeVerrier: only divisions are by the integers 1..n.
    """
    m._require_square()
    n = m.nrows
    if m.is_symbolic and n > symbolic_cap(cap):
        raise SymbolicCapError(
            f"symbolic characteristic polynomial of dimension {n} exceeds cap {symbolic_cap(cap)}; "
            "use specialized mode (--theta p/q) or raise HP_SYMBOLIC_CAP"
        )
    one = ONE_RAT if m.is_symbolic else 1
    coeffs: list[FieldScalar] = [one]
    mk = ExactMatrix.zeros(n, n)
    for k in range(1, n + 1):
        prev = coeffs[-1]
        mk = m @ mk if k > 1 else mk
        rows = [list(r) for r in mk.rows]
        for i in range(n):
            rows[i][i] = rows[i][i] + prev
        mk = ExactMatrix(rows, n)
        amk_trace = 0
        for i in range(n):
            ri = m.rows[i]
            for j in range(n):
                a = ri[j]
                if a:
                    b = mk.rows[j][i]
                    if b:
                        amk_trace = amk_trace + a * b
        coeffs.append(-amk_trace / k if not isinstance(amk_trace, int) else Fraction(-amk_trace, k))
    return [_norm(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]


def _pivot_key(x) -> tuple:
    if isinstance(x, ThetaRational):
        return (len(x.num.coeffs) + len(x.den.coeffs),)
    return (0,)


def rref(m: ExactMatrix) -> tuple[list[list[FieldScalar]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        cands = [i for i in range(r, len(rows)) if rows[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _pivot_key(rows[i][c]))
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [div(x, pv) if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def kernel_basis(m: ExactMatrix) -> list[list[FieldScalar]]:
    """Basis of the null space; vector ``v`` has ``v[f] = 1`` on its own free column."""
    rows, pivots = rref(m)
    zero = ZERO_RAT if m.is_symbolic else 0
    one = ONE_RAT if m.is_symbolic else 1
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for i, p in enumerate(pivots):
            if rows[i][f]:
                v[p] = -rows[i][f]
        basis.append(v)
    return basis


def solve_unique(a: ExactMatrix, b: Sequence[FieldScalar]) -> list[FieldScalar]:
    """Solve ``a x = b``; raise SingularSystemError unless the solution is unique."""
    aug = ExactMatrix([list(r) + [bi] for r, bi in zip(a.rows, b)], a.ncols + 1)
    rows, pivots = rref(aug)
    if a.ncols in pivots:
        raise SingularSystemError("inconsistent linear system")
    if len(pivots) < a.ncols:
        raise SingularSystemError(f"system has a {a.ncols - len(pivots)}-dimensional solution space")
    x = [0] * a.ncols
    for i, p in enumerate(pivots):
        x[p] = rows[i][-1]
    return x


def column_echelon(vectors: Sequence[Sequence[FieldScalar]]) -> tuple[list[list[FieldScalar]], list[int]]:
    """Rebase a spanning set so that the basis is the identity on some coordinates.

    Returns (basis vectors, pivot coordinates); ``basis[k][pivots[k']] == (k == k')``.
    """
    if not vectors:
        return [], []
    rows, pivots = rref(ExactMatrix(vectors))
    return [rows[i] for i in range(len(pivots))], pivots


def restrict(op: ExactMatrix, basis: Sequence[Sequence[FieldScalar]], pivots: Sequence[int]) -> ExactMatrix:
    """Matrix of ``op`` on the invariant span of an echelon ``basis``."""
    images = [op.apply(v) for v in basis]
    return ExactMatrix([[img[p] for img in images] for p in pivots], len(basis))


# ---------------------------------------------------------------------------
# univariate polynomials given as descending coefficient lists


def cpoly_mul(a: Sequence[FieldScalar], b: Sequence[FieldScalar]) -> list[FieldScalar]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def cpoly_divmod(a: Sequence[FieldScalar], b: Sequence[FieldScalar]) -> tuple[list, list]:
    a = list(a)
    if len(a) < len(b):
        return [0], a
    q = []
    lead = b[0]
    for k in range(len(a) - len(b) + 1):
        c = div(a[k], lead) if lead != 1 else a[k]
        q.append(c)
        if c:
            for j in range(len(b)):
                a[k + j] = a[k + j] - c * b[j]
    rem = a[len(a) - len(b) + 1:]
    return q, rem


def cpoly_power(a: Sequence[FieldScalar], k: int) -> list[FieldScalar]:
    out: list = [1]
    for _ in range(k):
        out = cpoly_mul(out, a)
    return out


def cpoly_equal(a: Sequence[FieldScalar], b: Sequence[FieldScalar]) -> bool:
    a = _strip_leading(a)
    b = _strip_leading(b)
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def _strip_leading(a: Sequence[FieldScalar]) -> list:
    a = list(a)
    while len(a) > 1 and not a[0]:
        a.pop(0)
    return a


def cpoly_perfect_root(a: Sequence[FieldScalar], k: int) -> list[FieldScalar] | None:
    """Monic ``q`` with ``q**k == a`` (``a`` monic), or None."""
    n = len(a) - 1
    if k < 1 or n % k:
        return None
    d = n // k
    # Match coefficients of q^k from the top; each step is linear in the new coefficient.
    q: list = [a[0]] + [0] * d
    for i in range(1, d + 1):
        trial = cpoly_power(q, k)
        q[i] = div(a[i] - trial[i], k)
    return q if cpoly_equal(cpoly_power(q, k), a) else None


def cpoly_eval(a: Sequence[FieldScalar], x: FieldScalar) -> FieldScalar:
    acc = 0
    for c in a:
        acc = acc * x + c
    return acc
