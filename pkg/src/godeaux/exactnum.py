"""Exact arithmetic in Q and in the cubic field K = Q(u), u^3 + u^2 - 1 = 0.

Rationals are ``fractions.Fraction`` (arbitrary precision, always reduced,
positive denominator).  Field elements are stored on the power basis
(1, u, u^2); multiplication reduces with u^3 = 1 - u^2 and inversion runs
the extended Euclidean algorithm against the minimal polynomial, so every
operation is exact.  A certified real embedding (u maps to the single real
root of the minimal polynomial) is provided for display only; nothing in
the verification paths depends on it.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

#: Coefficients of the minimal polynomial u^3 + u^2 - 1, low degree first.
MIN_POLY = (Fraction(-1), Fraction(0), Fraction(1), Fraction(1))


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero element of K."""


class ParseError(ValueError):
    """Malformed element text."""


def _check_min_poly_irreducible() -> None:
    # Degree 3, so reducibility over Q would force a rational root, and any
    # rational root of a monic integer cubic with constant term -1 is +-1.
    for r in (1, -1):
        if r**3 + r**2 - 1 == 0:
            raise AssertionError("minimal polynomial has a rational root")


_check_min_poly_irreducible()


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


class NumberFieldElement:
    """An element c0 + c1*u + c2*u^2 of K, with exact rational coordinates."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0=0, c1=0, c2=0):
        object.__setattr__(self, "c0", _as_fraction(c0))
        object.__setattr__(self, "c1", _as_fraction(c1))
        object.__setattr__(self, "c2", _as_fraction(c2))

    def __setattr__(self, name, value):
        raise AttributeError("NumberFieldElement is immutable")

    # -- structure ---------------------------------------------------------

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, NumberFieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(-self.c0, -self.c1, -self.c2)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2 = self.c0, self.c1, self.c2
        b0, b1, b2 = o.c0, o.c1, o.c2
        # Schoolbook product, then reduce with u^3 = 1 - u^2 and
        # u^4 = u - u^3 = -1 + u + u^2.
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
        return NumberFieldElement(d0 + d3 - d4, d1 + d4, d2 - d3 + d4)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        """Multiplicative inverse, via extended Euclid in Q[u]."""
        if self.is_zero():
            raise DivisionByZero("zero has no inverse in K")
        g, s = _ext_euclid_mod_min_poly([self.c0, self.c1, self.c2])
        # g is a nonzero constant because the minimal polynomial is
        # irreducible; divide through by it.
        inv = [c / g for c in s]
        inv += [Fraction(0)] * (3 - len(inv))
        return NumberFieldElement(*inv[:3])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c0 == o.c0 and self.c1 == o.c1 and self.c2 == o.c2

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2))

    def __bool__(self):
        return not self.is_zero()

    # -- text --------------------------------------------------------------

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return f"NumberFieldElement({self.c0!r}, {self.c1!r}, {self.c2!r})"

    # -- real embedding ------------------------------------------------------

    def embed_real(self, digits: int) -> "Interval":
        return embed_real(self, digits)


ZERO = NumberFieldElement(0)
ONE = NumberFieldElement(1)
U = NumberFieldElement(0, 1)


def nf(c0=0, c1=0, c2=0) -> NumberFieldElement:
    """Shorthand constructor for c0 + c1*u + c2*u^2."""
    return NumberFieldElement(c0, c1, c2)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and _poly_trim(a):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] -= coef * bc
        _poly_trim(a)
    return _poly_trim(q), a


def _ext_euclid_mod_min_poly(x: list[Fraction]):
    """Return (g, s) with s*x = g (a nonzero constant) modulo the minimal polynomial."""
    r0, r1 = list(MIN_POLY), _poly_trim(list(x))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        # s_next = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1) - 1 if q and s1 else 0)
        for i, qc in enumerate(q):
            for j, sc in enumerate(s1):
                prod[i + j] += qc * sc
        nxt = [Fraction(0)] * max(len(s0), len(prod))
        for i, c in enumerate(s0):
            nxt[i] += c
        for i, c in enumerate(prod):
            nxt[i] -= c
        s0, s1 = s1, _poly_trim(nxt)
    if not r1:
        raise DivisionByZero("element shares a factor with the minimal polynomial")
    # Reduce the cofactor modulo the minimal polynomial before returning.
    _, s1 = _poly_divmod(s1, list(MIN_POLY))
    return r1[0], s1


# -- certified real embedding ----------------------------------------------


class Interval:
    """Closed rational interval [lo, hi]; endpoints exact."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        corners = (self.lo * other.lo, self.lo * other.hi,
                   self.hi * other.lo, self.hi * other.hi)
        return Interval(min(corners), max(corners))

    def scale(self, c: Fraction) -> "Interval":
        a, b = self.lo * c, self.hi * c
        return Interval(min(a, b), max(a, b))

    def __eq__(self, other):
        return isinstance(other, Interval) and (self.lo, self.hi) == (other.lo, other.hi)

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def decimal(self, digits: int) -> str:
        """Midpoint as a decimal string with the requested digits."""
        mid = (self.lo + self.hi) / 2
        scaled = mid * 10**digits
        whole = scaled.numerator // scaled.denominator
        sign = "-" if whole < 0 else ""
        whole = abs(whole)
        txt = str(whole).rjust(digits + 1, "0")
        return f"{sign}{txt[:-digits]}.{txt[-digits:]}" if digits else f"{sign}{txt}"


def _min_poly_at(x: Fraction) -> Fraction:
    return x**3 + x**2 - 1


_root_bounds: list[Fraction] = [Fraction(0), Fraction(1)]  # sign change bracket


def _refine_root(width: Fraction) -> Interval:
    """Shrink the bisection bracket for the real root of u^3+u^2-1 below ``width``."""
    lo, hi = _root_bounds
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if _min_poly_at(mid) < 0:
            lo = mid
        else:
            hi = mid
    _root_bounds[0], _root_bounds[1] = lo, hi
    return Interval(lo, hi)


def embed_real(x: NumberFieldElement, digits: int) -> Interval:
    """Certified interval of width < 10^-digits around the real image of x."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    target = Fraction(1, 10**digits)
    if x.is_rational():
        return Interval(x.c0, x.c0)
    width = target
    while True:
        u_iv = _refine_root(width)
        value = Interval(x.c0, x.c0) + u_iv.scale(x.c1) + (u_iv * u_iv).scale(x.c2)
        if value.width() < target:
            return value
        width /= 4


# -- text grammar ------------------------------------------------------------


def _render_fraction(q: Fraction) -> str:
    return str(q)


def render_element(x: NumberFieldElement) -> str:
    """Canonical text: 'c0 + c1*u + c2*u^2' with zero terms dropped."""
    parts = []
    for coef, power in ((x.c0, 0), (x.c1, 1), (x.c2, 2)):
        if coef == 0:
            continue
        mag = abs(coef)
        if power == 0:
            body = _render_fraction(mag)
        else:
            var = "u" if power == 1 else "u^2"
            body = var if mag == 1 else f"{_render_fraction(mag)}*{var}"
        if not parts:
            parts.append(body if coef > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def parse_element(text: str) -> NumberFieldElement:
    """Parse the grammar produced by :func:`render_element`."""
    from . import grammar

    value = grammar.evaluate(
        text,
        number=lambda n: NumberFieldElement(n),
        lookup=_parse_lookup,
    )
    if not isinstance(value, NumberFieldElement):
        raise ParseError(f"not a field element: {text!r}")
    return value


def _parse_lookup(name: str) -> NumberFieldElement:
    if name == "u":
        return U
    raise ParseError(f"unknown symbol {name!r} in field-element text")
