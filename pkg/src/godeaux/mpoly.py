"""Sparse multivariate polynomials over K, plus points and linear maps of P^3.

Polynomials are exponent-vector -> coefficient maps with no stored zeros.
Substitution into linear changes of coordinates expands Horner-style one
variable at a time, which keeps the intermediate term count small even for
the degree-5 forms handled here.
"""

from __future__ import annotations

from fractions import Fraction

from . import grammar
from .exactnum import ONE, ZERO, NumberFieldElement, U, render_element
from .linalg import determinant, mat_mul, mat_pow, mat_vec


class VariableMismatch(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


class UnknownVariable(KeyError):
    pass


class NonHomogeneous(ValueError):
    pass


class CoincidentPoints(ValueError):
    pass


class ZeroForm(ValueError):
    pass


def _coerce_coeff(value) -> NumberFieldElement:
    if isinstance(value, NumberFieldElement):
        return value
    if isinstance(value, (int, Fraction)):
        return NumberFieldElement(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class MPoly:
    """Polynomial in named variables with NumberFieldElement coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.variables):
                raise VariableMismatch(
                    f"exponent {exp} does not match variables {self.variables}")
            coef = _coerce_coeff(coef)
            if not coef.is_zero():
                clean[exp] = clean.get(exp, ZERO) + coef
                if clean[exp].is_zero():
                    del clean[exp]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "MPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value) -> "MPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): _coerce_coeff(value)})

    @classmethod
    def variable(cls, variables, name) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(name)
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: ONE})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def coefficient(self, exponents) -> NumberFieldElement:
        return self.terms.get(tuple(exponents), ZERO)

    def monomial_count(self) -> int:
        return len(self.terms)

    def graded_part(self, degree: int) -> "MPoly":
        return MPoly(self.variables,
                     {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise VariableMismatch(
                    f"{other.variables} vs {self.variables}")
            return other
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return MPoly.constant(self.variables, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        merged = dict(self.terms)
        for exp, coef in o.terms.items():
            total = merged.get(exp, ZERO) + coef
            if total.is_zero():
                merged.pop(exp, None)
            else:
                merged[exp] = total
        return MPoly(self.variables, merged)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

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
        product: dict[tuple, NumberFieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                total = product.get(exp, ZERO) + c1 * c2
                if total.is_zero():
                    product.pop(exp, None)
                else:
                    product[exp] = total
        return MPoly(self.variables, product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_zero() and other.total_degree() == 0:
                other = next(iter(other.terms.values()))
            else:
                raise ZeroDivisionError("polynomial division only by nonzero constants")
        other = _coerce_coeff(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- calculus and substitution --------------------------------------------

    def eval(self, point) -> NumberFieldElement:
        """Exact value at a tuple of field elements."""
        values = [_coerce_coeff(v) for v in point]
        if len(values) != len(self.variables):
            raise ArityMismatch(
                f"{len(values)} coordinates for {len(self.variables)} variables")
        powers: list[dict[int, NumberFieldElement]] = [{0: ONE} for _ in values]
        total = ZERO
        for exp, coef in self.terms.items():
            term = coef
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        p = max(cache)
                        acc = cache[p]
                        while p < e:
                            acc = acc * values[i]
                            p += 1
                            cache[p] = acc
                    term = term * cache[e]
            total = total + term
        return total

    def partial(self, var: str) -> "MPoly":
        if var not in self.variables:
            raise UnknownVariable(var)
        i = self.variables.index(var)
        result = {}
        for exp, coef in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            result[tuple(new)] = coef * exp[i]
        return MPoly(self.variables, result)

    def compose(self, images: list["MPoly"]) -> "MPoly":
        """Substitute images[i] for variable i; all images share one ring."""
        if len(images) != len(self.variables):
            raise ArityMismatch("one image per variable required")
        target = images[0].variables
        for img in images:
            if img.variables != target:
                raise VariableMismatch("images live in different rings")
        zero = MPoly.zero(target)
        if self.is_zero():
            return zero

        def fold(items, vi):
            if vi == len(self.variables):
                total = ZERO
                for _exp, coef in items:
                    total = total + coef
                return MPoly.constant(target, total)
            groups: dict[int, list] = {}
            for exp, coef in items:
                groups.setdefault(exp[vi], []).append((exp, coef))
            exps = sorted(groups, reverse=True)
            acc = fold(groups[exps[0]], vi + 1)
            prev = exps[0]
            for e in exps[1:]:
                acc = acc * images[vi] ** (prev - e) + fold(groups[e], vi + 1)
                prev = e
            if prev:
                acc = acc * images[vi] ** prev
            return acc

        return fold(list(self.terms.items()), 0)

    def substitute_linear(self, m: "LinearMap4") -> "MPoly":
        """Compose with a linear change of all four coordinates."""
        if len(self.variables) != 4:
            raise ArityMismatch("substitute_linear expects a 4-variable polynomial")
        images = []
        for row in m.rows:
            img = MPoly.zero(self.variables)
            for j, entry in enumerate(row):
                if not entry.is_zero():
                    img = img + MPoly.variable(self.variables, self.variables[j]) * entry
            images.append(img)
        return self.compose(images)

    def restrict_to_line(self, p: "ProjectivePoint", q: "ProjectivePoint") -> "MPoly":
        """Binary form f(s*p + t*q) in variables (s, t)."""
        if p == q:
            raise CoincidentPoints("line needs two distinct points")
        if len(p.coords) != len(self.variables) or len(q.coords) != len(self.variables):
            raise ArityMismatch("point arity does not match the polynomial")
        st = ("s", "t")
        images = []
        for pc, qc in zip(p.coords, q.coords):
            images.append(MPoly(st, {(1, 0): pc, (0, 1): qc}))
        return self.compose(images)

    def dehomogenize(self, chart_var: str) -> "MPoly":
        """Set one variable to 1; input must be homogeneous."""
        if not self.is_homogeneous():
            raise NonHomogeneous("dehomogenize expects a homogeneous polynomial")
        if chart_var not in self.variables:
            raise UnknownVariable(chart_var)
        i = self.variables.index(chart_var)
        rest = self.variables[:i] + self.variables[i + 1:]
        result: dict[tuple, NumberFieldElement] = {}
        for exp, coef in self.terms.items():
            new = exp[:i] + exp[i + 1:]
            prev = result.get(new, ZERO) + coef
            if prev.is_zero():
                result.pop(new, None)
            else:
                result[new] = prev
        return MPoly(rest, result)

    # -- text ------------------------------------------------------------------

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"MPoly({self.variables!r}, {len(self.terms)} terms)"


def render_poly(f: MPoly) -> str:
    if f.is_zero():
        return "0"
    def order_key(item):
        exp, _ = item
        return (sum(exp), exp)
    parts = []
    for exp, coef in sorted(f.terms.items(), key=order_key, reverse=True):
        monomial = "*".join(
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(f.variables, exp) if e)
        if coef == ONE and monomial:
            body, negative = monomial, False
        elif coef == -ONE and monomial:
            body, negative = monomial, True
        else:
            negative = coef.is_rational() and coef.c0 < 0
            shown = -coef if negative else coef
            coef_txt = render_element(shown)
            if not shown.is_rational():
                coef_txt = f"({coef_txt})"
            body = f"{coef_txt}*{monomial}" if monomial else coef_txt
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def parse_poly(text: str, variables) -> MPoly:
    """Parse the grammar emitted by :func:`render_poly` (plus 'u' coefficients)."""
    variables = tuple(variables)

    def lookup(name):
        if name == "u":
            return MPoly.constant(variables, U)
        return MPoly.variable(variables, name)

    value = grammar.evaluate(
        text,
        number=lambda n: MPoly.constant(variables, n),
        lookup=lookup,
    )
    if not isinstance(value, MPoly):
        raise grammar.GrammarError(f"not a polynomial: {text!r}")
    return value


# -- projective points and maps ------------------------------------------------


class ProjectivePoint:
    """Point with exact homogeneous coordinates; equality is up to scale."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(_coerce_coeff(c) for c in coords)
        if all(c.is_zero() for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            return False
        n = len(self.coords)
        for i in range(n):
            for j in range(i + 1, n):
                minor = self.coords[i] * other.coords[j] - self.coords[j] * other.coords[i]
                if not minor.is_zero():
                    return False
        return True

    def __hash__(self):
        raise TypeError("projective points are not hashable (scale-dependent)")

    def __repr__(self):
        return "(" + ", ".join(render_element(c) for c in self.coords) + ")"


class LinearMap4:
    """Invertible linear change of the four homogeneous coordinates."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_coerce_coeff(v) for v in row) for row in rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("expected a 4x4 matrix")
        if determinant([list(r) for r in rows], ZERO).is_zero():
            raise ValueError("linear map must be invertible")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("LinearMap4 is immutable")

    @classmethod
    def identity(cls) -> "LinearMap4":
        return cls([[1 if i == j else 0 for j in range(4)] for i in range(4)])

    @classmethod
    def coordinate_cycle(cls) -> "LinearMap4":
        """(X, Y, Z, T) -> (T, X, Y, Z)."""
        rows = [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
        return cls(rows)

    def apply(self, point: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(mat_vec([list(r) for r in self.rows],
                                       list(point.coords)))

    def compose(self, other: "LinearMap4") -> "LinearMap4":
        return LinearMap4(mat_mul([list(r) for r in self.rows],
                                  [list(r) for r in other.rows]))

    def __pow__(self, n: int) -> "LinearMap4":
        if n < 0:
            raise ValueError("negative powers not supported")
        ident = [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]
        return LinearMap4(mat_pow([list(r) for r in self.rows], n, ident))

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == (ONE if i == j else ZERO)
                   for i in range(4) for j in range(4))

    def __eq__(self, other):
        if not isinstance(other, LinearMap4):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return "LinearMap4(" + "; ".join(
            ", ".join(render_element(v) for v in row) for row in self.rows) + ")"


# -- univariate utilities over K -------------------------------------------------


def _upoly_trim(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def _upoly_divmod(a, b):
    a = list(a)
    inv_lead = b[-1].inverse()
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _upoly_trim(a):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - coef * bc
        _upoly_trim(a)
    return q, a


def upoly_gcd(a, b):
    """Monic gcd of univariate polynomials over K (lists, low degree first)."""
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        _, r = _upoly_divmod(a, b)
        a, b = b, _upoly_trim(r)
    if a:
        inv_lead = a[-1].inverse()
        a = [c * inv_lead for c in a]
    return a


def upoly_derivative(p):
    return _upoly_trim([p[i] * i for i in range(1, len(p))])


class SquarefreeResult:
    __slots__ = ("squarefree", "witness")

    def __init__(self, squarefree: bool, witness: str):
        self.squarefree = squarefree
        self.witness = witness

    def __bool__(self):
        return self.squarefree


def binary_form_squarefree(b: MPoly) -> SquarefreeResult:
    """Decide whether a nonzero binary form has distinct projective roots.

    The form is squarefree exactly when its dehomogenization is squarefree
    and the point at infinity occurs with multiplicity at most one.
    """
    if b.is_zero():
        raise ZeroForm("squarefree test needs a nonzero form")
    if len(b.variables) != 2 or not b.is_homogeneous():
        raise ValueError("expected a homogeneous form in two variables")
    n = b.total_degree()
    coeffs = [ZERO] * (n + 1)
    for exp, coef in b.terms.items():
        coeffs[exp[0]] = coef
    p = _upoly_trim(list(coeffs))
    infinity_mult = n - (len(p) - 1)
    if infinity_mult >= 2:
        return SquarefreeResult(False, f"second variable divides the form {infinity_mult} times")
    g = upoly_gcd(p, upoly_derivative(p))
    if len(g) <= 1:
        return SquarefreeResult(True, "gcd(form, d(form)) = 1")
    witness = " + ".join(
        f"({render_element(c)})*s^{i}" for i, c in enumerate(g) if not c.is_zero())
    return SquarefreeResult(False, f"repeated factor: {witness}")
