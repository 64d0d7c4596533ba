"""Weighted-jet certificates for the tacnodal points of the quintic.

The localized surface equation at each special point is brought to the shape
z^2 - D(x, y) by exact square completion, and the certificate checks that D
is, up to weighted degree 6 with weights w(x) = 2, w(y) = 1, w(z) = 3, a
nondegenerate form x^3 + alpha x^2 y^2 + beta x y^4 + gamma y^6.
Nondegeneracy means the cubic resolvent s^3 + alpha s^2 + beta s + gamma is
squarefree; that is the finite test for the simple elliptic normal form
z^2 + x^3 + y^6.  All germ arithmetic is truncated at total degree 8, which
is safely above every monomial of weighted degree 6.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import ONE, ZERO, NumberFieldElement, nf, render_element
from .linalg import invert, symmetric_rank_one_root
from .mpoly import MPoly

DEFAULT_TRUNCATION = 8
TARGET_WEIGHT = 6
WEIGHTS_XYZ = (2, 1, 3)


class GermError(Exception):
    """A certificate stage failed; ``stage`` names the pipeline step."""

    stage = "germ"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSingular(GermError):
    stage = "localize"


class RankNotOne(GermError):
    stage = "split_square"


class NonConvergent(GermError):
    stage = "eliminate_square_variable"


class NotATripleLine(GermError):
    stage = "cube_tangent_cone"


class LowWeightObstruction(GermError):
    """D carries a monomial below weighted degree 6; the germ is a rational
    double point rather than the simple elliptic normal form."""

    stage = "principal_part"


class Germ:
    """Truncated local power series over K (a jet up to a total degree bound)."""

    __slots__ = ("variables", "terms", "max_total_degree")

    def __init__(self, variables, terms=None, max_total_degree=DEFAULT_TRUNCATION):
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "max_total_degree", int(max_total_degree))
        clean = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.variables):
                raise ValueError("exponent arity mismatch")
            if sum(exp) > self.max_total_degree:
                continue
            if not isinstance(coef, NumberFieldElement):
                coef = nf(coef)
            if not coef.is_zero():
                merged = clean.get(exp, ZERO) + coef
                if merged.is_zero():
                    clean.pop(exp, None)
                else:
                    clean[exp] = merged
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Germ is immutable")

    @classmethod
    def from_mpoly(cls, poly: MPoly, max_total_degree=DEFAULT_TRUNCATION) -> "Germ":
        return cls(poly.variables, dict(poly.terms), max_total_degree)

    @classmethod
    def zero(cls, variables, max_total_degree=DEFAULT_TRUNCATION) -> "Germ":
        return cls(variables, {}, max_total_degree)

    @classmethod
    def variable(cls, variables, name, max_total_degree=DEFAULT_TRUNCATION) -> "Germ":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: ONE}, max_total_degree)

    # -- basic structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Minimal total degree of a surviving term; -1 for the zero germ."""
        return min((sum(e) for e in self.terms), default=-1)

    def graded_part(self, degree: int) -> "Germ":
        return Germ(self.variables,
                    {e: c for e, c in self.terms.items() if sum(e) == degree},
                    self.max_total_degree)

    def weighted_part(self, weights, weight: int) -> "Germ":
        picked = {e: c for e, c in self.terms.items()
                  if sum(w * x for w, x in zip(weights, e)) == weight}
        return Germ(self.variables, picked, self.max_total_degree)

    def min_weight(self, weights) -> int | None:
        return min((sum(w * x for w, x in zip(weights, e)) for e in self.terms),
                   default=None)

    def coefficient(self, exponents) -> NumberFieldElement:
        return self.terms.get(tuple(exponents), ZERO)

    # -- arithmetic (truncating) ----------------------------------------------

    def _check_ring(self, other: "Germ"):
        if self.variables != other.variables or \
                self.max_total_degree != other.max_total_degree:
            raise ValueError("germ rings differ")

    def __add__(self, other):
        if isinstance(other, (int, NumberFieldElement)):
            other = Germ(self.variables,
                         {(0,) * len(self.variables): nf(other) if isinstance(other, int) else other},
                         self.max_total_degree)
        self._check_ring(other)
        merged = dict(self.terms)
        for exp, coef in other.terms.items():
            total = merged.get(exp, ZERO) + coef
            if total.is_zero():
                merged.pop(exp, None)
            else:
                merged[exp] = total
        return Germ(self.variables, merged, self.max_total_degree)

    def __neg__(self):
        return Germ(self.variables, {e: -c for e, c in self.terms.items()},
                    self.max_total_degree)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Germ) else -nf(other))

    def __mul__(self, other):
        if isinstance(other, (int, NumberFieldElement)):
            scalar = nf(other) if isinstance(other, int) else other
            return Germ(self.variables,
                        {e: c * scalar for e, c in self.terms.items()},
                        self.max_total_degree)
        self._check_ring(other)
        bound = self.max_total_degree
        product: dict[tuple, NumberFieldElement] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > bound:
                    continue
                exp = tuple(a + b for a, b in zip(e1, e2))
                total = product.get(exp, ZERO) + c1 * c2
                if total.is_zero():
                    product.pop(exp, None)
                else:
                    product[exp] = total
        return Germ(self.variables, product, self.max_total_degree)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Germ(self.variables, {(0,) * len(self.variables): ONE},
                      self.max_total_degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return (self.variables == other.variables and self.terms == other.terms)

    def compose(self, images: list["Germ"]) -> "Germ":
        """Substitute a germ for each variable (constant terms must be zero)."""
        if len(images) != len(self.variables):
            raise ValueError("one image per variable required")
        target = images[0]
        zero_exp = (0,) * len(target.variables)
        for img in images:
            if img.variables != target.variables:
                raise ValueError("images live in different rings")
            if not img.coefficient(zero_exp).is_zero():
                raise ValueError("substitution must preserve the origin")

        def fold(items, vi):
            if vi == len(self.variables):
                total = ZERO
                for _exp, coef in items:
                    total = total + coef
                return Germ(target.variables, {zero_exp: total},
                            target.max_total_degree)
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

    def linear_substitution(self, matrix) -> "Germ":
        """Replace variable i by sum_j matrix[i][j] * variable j."""
        images = []
        for row in matrix:
            img = Germ.zero(self.variables, self.max_total_degree)
            for j, entry in enumerate(row):
                entry = nf(entry) if isinstance(entry, int) else entry
                if not entry.is_zero():
                    img = img + Germ.variable(self.variables, self.variables[j],
                                              self.max_total_degree) * entry
            images.append(img)
        return self.compose(images)

    def __str__(self):
        from .mpoly import render_poly
        return render_poly(MPoly(self.variables, dict(self.terms)))

    def __repr__(self):
        return f"Germ({self.variables!r}, {len(self.terms)} terms, <= deg {self.max_total_degree})"


def germ_from_text(text: str, variables=("x", "y", "z"),
                   max_total_degree=DEFAULT_TRUNCATION) -> Germ:
    from .mpoly import parse_poly
    return Germ.from_mpoly(parse_poly(text, variables), max_total_degree)


# -- pipeline stages --------------------------------------------------------------


def localize(bundle, index: int) -> Germ:
    """Local equation of the surface at vertex ``index`` (1-based), as a germ.

    The vertex is a coordinate point, so the chart substitution already puts
    it at the origin.  Raises :class:`NotSingular` when the constant or
    linear part survives.
    """
    if index not in (1, 2, 3, 4):
        raise ValueError("vertex index must be 1..4")
    chart = bundle.f5.variables[index - 1]
    local = bundle.f5.dehomogenize(chart)
    germ = Germ.from_mpoly(local)
    order = germ.order()
    if 0 <= order < 2:
        raise NotSingular(
            f"vertex {index} is a smooth point (local order {order})",
            witness=str(germ.graded_part(order)))
    return germ


def split_square(germ: Germ):
    """Write the quadratic part as c*L^2 and normalize the germ by 1/c.

    Returns ``(L, normalized_germ)``; raises :class:`RankNotOne` when the
    quadratic form has rank other than one.
    """
    if germ.order() != 2:
        raise RankNotOne(f"germ has order {germ.order()}, expected 2",
                         witness=str(germ))
    quad = germ.graded_part(2)
    n = len(germ.variables)
    half = nf(1) / 2
    m = [[ZERO] * n for _ in range(n)]
    for exp, coef in quad.terms.items():
        support = [i for i, e in enumerate(exp) if e]
        if len(support) == 1:
            m[support[0]][support[0]] = coef
        else:
            i, j = support
            m[i][j] = m[j][i] = coef * half
    decomp = symmetric_rank_one_root(m, ZERO)
    if decomp is None:
        raise RankNotOne("quadratic part is not a rank-1 perfect square",
                         witness=str(quad))
    scale, coeffs = decomp
    form = Germ.zero(germ.variables, germ.max_total_degree)
    for i, coef in enumerate(coeffs):
        if not coef.is_zero():
            form = form + Germ.variable(germ.variables, germ.variables[i],
                                        germ.max_total_degree) * coef
    return form, germ * scale.inverse()


def _linear_coefficients(form: Germ):
    coeffs = [ZERO] * len(form.variables)
    for exp, coef in form.terms.items():
        if sum(exp) != 1:
            raise ValueError("expected a linear form")
        coeffs[exp.index(1)] = coef
    return coeffs


_LOCAL_VARS = ("x", "y", "z")


def _to_square_coordinates(germ: Germ, square_form: Germ, transverse=None):
    """Express the germ in coordinates (x, y, z) with z equal to the square
    root form; x, y span a chosen (or default) complement."""
    n = len(germ.variables)
    if n != 3:
        raise ValueError("square elimination needs a three-variable germ")
    z_row = _linear_coefficients(square_form)
    if transverse is None:
        pivot = next(i for i, c in enumerate(z_row) if not c.is_zero())
        others = [i for i in range(3) if i != pivot]
        rows = [[ONE if j == others[0] else ZERO for j in range(3)],
                [ONE if j == others[1] else ZERO for j in range(3)],
                list(z_row)]
    else:
        x_form, y_form = transverse
        rows = [_linear_coefficients(x_form), _linear_coefficients(y_form),
                list(z_row)]
    inverse = invert(rows, ZERO, ONE)
    if inverse is None:
        raise ValueError("coordinate forms are linearly dependent")
    target_zero = Germ.zero(_LOCAL_VARS, germ.max_total_degree)
    images = []
    for i in range(3):
        img = target_zero
        for j in range(3):
            if not inverse[i][j].is_zero():
                img = img + Germ.variable(_LOCAL_VARS, _LOCAL_VARS[j],
                                          germ.max_total_degree) * inverse[i][j]
        images.append(img)
    return germ.compose(images)


def _shear_z(h: Germ, shear: Germ) -> Germ:
    """Substitute z -> z - shear(x, y), Horner over the z-exponent."""
    layers: dict[int, dict] = {}
    for exp, coef in h.terms.items():
        layers.setdefault(exp[2], {})[(exp[0], exp[1], 0)] = coef
    z_image = Germ.variable(_LOCAL_VARS, "z", h.max_total_degree) - shear
    top = max(layers)
    acc = Germ(_LOCAL_VARS, layers[top], h.max_total_degree)
    for k in range(top - 1, -1, -1):
        acc = acc * z_image
        if k in layers:
            acc = acc + Germ(_LOCAL_VARS, layers[k], h.max_total_degree)
    return acc


def _square_elimination(germ: Germ, square_form: Germ, transverse=None,
                        target_weight: int = TARGET_WEIGHT):
    """Shear away the z-linear terms; return (discriminant D, sheared germ)."""
    h = _to_square_coordinates(germ, square_form, transverse)
    if h.coefficient((0, 0, 2)) != ONE or not (h.graded_part(2) -
            Germ(_LOCAL_VARS, {(0, 0, 2): ONE}, h.max_total_degree)).is_zero():
        raise RankNotOne("normalized germ must have quadratic part exactly z^2",
                         witness=str(h.graded_part(2)))
    half = nf(1) / 2
    for _ in range(4 * h.max_total_degree):
        mixed = {exp: coef for exp, coef in h.terms.items() if exp[2] == 1}
        if not mixed:
            break
        shear = Germ(_LOCAL_VARS,
                     {(e[0], e[1], 0): coef * half for e, coef in mixed.items()},
                     h.max_total_degree)
        h = _shear_z(h, shear)
    else:
        raise NonConvergent("shearing failed to remove the mixed terms",
                            witness=str(h))
    z_free = {(e[0], e[1]): -c for e, c in h.terms.items() if e[2] == 0}
    return Germ(("x", "y"), z_free, h.max_total_degree), h


def eliminate_square_variable(germ: Germ, square_form: Germ,
                              target_weight: int = TARGET_WEIGHT,
                              transverse=None) -> Germ:
    """Discriminant D with germ ~ z^2 - D(x, y), valid to weighted degree 6."""
    discriminant, _ = _square_elimination(germ, square_form, transverse,
                                          target_weight)
    return discriminant


def cube_tangent_cone(discriminant: Germ) -> Germ:
    """Linear form whose cube is the degree-3 part of D.

    The cubic binary form has a triple root exactly when its Hessian
    covariant vanishes; raises :class:`NotATripleLine` otherwise (also when
    the order of D is not 3).
    """
    order = discriminant.order()
    if order != 3:
        raise NotATripleLine(
            f"discriminant germ has order {order}, expected 3",
            witness=str(discriminant))
    cubic = discriminant.graded_part(3)
    c30 = cubic.coefficient((3, 0))
    c21 = cubic.coefficient((2, 1))
    c12 = cubic.coefficient((1, 2))
    c03 = cubic.coefficient((0, 3))
    three = nf(3)
    nine = nf(9)
    hessian_zero = ((three * c30 * c12 - c21 * c21).is_zero()
                    and (nine * c30 * c03 - c21 * c12).is_zero()
                    and (three * c21 * c03 - c12 * c12).is_zero())
    if not hessian_zero:
        raise NotATripleLine("cubic part is not a perfect cube",
                             witness=str(cubic))
    x = Germ.variable(discriminant.variables, discriminant.variables[0],
                      discriminant.max_total_degree)
    y = Germ.variable(discriminant.variables, discriminant.variables[1],
                      discriminant.max_total_degree)
    if not c30.is_zero():
        return x + y * (c21 / (three * c30))
    if not c03.is_zero():
        return y + x * (c12 / (three * c03))
    raise NotATripleLine("degenerate cubic part", witness=str(cubic))


@dataclass(frozen=True)
class TildeE8Certificate:
    """Witnesses of the weighted-jet nondegeneracy test at one point.

    The certificate is valid exactly when the resolvent discriminant is
    nonzero; principal part coefficients follow the recorded normalization.
    """

    square_root_form: Germ
    discriminant_germ: Germ
    tangent_cone_form: Germ
    principal_part: tuple[NumberFieldElement, NumberFieldElement, NumberFieldElement]
    resolvent_discriminant: NumberFieldElement
    normalization: str

    @property
    def passed(self) -> bool:
        return not self.resolvent_discriminant.is_zero()


def tilde_e8_certificate(germ: Germ) -> TildeE8Certificate:
    """Full pipeline: square split, two-pass elimination, weight-6 test.

    Structural failures raise :class:`GermError` subclasses naming the
    stage; an intact pipeline returns a certificate whose ``passed`` flag is
    the squarefreeness of the cubic resolvent.
    """
    square_form, normalized = split_square(germ)
    provisional, _ = _square_elimination(normalized, square_form)
    cone = cube_tangent_cone(provisional)

    # Lift the cone line from the provisional (x, y) chart back to the germ
    # variables, then re-run the elimination with x aligned along it.
    cone_coeffs = _linear_coefficients(cone)
    pivot = next(i for i, c in enumerate(_linear_coefficients(square_form))
                 if not c.is_zero())
    others = [i for i in range(3) if i != pivot]
    lifted = Germ.zero(germ.variables, germ.max_total_degree)
    for local_index, coef in enumerate(cone_coeffs):
        if not coef.is_zero():
            name = germ.variables[others[local_index]]
            lifted = lifted + Germ.variable(germ.variables, name,
                                            germ.max_total_degree) * coef
    complement_index = others[1] if not cone_coeffs[0].is_zero() else others[0]
    complement = Germ.variable(germ.variables, germ.variables[complement_index],
                               germ.max_total_degree)
    discriminant, _ = _square_elimination(normalized, square_form,
                                          (lifted, complement))

    cubic = discriminant.graded_part(3)
    lead = cubic.coefficient((3, 0))
    if lead.is_zero() or not (cubic - Germ(("x", "y"), {(3, 0): lead},
                                           cubic.max_total_degree)).is_zero():
        raise NotATripleLine("aligned discriminant lost its cubic normal form",
                             witness=str(cubic))
    weights = WEIGHTS_XYZ[:2]
    low = {exp: coef for exp, coef in discriminant.terms.items()
           if 2 * exp[0] + exp[1] < TARGET_WEIGHT}
    if low:
        offending = Germ(("x", "y"), low, discriminant.max_total_degree)
        raise LowWeightObstruction(
            "terms below weighted degree 6 survive; the singularity is a "
            "rational double point, not the target normal form",
            witness=str(offending))

    lead_inv = lead.inverse()
    alpha = discriminant.coefficient((2, 2)) * lead_inv
    beta = discriminant.coefficient((1, 4)) * lead_inv
    gamma = discriminant.coefficient((0, 6)) * lead_inv
    disc = (nf(18) * alpha * beta * gamma
            - nf(4) * alpha ** 3 * gamma
            + alpha ** 2 * beta ** 2
            - nf(4) * beta ** 3
            - nf(27) * gamma ** 2)
    return TildeE8Certificate(
        square_root_form=square_form,
        discriminant_germ=discriminant,
        tangent_cone_form=lifted,
        principal_part=(alpha, beta, gamma),
        resolvent_discriminant=disc,
        normalization=("weight-6 part divided by its x^3 coefficient; "
                       "x along the cube line, y a chart coordinate, both unscaled"),
    )


def describe_certificate(cert: TildeE8Certificate) -> str:
    alpha, beta, gamma = cert.principal_part
    return (f"L = {cert.square_root_form}; cone = {cert.tangent_cone_form}; "
            f"(alpha, beta, gamma) = ({render_element(alpha)}, "
            f"{render_element(beta)}, {render_element(gamma)}); "
            f"disc = {render_element(cert.resolvent_discriminant)}")
