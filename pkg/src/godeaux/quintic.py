"""Construction of the invariant quintic surface and its global checks.

The surface is cut out by a degree-5 form in X, Y, Z, T built from six
parameters in K.  Everything here is verified by exact polynomial identity:
invariance under the order-4 coordinate cycle, vanishing along the fixed
line of the square of the cycle, and degenerate critical points at the four
coordinate vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactnum import NumberFieldElement, U, nf, render_element
from .linalg import symmetric_rank_one_root
from .mpoly import LinearMap4, MPoly, ProjectivePoint, render_poly

VARS = ("X", "Y", "Z", "T")


class CheckFailed(AssertionError):
    """An exact verification failed; carries the offending witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Parameters:
    """The six surface parameters, exact in K."""

    a: NumberFieldElement
    b: NumberFieldElement
    c: NumberFieldElement
    d: NumberFieldElement
    e: NumberFieldElement
    f: NumberFieldElement


def _quotient(num: NumberFieldElement, den: NumberFieldElement) -> NumberFieldElement:
    if den.is_zero():
        raise CheckFailed("parameter denominator vanishes in K", witness=den)
    return num * den.inverse()


def build_parameters() -> Parameters:
    """The parameter values that give the surface its four special points."""
    u = U
    return Parameters(
        a=u * u,
        b=_quotient(-(u * u - u + 1), nf(1, -4, 2)),
        c=_quotient(-(nf(-7, -18, 34)), nf(-33, 22, 29)),
        d=_quotient(nf(-6, 4, 7), nf(-2, 3)),
        e=_quotient(-(nf(-8, 6, 3)), nf(-2, 1, 3)),
        f=_quotient(-(nf(-10, -156, 225)), nf(-163, 212, 5)),
    )


def perturbed_parameters() -> Parameters:
    """Same values except the first parameter is bumped from u^2 to u.

    Used to demonstrate that the verifier can fail: the surface loses its
    special singular structure.
    """
    p = build_parameters()
    return Parameters(a=U, b=p.b, c=p.c, d=p.d, e=p.e, f=p.f)


@dataclass(frozen=True)
class SurfaceBundle:
    """The quintic form together with its symmetry and reference geometry."""

    f5: MPoly
    sigma: LinearMap4
    parameters: Parameters
    vertices: tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint, ProjectivePoint]
    p0: ProjectivePoint
    q0: ProjectivePoint
    line_r: tuple[ProjectivePoint, ProjectivePoint]
    line_r_prime: tuple[ProjectivePoint, ProjectivePoint]
    quadric_yt: MPoly
    quadric_xz: MPoly


def _var(name: str) -> MPoly:
    return MPoly.variable(VARS, name)


def _monomial_block(monomials: list[str]) -> MPoly:
    total = MPoly.zero(VARS)
    for text in monomials:
        term = MPoly.constant(VARS, 1)
        for piece in text.split("*"):
            if "^" in piece:
                name, power = piece.split("^")
                term = term * _var(name) ** int(power)
            else:
                term = term * _var(piece)
        total = total + term
    return total


def build_quintic(params: Parameters | None = None) -> SurfaceBundle:
    params = params or build_parameters()
    a, b = params.a, params.b
    X, Y, Z, T = (_var(v) for v in VARS)

    f5 = (
        (T * a + Z * b + Y) ** 2 * X ** 3
        + (X * a + T * b + Z) ** 2 * Y ** 3
        + (Y * a + X * b + T) ** 2 * Z ** 3
        + (Z * a + Y * b + X) ** 2 * T ** 3
        + _monomial_block(["X^2*Y*Z*T", "X*Y^2*Z*T", "X*Y*Z^2*T", "X*Y*Z*T^2"]) * params.c
        + _monomial_block(["X^2*Y^2*Z", "X^2*Y*T^2", "X*Z^2*T^2", "Y^2*Z^2*T"]) * params.d
        + _monomial_block(["X^2*Y^2*T", "X^2*Z*T^2", "X*Y^2*Z^2", "Y*Z^2*T^2"]) * params.e
        + _monomial_block(["X^2*Y*Z^2", "X^2*Z^2*T", "X*Y^2*T^2", "Y^2*Z*T^2"]) * params.f
    )

    point = lambda *cs: ProjectivePoint(cs)
    return SurfaceBundle(
        f5=f5,
        sigma=LinearMap4.coordinate_cycle(),
        parameters=params,
        vertices=(point(1, 0, 0, 0), point(0, 1, 0, 0),
                  point(0, 0, 1, 0), point(0, 0, 0, 1)),
        p0=point(1, 1, 1, 1),
        q0=point(1, -1, 1, -1),
        line_r=(point(1, 0, -1, 0), point(0, 1, 0, -1)),
        line_r_prime=(point(1, 0, 1, 0), point(0, 1, 0, 1)),
        quadric_yt=Y * T,
        quadric_xz=X * Z,
    )


# -- global checks --------------------------------------------------------------


def check_sigma_invariance(bundle: SurfaceBundle) -> bool:
    """F5 composed with the coordinate cycle equals F5 as a polynomial."""
    return (bundle.f5.substitute_linear(bundle.sigma) - bundle.f5).is_zero()


def monomial_orbit_closed(bundle: SurfaceBundle) -> bool:
    """Invariance restated combinatorially: the term map is closed under the
    coordinate 4-cycle with equal coefficients."""
    terms = bundle.f5.terms
    for exp, coef in terms.items():
        cycled = (exp[3], exp[0], exp[1], exp[2])
        if terms.get(cycled, None) != coef:
            return False
    return True


@dataclass(frozen=True)
class FixedPointResult:
    p0_fixed: bool
    q0_fixed: bool
    generic_moves: bool
    line_r_pointwise: bool
    line_r_prime_pointwise: bool
    degenerate: bool

    @property
    def ok(self) -> bool:
        return (self.p0_fixed and self.q0_fixed and self.generic_moves
                and self.line_r_pointwise and self.line_r_prime_pointwise)


def _line_fixed_pointwise(mapping: LinearMap4, p: ProjectivePoint,
                          q: ProjectivePoint, rng: random.Random) -> bool:
    # A linear map fixing three distinct points of a line fixes it pointwise.
    if not (mapping.apply(p) == p and mapping.apply(q) == q):
        return False
    while True:
        s, t = rng.randint(1, 9), rng.randint(1, 9)
        combo = [pc * s + qc * t for pc, qc in zip(p.coords, q.coords)]
        if any(not c.is_zero() for c in combo):
            mixed = ProjectivePoint(combo)
            if not (mixed == p or mixed == q):
                return mapping.apply(mixed) == mixed


def check_fixed_points(bundle: SurfaceBundle) -> FixedPointResult:
    sigma = bundle.sigma
    square = sigma.compose(sigma)
    rng = random.Random(1729)
    generic = ProjectivePoint((1, 2, 3, 4))
    return FixedPointResult(
        p0_fixed=sigma.apply(bundle.p0) == bundle.p0,
        q0_fixed=sigma.apply(bundle.q0) == bundle.q0,
        generic_moves=(sigma.apply(generic) == generic) == sigma.is_identity(),
        line_r_pointwise=_line_fixed_pointwise(square, *bundle.line_r, rng),
        line_r_prime_pointwise=_line_fixed_pointwise(square, *bundle.line_r_prime, rng),
        degenerate=sigma.is_identity(),
    )


@dataclass(frozen=True)
class LineContainmentResult:
    on_r: MPoly
    on_r_prime: MPoly
    r_contained: bool
    r_prime_degree_five: bool
    r_prime_squarefree: bool
    r_prime_squarefree_witness: str
    q0_parameter_root: bool

    @property
    def ok(self) -> bool:
        return (self.r_contained and self.r_prime_degree_five
                and self.r_prime_squarefree and self.q0_parameter_root)


def check_line_containment(bundle: SurfaceBundle) -> LineContainmentResult:
    from .mpoly import binary_form_squarefree

    on_r = bundle.f5.restrict_to_line(*bundle.line_r)
    on_rp = bundle.f5.restrict_to_line(*bundle.line_r_prime)
    degree_five = (not on_rp.is_zero()) and on_rp.total_degree() == 5
    if degree_five:
        sq = binary_form_squarefree(on_rp)
        squarefree, witness = sq.squarefree, sq.witness
    else:
        squarefree, witness = False, "restriction is not a quintic form"
    # Q0 = r'(1, -1), so (s, t) = (1, -1) must be a root of the restriction.
    q0_root = on_rp.eval((1, -1)).is_zero() if not on_rp.is_zero() else False
    return LineContainmentResult(
        on_r=on_r,
        on_r_prime=on_rp,
        r_contained=on_r.is_zero(),
        r_prime_degree_five=degree_five,
        r_prime_squarefree=squarefree,
        r_prime_squarefree_witness=witness,
        q0_parameter_root=q0_root,
    )


@dataclass(frozen=True)
class CriticalPointResult:
    index: int
    chart_variable: str
    value_zero: bool
    gradient_zero: bool
    square_root_form: MPoly | None  # linear form L with quadratic part = c*L^2
    square_scale: NumberFieldElement | None

    @property
    def ok(self) -> bool:
        return self.value_zero and self.gradient_zero and self.square_root_form is not None


def quadratic_square_root(local: MPoly):
    """Rank-1 decomposition of the degree-2 part; None unless a perfect square."""
    quad = local.graded_part(2)
    n = len(local.variables)
    from .exactnum import ZERO
    half = nf(1) / 2
    m = [[ZERO] * n for _ in range(n)]
    for exp, coef in quad.terms.items():
        support = [i for i, e in enumerate(exp) if e]
        if len(support) == 1:
            i = support[0]
            m[i][i] = coef
        else:
            i, j = support
            m[i][j] = m[j][i] = coef * half
    decomp = symmetric_rank_one_root(m, ZERO)
    if decomp is None:
        return None
    c, coeffs = decomp
    form = MPoly.zero(local.variables)
    for i, coef in enumerate(coeffs):
        if not coef.is_zero():
            form = form + MPoly.variable(local.variables, local.variables[i]) * coef
    return c, form


def check_critical_points(bundle: SurfaceBundle) -> list[CriticalPointResult]:
    """At each vertex: value and gradient vanish, quadratic part is a square.

    Raises :class:`CheckFailed` on the first vertex violating the contract.
    """
    results = []
    for index, vertex in enumerate(bundle.vertices, start=1):
        chart = VARS[index - 1]
        value = bundle.f5.eval(vertex.coords)
        gradient = [bundle.f5.partial(v).eval(vertex.coords) for v in VARS]
        local = bundle.f5.dehomogenize(chart)
        decomp = quadratic_square_root(local)
        result = CriticalPointResult(
            index=index,
            chart_variable=chart,
            value_zero=value.is_zero(),
            gradient_zero=all(g.is_zero() for g in gradient),
            square_root_form=None if decomp is None else decomp[1],
            square_scale=None if decomp is None else decomp[0],
        )
        if not result.value_zero:
            raise CheckFailed(f"surface does not pass through vertex {index}",
                              witness=render_element(value))
        if not result.gradient_zero:
            witness = ", ".join(render_element(g) for g in gradient)
            raise CheckFailed(f"gradient does not vanish at vertex {index}",
                              witness=witness)
        if decomp is None:
            raise CheckFailed(
                f"quadratic part at vertex {index} is not a rank-1 square",
                witness=render_poly(local.graded_part(2)))
        results.append(result)
    return results


def quadric_pencil_contains_vertices(bundle: SurfaceBundle) -> bool:
    """Both generators of the quadric pencil vanish at all four vertices."""
    for quadric in (bundle.quadric_yt, bundle.quadric_xz):
        for vertex in bundle.vertices:
            if not quadric.eval(vertex.coords).is_zero():
                return False
    return True
