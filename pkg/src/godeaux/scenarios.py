"""Named verification suites producing structured reports.

Each suite runs an ordered list of exact checks and records one row per
claim: PASS/FAIL rows carry exact witnesses (never floats), and claims the
construction settles by prose argument rather than finite computation are
recorded as SKIPPED so coverage stays visible.  Reports are deterministic
apart from the timestamp.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

from . import divcalc as dc
from . import germlab, quintic
from .exactnum import render_element
from .mpoly import LinearMap4

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


# Registry of claim anchors: every check row cites one of these strings.
ANCHORS = {
    "s2.parameters":
        "a = u^2, b = -(u^2-u+1)/(2u^2-4u+1), c = -(34u^2-18u-7)/(29u^2+22u-33), "
        "d = (7u^2+4u-6)/(3u-2), e = -(3u^2+6u-8)/(3u^2+u-2), "
        "f = -(225u^2-156u-10)/(5u^2+212u-163), with u^3+u^2-1 = 0",
    "s2.quintic_form":
        "F5 = (aT+bZ+Y)^2 X^3 + (aX+bT+Z)^2 Y^3 + (aY+bX+T)^2 Z^3 + "
        "(aZ+bY+X)^2 T^3 + the c, d, e, f monomial-orbit blocks; "
        "homogeneous of degree 5",
    "s2.sigma_order": "sigma: (X,Y,Z,T) -> (T,X,Y,Z) satisfies sigma^4 = id",
    "s2.sigma_invariance": "F5 o sigma = F5 as polynomials",
    "s2.sigma_orbit_closure":
        "the monomial support of F5 is closed under the coordinate 4-cycle "
        "with equal coefficients",
    "s2.fixed_p0": "sigma fixes P0 = (1,1,1,1)",
    "s2.fixed_q0": "sigma fixes Q0 = (1,-1,1,-1)",
    "s2.generic_point_moves": "sigma moves the generic point (1,2,3,4)",
    "s2.sigma_square_lines":
        "sigma^2 fixes the lines r = {X+Z = Y+T = 0} and "
        "r' = {X-Z = Y-T = 0} pointwise",
    "s2.line_r_on_surface": "F5 restricted to r is the zero binary form",
    "s2.line_rp_quintic": "F5 restricted to r' is a nonzero binary quintic",
    "s2.line_rp_squarefree":
        "F5 restricted to r' is squarefree (five distinct intersection points)",
    "s2.line_rp_q0": "F5 restricted to r' vanishes at (s,t) = (1,-1), the "
                     "parameter of Q0",
    "s2.critical_points":
        "F5 and all four partials vanish at each coordinate vertex, and the "
        "local quadratic part is a nonzero rank-1 perfect square",
    "s2.smooth_point": "the gradient of F5 is nonzero at (1,0,-1,0)",
    "s2.quadric_base_points": "YT and XZ vanish at all four vertices",
    "s2.germ_vertex_1": "the germ at (1,0,0,0) certifies z^2 + x^3 + y^6 "
                        "(weighted-jet nondegeneracy)",
    "s2.germ_vertex_2": "the germ at (0,1,0,0) certifies z^2 + x^3 + y^6 "
                        "(weighted-jet nondegeneracy)",
    "s2.germ_vertex_3": "the germ at (0,0,1,0) certifies z^2 + x^3 + y^6 "
                        "(weighted-jet nondegeneracy)",
    "s2.germ_vertex_4": "the germ at (0,0,0,1) certifies z^2 + x^3 + y^6 "
                        "(weighted-jet nondegeneracy)",
    "s2.classification":
        "the resolved surface is minimal of general type with p_g = q = 0",
    "s2.bicanonical":
        "the quadric pencil lambda*YT + mu*XZ cuts out the bicanonical system",
    "s2.perturbation_distinguishing":
        "a perturbed parameter set must break at least one exact check",
    "s2.sigma_degenerate":
        "fixed-point content is vacuous when the symmetry is the identity",

    "s3.kv_square": "K^2 = 5 - 4 = 1 on the resolution",
    "s3.exceptional_pairings": "E_i^2 = -1 and E_i.K = 1 for the four "
                               "elliptic exceptionals",
    "s3.fixed_curve_pairings": "K.R = 1 and R^2 = -3 for the fixed rational "
                               "curve",
    "s3.pencil_h_minus_r": "(H-R)^2 = 0, (H-R).K = 4: a pencil of genus-3 "
                           "curves",
    "s3.pencil_3k_minus_r": "(3K-R)^2 = 9-6-3 = 0, (3K-R).K = 3-1 = 2: a "
                            "pencil of genus-2 curves",
    "s3.system_4k_minus_r": "(4K-R)^2 = 5, (4K-R).K = 3, (4K-R).(3K-R) = 2: "
                            "a system of genus-5 curves",
    "s3.sixsection": "R.(3K-R) = 6",
    "s3.bd_pairing": "B.D = (3K-R).(H-R)/2 = 4",
    "s3.euler_v": "12(1-q+p_g) = K^2 + e gives e(V) = 11",
    "s3.euler_vprime": "five blow-ups give e(V') = 16",
    "s3.euler_f": "e(V') = 2 e(F) - e(R_0+...+R_4+R') gives e(F) = 14",
    "s3.noether_f": "12 = K_F^2 + e(F) = -2 + 14",
    "s3.case_analysis":
        "the special members of |3K-R| fall into the three listed types",
    "s3.prose_coverage":
        "rationality of the quotient surface and base-point freeness of the "
        "genus-2 pencil",

    "s4.canonical_identity": "K_F = -3h + Z + sum_i (Z_i + 2 Z_i')",
    "s4.kf_numbers": "K_F^2 = 9 - 11 = -2 and e(F) = 3 + 11 = 14",
    "s4.branch_curve": "W = 10h - 4Z - sum_i (3 Z_i + 6 Z_i'): degree 10, "
                       "multiplicity 4 at q and (3,3) at each p_i, p_i'",
    "s4.branch_genus": "W^2 = -6 and W.K_F = 4, so the branch curve has "
                       "genus 0",
    "s4.branch_divisor": "W' = W + sum_i Z_i is disjointly supported: "
                         "W.Z_i = 0 and Z_i.Z_j = 0",
    "s4.cover_canonical": "K = p*(K_F + W'/2) = p*(2h - Z - sum_i Z_i') and "
                          "K^2 = -4 on the double cover",
    "s4.reduced_branch": "the reduced preimage of W has square -6/2 = -3",
    "s4.exceptional_curves": "R_i = reduced preimage of Z_i has R_i^2 = "
                             "R_i.K = -1",
    "s4.elliptic_preimages": "p*(Z_i') has square -2 and adjunction genus 1",
    "s4.pencil_c1": "4h - 2Z_0 - 4Z_0' - sum_{i>0}(Z_i + 2Z_i') ~ "
                    "(h - Z_0 - 2Z_0') + (3h - sum_i (Z_i + 2Z_i'))",
    "s4.pencil_c2": "4h - 2Z_0 - 4Z_0' - sum_{i>0}(Z_i + 2Z_i') ~ "
                    "Z + (4h - Z - 2Z_0 - 4Z_0' - sum_{i>0}(Z_i + 2Z_i'))",
    "s4.long_identity": "K + sum E_i' = 9p*(h) - 2p*(Z) - 3p*(Z_0) - "
                        "7p*(Z_0') - 2 sum_{i>0} p*(Z_i) - 5 sum_{i>0} p*(Z_i')",
    "s4.blow_down_chain": "contracting the five R_i raises K^2 from -4 to 1, "
                          "and then K.R = 1, R^2 = -3",
    "s4.noether_f": "12 = K_F^2 + e(F) = -2 + 14",
    "s4.h_system": "H = R + D has H^2 = 5, H.K = 5, genus 6",
    "s4.degree_one_map": "H^2 = 5 is prime, so the map given by |H| has "
                         "degree 1 onto a quintic",

    "s6.solve": "E_1 = E_2 - C_1/2 - C_2/2 + C_3/2 + C_4/2 (zero "
                "coefficients on the A_i and the fiber)",
    "s6.conclusion": "2E_1 + C_1 + C_2 ~ 2E_2 + C_3 + C_4",
    "s6.nodal_sum": "C_1+C_2+C_3+C_4 ~ 2(3K-R) - 2A - 2A' = 2L "
                    "(pairing-consistent)",
    "s6.l_pairings": "L^2 = (sum C_i)^2/4 = -2 and L.K = 0",
    "s6.chi_cover": "chi = 2*1 + L.(L+K)/2 = 1 on the nodal double cover",
    "s6.kz_square": "K^2 = 2(K+L)^2 = -2 on the nodal double cover",
    "s6.no_nodal_curves": "the surface contains no (-2)-curves",
    "s6.simply_connected": "the fundamental group is trivial",
}


@dataclass(frozen=True)
class Check:
    """One verified claim: identifier, cited claim, status, exact witness."""

    id: str
    anchor: str
    status: str
    witness: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"bad status {self.status!r}")
        if not self.anchor:
            raise ValueError("check must cite a claim")
        if self.status == FAIL and not self.witness:
            raise ValueError("failing check must carry a witness")


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    checks: tuple[Check, ...]
    toolchain: dict = field(default_factory=dict)

    @property
    def counts(self) -> dict:
        tally = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for check in self.checks:
            tally[check.status] += 1
        return tally

    @property
    def ok(self) -> bool:
        return self.counts[FAIL] == 0

    def to_dict(self) -> dict:
        tally = self.counts
        return {
            "suite": self.suite,
            "checks": [dataclasses.asdict(c) for c in self.checks],
            "summary": {"pass": tally[PASS], "fail": tally[FAIL],
                        "skipped": tally[SKIPPED]},
            "toolchain": dict(self.toolchain),
        }


def _toolchain() -> dict:
    import godeaux
    return {
        "tool": "godeaux",
        "version": getattr(godeaux, "__version__", "0"),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


class _Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def result(self, check_id: str, ok: bool, witness: str = "",
               fail_witness: str = "") -> bool:
        status = PASS if ok else FAIL
        self.checks.append(Check(check_id, ANCHORS[check_id], status,
                                 witness if ok else (fail_witness or witness
                                                     or "check failed")))
        return ok

    def skip(self, check_id: str, reason: str):
        self.checks.append(Check(check_id, ANCHORS[check_id], SKIPPED, reason))

    def report(self, suite: str) -> VerificationReport:
        return VerificationReport(suite, tuple(self.checks), _toolchain())


PROSE_NOTE = "established by prose argument; not reproducible as a finite exact check"


# -- section 2: the construction ---------------------------------------------------


def run_section2(parameters: quintic.Parameters | None = None,
                 sigma: LinearMap4 | None = None) -> VerificationReport:
    """Build the quintic and verify every computable construction claim.

    ``parameters``/``sigma`` substitute a non-default configuration (used by
    the non-vacuity suite); the canonical run passes neither.
    """
    rec = _Recorder()
    custom = parameters is not None or sigma is not None
    params = parameters if parameters is not None else quintic.build_parameters()
    rec.result("s2.parameters", True,
               witness="a = " + render_element(params.a)
               + "; b = " + render_element(params.b)
               + "; c = " + render_element(params.c)
               + "; d = " + render_element(params.d)
               + "; e = " + render_element(params.e)
               + "; f = " + render_element(params.f))
    bundle = quintic.build_quintic(params)
    if sigma is not None:
        bundle = dataclasses.replace(bundle, sigma=sigma)

    rec.result("s2.quintic_form",
               bundle.f5.is_homogeneous() and bundle.f5.total_degree() == 5,
               witness=f"degree 5, {bundle.f5.monomial_count()} monomials",
               fail_witness=str(bundle.f5))
    rec.result("s2.sigma_order", (bundle.sigma ** 4).is_identity(),
               witness="sigma^4 = id exactly")
    rec.result("s2.sigma_invariance", quintic.check_sigma_invariance(bundle),
               witness="F5 o sigma - F5 = 0",
               fail_witness=str(bundle.f5.substitute_linear(bundle.sigma)
                                - bundle.f5))
    rec.result("s2.sigma_orbit_closure", quintic.monomial_orbit_closed(bundle),
               witness="term map closed under the 4-cycle")

    fixed = quintic.check_fixed_points(bundle)
    rec.result("s2.fixed_p0", fixed.p0_fixed, witness="sigma(P0) ~ P0")
    rec.result("s2.fixed_q0", fixed.q0_fixed, witness="sigma(Q0) ~ Q0")
    rec.result("s2.generic_point_moves", fixed.generic_moves,
               witness="sigma(1,2,3,4) = (4,1,2,3), not proportional")
    rec.result("s2.sigma_square_lines",
               fixed.line_r_pointwise and fixed.line_r_prime_pointwise,
               witness="generators and a seeded combination are fixed "
                       "projectively")
    if fixed.degenerate:
        rec.skip("s2.sigma_degenerate",
                 "identity map supplied; every point is fixed")

    lines = quintic.check_line_containment(bundle)
    rec.result("s2.line_r_on_surface", lines.r_contained,
               witness="restriction = 0",
               fail_witness=f"restriction = {lines.on_r}")
    rec.result("s2.line_rp_quintic", lines.r_prime_degree_five,
               witness=f"restriction = {lines.on_r_prime}")
    rec.result("s2.line_rp_squarefree", lines.r_prime_squarefree,
               witness=lines.r_prime_squarefree_witness)
    rec.result("s2.line_rp_q0", lines.q0_parameter_root,
               witness="value at (1,-1) is 0")

    try:
        critical = quintic.check_critical_points(bundle)
        forms = "; ".join(f"vertex {c.index}: L = {c.square_root_form}"
                          for c in critical)
        rec.result("s2.critical_points", True, witness=forms)
    except quintic.CheckFailed as err:
        rec.result("s2.critical_points", False,
                   fail_witness=f"{err}; witness: {err.witness}")

    gradient = [bundle.f5.partial(v).eval((1, 0, -1, 0)) for v in quintic.VARS]
    rec.result("s2.smooth_point", any(not g.is_zero() for g in gradient),
               witness="gradient = (" + ", ".join(render_element(g)
                                                  for g in gradient) + ")")
    rec.result("s2.quadric_base_points",
               quintic.quadric_pencil_contains_vertices(bundle),
               witness="both quadrics vanish at every vertex")

    for index in (1, 2, 3, 4):
        check_id = f"s2.germ_vertex_{index}"
        try:
            cert = germlab.tilde_e8_certificate(germlab.localize(bundle, index))
            rec.result(check_id, cert.passed,
                       witness=germlab.describe_certificate(cert),
                       fail_witness=germlab.describe_certificate(cert))
        except germlab.GermError as err:
            rec.result(check_id, False,
                       fail_witness=f"stage {err.stage}: {err}; "
                                    f"witness: {err.witness}")

    rec.skip("s2.classification", PROSE_NOTE)
    rec.skip("s2.bicanonical", PROSE_NOTE)

    if custom:
        distinguished = any(c.status == FAIL for c in rec.checks)
        rec.result("s2.perturbation_distinguishing", distinguished,
                   witness="the perturbed configuration broke at least one check",
                   fail_witness="perturbation not distinguishing: every "
                                "check still passes")
    return rec.report("section2")


# -- section 3: the resolution lattice ----------------------------------------------


V_LATTICE_DECL = """\
# Lattice of the resolved quintic: hyperplane pullback H, the four elliptic
# exceptionals E1..E4 over the vertices, and the fixed rational curve R.
# Declared geometric pairings: H is a degree-5 polarization, the E_i are
# disjoint (-1)-classes away from H, R is the resolution of a line (H.R = 1)
# missing the four vertices (E_i.R = 0) with self-intersection -3.
basis H E1 E2 E3 E4 R
pair H H = 5
pair E1 E1 = -1
pair E2 E2 = -1
pair E3 E3 = -1
pair E4 E4 = -1
pair R R = -3
pair H R = 1
class K = H - E1 - E2 - E3 - E4
canonical K
"""


def v_lattice() -> dc.DeclaredLattice:
    return dc.parse_lattice(V_LATTICE_DECL)


def run_section3() -> VerificationReport:
    rec = _Recorder()
    lat = v_lattice()
    K = lat.named["K"]
    H, R = lat.basis("H"), lat.basis("R")
    exceptionals = [lat.basis(f"E{i}") for i in (1, 2, 3, 4)]

    rec.result("s3.kv_square", dc.pair(K, K) == 1,
               witness=f"K.K = {dc.pair(K, K)}")
    rec.result("s3.exceptional_pairings",
               all(dc.pair(E, E) == -1 and dc.pair(E, K) == 1
                   for E in exceptionals),
               witness="E_i^2 = -1, E_i.K = 1 for i = 1..4")
    rec.result("s3.fixed_curve_pairings",
               dc.pair(K, R) == 1 and dc.pair(R, R) == -3,
               witness=f"K.R = {dc.pair(K, R)}, R.R = {dc.pair(R, R)}")

    pencil = H - R
    rec.result("s3.pencil_h_minus_r",
               dc.pair(pencil, pencil) == 0 and dc.pair(pencil, K) == 4
               and dc.adjunction_genus(pencil) == 3,
               witness=f"square {dc.pair(pencil, pencil)}, K-degree "
                       f"{dc.pair(pencil, K)}, genus {dc.adjunction_genus(pencil)}")
    tricanonical = K * 3 - R
    rec.result("s3.pencil_3k_minus_r",
               dc.pair(tricanonical, tricanonical) == 0
               and dc.pair(tricanonical, K) == 2
               and dc.adjunction_genus(tricanonical) == 2,
               witness=f"square {dc.pair(tricanonical, tricanonical)}, "
                       f"K-degree {dc.pair(tricanonical, K)}, genus "
                       f"{dc.adjunction_genus(tricanonical)}")
    quadri = K * 4 - R
    rec.result("s3.system_4k_minus_r",
               dc.pair(quadri, quadri) == 5 and dc.pair(quadri, K) == 3
               and dc.pair(quadri, tricanonical) == 2
               and dc.adjunction_genus(quadri) == 5,
               witness=f"({dc.pair(quadri, quadri)}, {dc.pair(quadri, K)}, "
                       f"{dc.pair(quadri, tricanonical)}), genus "
                       f"{dc.adjunction_genus(quadri)}")
    rec.result("s3.sixsection", dc.pair(tricanonical, R) == 6,
               witness=f"R.(3K-R) = {dc.pair(tricanonical, R)}")
    bd_double = dc.pair(tricanonical, pencil)
    rec.result("s3.bd_pairing",
               bd_double == 8 and Fraction(bd_double, 2) == 4,
               witness=f"(3K-R).(H-R) = {bd_double}, half = "
                       f"{Fraction(bd_double, 2)}")

    euler_v = 12 * 1 - dc.pair(K, K)
    rec.result("s3.euler_v",
               euler_v == 11
               and dc.noether_check(dc.SurfaceInvariants(1, 1, 11)),
               witness="e(V) = 12 - 1 = 11")
    euler_vprime = dc.euler_bookkeeping("blowup", base=11, points=5)
    rec.result("s3.euler_vprime", euler_vprime == 16,
               witness=f"e(V') = 11 + 5 = {euler_vprime}")
    branch_euler = 6 * 2  # six disjoint rational curves
    euler_f = Fraction(euler_vprime + branch_euler, 2)
    rec.result("s3.euler_f",
               euler_f == 14
               and dc.euler_bookkeeping("double_cover", base=14,
                                        branch=branch_euler) == 16,
               witness=f"e(F) = (16 + 12)/2 = {euler_f}")
    rec.result("s3.noether_f",
               dc.noether_check(dc.SurfaceInvariants(1, -2, 14)),
               witness="12*1 = -2 + 14")
    rec.skip("s3.case_analysis", PROSE_NOTE)
    rec.skip("s3.prose_coverage", PROSE_NOTE)
    return rec.report("section3")


# -- section 4: the double-plane model ------------------------------------------------


def plane_blowup_lattice() -> dc.DeclaredLattice:
    """Plane blown up at q and five pairs p_i, p_i' (p_i' infinitely near)."""
    forest = [("q", None)] + [(f"p{i}", f"p{i}'") for i in range(5)]
    return dc.blowup_basis(forest)


def run_section4() -> VerificationReport:
    rec = _Recorder()
    lat = plane_blowup_lattice()
    h = lat.basis("h")
    Z = lat.named["q"]
    Zi = [lat.named[f"p{i}"] for i in range(5)]
    Zip = [lat.named[f"p{i}'"] for i in range(5)]
    K = lat.canonical

    rhs = h * -3 + Z
    for a, b in zip(Zi, Zip):
        rhs = rhs + a + b * 2
    rec.result("s4.canonical_identity", dc.class_equal(K, rhs),
               witness=f"K = {K}")
    rec.result("s4.kf_numbers",
               dc.pair(K, K) == -2 and 3 + (lat.rank - 1) == 14,
               witness=f"K^2 = {dc.pair(K, K)}, e = 3 + 11 = 14")

    W = h * 10 - Z * 4
    for a, b in zip(Zi, Zip):
        W = W - a * 3 - b * 6
    mults = ([dc.pair(W, lat.basis("e_q"))]
             + [dc.pair(W, lat.basis(f"e_p{i}")) for i in range(5)]
             + [dc.pair(W, lat.basis(f"e_p{i}'")) for i in range(5)])
    rec.result("s4.branch_curve",
               dc.pair(W, h) == 10 and mults[0] == 4
               and all(m == 3 for m in mults[1:]),
               witness=f"degree {dc.pair(W, h)}, multiplicities {mults[0]}; "
                       + ", ".join(str(m) for m in mults[1:]))
    rec.result("s4.branch_genus",
               dc.pair(W, W) == -6 and dc.pair(W, K) == 4
               and dc.adjunction_genus(W) == 0,
               witness=f"W^2 = {dc.pair(W, W)}, W.K = {dc.pair(W, K)}, "
                       f"genus {dc.adjunction_genus(W)}")
    disjoint = (all(dc.pair(W, a) == 0 for a in Zi)
                and all(dc.pair(Zi[i], Zi[j]) == 0
                        for i in range(5) for j in range(i + 1, 5)))
    branch = W
    for a in Zi:
        branch = branch + a
    rec.result("s4.branch_divisor",
               disjoint and dc.pair(branch, branch) == -16,
               witness="W.Z_i = 0, Z_i.Z_j = 0; W'^2 = "
                       f"{dc.pair(branch, branch)}")

    cover = dc.double_cover_pullback(lat, branch)
    KV = cover.lattice.canonical
    expected = h * 2 - Z
    for b in Zip:
        expected = expected - b
    rec.result("s4.cover_canonical",
               dc.class_equal(KV, cover.pull(expected))
               and dc.pair(KV, KV) == -4,
               witness=f"K = {KV}; K^2 = {dc.pair(KV, KV)}")
    reduced_w = cover.reduced_preimage(W)
    rec.result("s4.reduced_branch", dc.pair(reduced_w, reduced_w) == -3,
               witness=f"square {dc.pair(reduced_w, reduced_w)}")
    Ri = [cover.reduced_preimage(a) for a in Zi]
    rec.result("s4.exceptional_curves",
               all(dc.pair(r, r) == -1 and dc.pair(r, KV) == -1 for r in Ri),
               witness="R_i^2 = R_i.K = -1 for i = 0..4")
    elliptic = [cover.pull(b) for b in Zip]
    rec.result("s4.elliptic_preimages",
               all(dc.pair(e, e) == -2 and dc.adjunction_genus(e) == 1
                   for e in elliptic),
               witness="p*(Z_i')^2 = -2, genus 1")

    quartic_pencil = h * 4 - Zi[0] * 2 - Zip[0] * 4
    for a, b in zip(Zi[1:], Zip[1:]):
        quartic_pencil = quartic_pencil - a - b * 2
    line_class = h - Zi[0] - Zip[0] * 2
    cubic_class = h * 3
    for a, b in zip(Zi, Zip):
        cubic_class = cubic_class - a - b * 2
    rec.result("s4.pencil_c1",
               dc.class_equal(quartic_pencil, line_class + cubic_class),
               witness=f"C_1 = {line_class}")
    rec.result("s4.pencil_c2",
               dc.class_equal(quartic_pencil, Z + (quartic_pencil - Z)),
               witness=f"C_2 = {Z}")

    long_lhs = KV + cover.pull(cubic_class) + cover.pull(quartic_pencil - Z)
    long_rhs = (cover.pull(h) * 9 - cover.pull(Z) * 2 - cover.pull(Zi[0]) * 3
                - cover.pull(Zip[0]) * 7)
    for a, b in zip(Zi[1:], Zip[1:]):
        long_rhs = long_rhs - cover.pull(a) * 2 - cover.pull(b) * 5
    rec.result("s4.long_identity", dc.class_equal(long_lhs, long_rhs),
               witness=f"both sides = {long_lhs}")

    current = cover.lattice
    tracked_r = reduced_w
    tracked_e = list(Ri)
    squares = [dc.pair(current.canonical, current.canonical)]
    for step in range(5):
        down = dc.blow_down(current,
                            dc.DivisorClass(current, tracked_e[step].coefficients))
        current = down.lattice
        tracked_r = down.push(tracked_r)
        tracked_e = [down.push(dc.DivisorClass(current, e.coefficients))
                     for e in tracked_e]
        squares.append(dc.pair(current.canonical, current.canonical))
    rec.result("s4.blow_down_chain",
               squares == [-4, -3, -2, -1, 0, 1]
               and dc.pair(current.canonical, tracked_r) == 1
               and dc.pair(tracked_r, tracked_r) == -3,
               witness=f"K^2: {' -> '.join(str(s) for s in squares)}; "
                       f"K.R = {dc.pair(current.canonical, tracked_r)}, "
                       f"R^2 = {dc.pair(tracked_r, tracked_r)}")
    rec.result("s4.noether_f",
               dc.noether_check(dc.SurfaceInvariants(1, -2, 14)),
               witness="12*1 = -2 + 14")

    h_lat = dc.parse_lattice("""
        basis D R K
        pair D D = 0
        pair D R = 4
        pair R R = -3
        pair D K = 4
        pair R K = 1
        pair K K = 1
        canonical K
    """)
    Hd = h_lat.basis("D") + h_lat.basis("R")
    rec.result("s4.h_system",
               dc.pair(Hd, Hd) == 5 and dc.pair(Hd, h_lat.canonical) == 5
               and dc.adjunction_genus(Hd) == 6,
               witness=f"H^2 = {dc.pair(Hd, Hd)}, H.K = "
                       f"{dc.pair(Hd, h_lat.canonical)}, genus "
                       f"{dc.adjunction_genus(Hd)}")
    rec.skip("s4.degree_one_map", PROSE_NOTE)
    return rec.report("section4")


# -- section 6: the lattice identity ---------------------------------------------------


def fiber_component_lattice() -> dc.DeclaredLattice:
    """Components of the special fibers of the genus-2 pencil, the two
    3-section elliptic curves, the general fiber F2, and the canonical class.

    Incidences: the nodal fibers are {C1, C3} and {C2, C4} with E1 meeting
    C1, C2 and E2 meeting C3, C4; Ea, Eb are the elliptic halves of the two
    nodal fibers; A1..A3 are the elliptic (-1)-components of the other three
    special fibers and meet both 3-sections once.
    """
    names = ("E1", "E2", "A1", "A2", "A3", "C1", "C2", "C3", "C4",
             "F2", "K", "Ea", "Eb")
    index = {n: i for i, n in enumerate(names)}
    size = len(names)
    gram = [[Fraction(0)] * size for _ in range(size)]

    def put(a, b, v):
        gram[index[a]][index[b]] = Fraction(v)
        gram[index[b]][index[a]] = Fraction(v)

    for e in ("E1", "E2"):
        put(e, e, -1)
        put(e, "K", 1)
        put(e, "F2", 3)
    for a in ("A1", "A2", "A3"):
        put(a, a, -1)
        put(a, "K", 1)
        put("E1", a, 1)
        put("E2", a, 1)
    for c in ("C1", "C2", "C3", "C4"):
        put(c, c, -2)
    put("E1", "C1", 1)
    put("E1", "C2", 1)
    put("E2", "C3", 1)
    put("E2", "C4", 1)
    put("F2", "F2", 0)
    put("F2", "K", 2)
    put("K", "K", 1)
    for half, components in (("Ea", ("C1", "C3")), ("Eb", ("C2", "C4"))):
        put(half, half, -1)
        put(half, "K", 1)
        for c in components:
            put(half, c, 1)
        put("E1", half, 1)
        put("E2", half, 1)
    return dc.DeclaredLattice(names, gram)


def run_section6_identity() -> VerificationReport:
    rec = _Recorder()
    lat = fiber_component_lattice()
    E1, E2 = lat.basis("E1"), lat.basis("E2")
    K = lat.basis("K")
    F2 = lat.basis("F2")
    nodal = [lat.basis(c) for c in ("C1", "C2", "C3", "C4")]
    elliptic = [lat.basis(a) for a in ("A1", "A2", "A3")]
    target = E1 - E2

    generators = elliptic + nodal + [F2]
    probes = [(probe, dc.pair(target, probe)) for probe in generators]
    probes.append((E1, dc.pair(target, E1)))  # the 3-section normalization
    try:
        outcome = dc.solve_class(generators, probes)
        expected = (Fraction(0),) * 3 + (Fraction(-1, 2), Fraction(-1, 2),
                                         Fraction(1, 2), Fraction(1, 2),
                                         Fraction(0))
        rec.result("s6.solve",
                   outcome.coefficients == expected and outcome.nullity == 0,
                   witness="(n_1, n_2, n_3; m_1..m_4; a) = ("
                           + ", ".join(str(c) for c in outcome.coefficients)
                           + f"); rank {outcome.rank}, nullity {outcome.nullity}")
    except dc.InconsistentSystem as err:
        rec.result("s6.solve", False, fail_witness=str(err))

    combo = target * 2 + nodal[0] + nodal[1] - nodal[2] - nodal[3]
    rec.result("s6.conclusion",
               all(dc.pair(combo, lat.basis(n)) == 0 for n in lat.names),
               witness="2E_1 + C_1 + C_2 - 2E_2 - C_3 - C_4 pairs to zero "
                       "with every declared class")

    Ea, Eb = lat.basis("Ea"), lat.basis("Eb")
    L = F2 - Ea - Eb
    nodal_sum = nodal[0] + nodal[1] + nodal[2] + nodal[3]
    rec.result("s6.nodal_sum",
               all(dc.pair(nodal_sum - L * 2, lat.basis(n)) == 0
                   for n in lat.names),
               witness="sum C_i - 2L pairs to zero with every declared class")
    quarter = dc.pair(nodal_sum, nodal_sum) / 4
    rec.result("s6.l_pairings",
               dc.pair(L, L) == -2 and quarter == -2 and dc.pair(L, K) == 0,
               witness=f"L^2 = {dc.pair(L, L)} = (sum C)^2/4 = {quarter}; "
                       f"L.K = {dc.pair(L, K)}")
    chi_cover = 2 * 1 + Fraction(dc.pair(L, L + K), 2)
    rec.result("s6.chi_cover", chi_cover == 1, witness=f"chi = {chi_cover}")
    kz_square = 2 * dc.pair(K + L, K + L)
    rec.result("s6.kz_square", kz_square == -2, witness=f"K^2 = {kz_square}")
    rec.skip("s6.no_nodal_curves", PROSE_NOTE)
    rec.skip("s6.simply_connected", PROSE_NOTE)
    return rec.report("section6")


SUITES = {
    "section2": run_section2,
    "section3": run_section3,
    "section4": run_section4,
    "section6": run_section6_identity,
}


def run_suites(names) -> list[VerificationReport]:
    return [SUITES[name]() for name in names]


# -- serialization ------------------------------------------------------------------


def reports_to_json(reports: list[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)


def report_to_markdown(report: VerificationReport) -> str:
    tally = report.counts
    lines = [
        f"## Suite `{report.suite}` — {tally[PASS]} pass, {tally[FAIL]} fail, "
        f"{tally[SKIPPED]} skipped",
        "",
        "| status | check | claim | witness |",
        "| --- | --- | --- | --- |",
    ]
    for check in report.checks:
        witness = check.witness.replace("|", "\\|")
        anchor = check.anchor.replace("|", "\\|")
        lines.append(f"| {check.status} | `{check.id}` | {anchor} | {witness} |")
    return "\n".join(lines)


def report_to_text(report: VerificationReport) -> str:
    tally = report.counts
    lines = [f"suite {report.suite}: {tally[PASS]} pass, {tally[FAIL]} fail, "
             f"{tally[SKIPPED]} skipped"]
    for check in report.checks:
        lines.append(f"  [{check.status:^7}] {check.id}: {check.anchor}")
        if check.witness:
            lines.append(f"            {check.witness}")
    return "\n".join(lines)
