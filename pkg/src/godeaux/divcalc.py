"""Formal divisor-class calculus on declared intersection lattices.

A lattice is a finite list of named basis classes with a symmetric rational
pairing matrix and, optionally, a canonical class; divisor classes are
rational coefficient vectors over the basis.  Blow-up bases, double-cover
pullbacks, and (-1)-class contractions are implemented as pure lattice
transforms, so every intersection number asserted downstream is a finite
exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import grammar
from .linalg import InconsistentSystem, solve

__all__ = [
    "DeclaredLattice", "DivisorClass", "SurfaceInvariants", "LatticeMismatch",
    "MissingCanonicalClass", "NotMinusOneClass", "OddComponentSquare",
    "InconsistentSystem", "pair", "adjunction_genus", "class_equal",
    "blowup_basis", "double_cover_pullback", "blow_down", "euler_bookkeeping",
    "noether_check", "solve_class", "parse_lattice", "evaluate_expression",
]


class LatticeMismatch(ValueError):
    pass


class MissingCanonicalClass(ValueError):
    pass


class NotMinusOneClass(ValueError):
    pass


class OddComponentSquare(ValueError):
    pass


class DeclaredLattice:
    """Named basis, symmetric rational gram matrix, optional canonical class."""

    __slots__ = ("names", "gram", "canonical", "named")

    def __init__(self, names, gram, canonical=None, named=None):
        names = tuple(names)
        gram = tuple(tuple(Fraction(v) for v in row) for row in gram)
        if len(gram) != len(names) or any(len(r) != len(names) for r in gram):
            raise ValueError("gram matrix shape does not match the basis")
        for i in range(len(names)):
            for j in range(len(names)):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "gram", gram)
        # Classes handed in from a predecessor lattice (same basis, possibly a
        # different object) are rebound to this one.
        object.__setattr__(self, "named",
                           {k: self._own(v) for k, v in (named or {}).items()})
        object.__setattr__(self, "canonical",
                           None if canonical is None else self._own(canonical))

    def __setattr__(self, name, value):
        raise AttributeError("DeclaredLattice is immutable")

    def _own(self, cls: "DivisorClass") -> "DivisorClass":
        if cls.lattice is not self:
            return DivisorClass(self, cls.coefficients)
        return cls

    @property
    def rank(self) -> int:
        return len(self.names)

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (Fraction(0),) * self.rank)

    def basis(self, name: str) -> "DivisorClass":
        i = self.names.index(name)
        return DivisorClass(self, tuple(Fraction(1) if j == i else Fraction(0)
                                        for j in range(self.rank)))

    def combination(self, **coeffs) -> "DivisorClass":
        vec = [Fraction(0)] * self.rank
        for name, value in coeffs.items():
            vec[self.names.index(name)] = Fraction(value)
        return DivisorClass(self, vec)

    def resolve(self, name: str) -> "DivisorClass":
        """Named class if declared, otherwise a basis class."""
        if name in self.named:
            return self.named[name]
        return self.basis(name)


class DivisorClass:
    """Rational linear combination of the basis classes of one lattice."""

    __slots__ = ("lattice", "coefficients")

    def __init__(self, lattice: DeclaredLattice, coefficients):
        coefficients = tuple(Fraction(c) for c in coefficients)
        if len(coefficients) != lattice.rank:
            raise ValueError("coefficient vector length mismatch")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("DivisorClass is immutable")

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            raise TypeError("expected a divisor class")
        if other.lattice is not self.lattice:
            raise LatticeMismatch("classes live in different lattices")

    def __add__(self, other):
        self._check(other)
        return DivisorClass(self.lattice,
                            tuple(a + b for a, b in zip(self.coefficients,
                                                        other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(self.lattice,
                            tuple(a - b for a, b in zip(self.coefficients,
                                                        other.coefficients)))

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-a for a in self.coefficients))

    def __mul__(self, scalar):
        if isinstance(scalar, DivisorClass):
            raise TypeError("use pair() for the intersection product")
        scalar = Fraction(scalar)
        return DivisorClass(self.lattice,
                            tuple(a * scalar for a in self.coefficients))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = Fraction(scalar)
        return DivisorClass(self.lattice,
                            tuple(a / scalar for a in self.coefficients))

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return (self.lattice is other.lattice
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((id(self.lattice), self.coefficients))

    def pair(self, other: "DivisorClass") -> Fraction:
        return pair(self, other)

    def square(self) -> Fraction:
        return pair(self, self)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __str__(self):
        parts = []
        for name, coef in zip(self.lattice.names, self.coefficients):
            if coef == 0:
                continue
            mag = abs(coef)
            body = name if mag == 1 else f"{mag}*{name}"
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"DivisorClass({self})"


def pair(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    """Intersection number through the declared gram matrix."""
    d1._check(d2)
    gram = d1.lattice.gram
    total = Fraction(0)
    for i, a in enumerate(d1.coefficients):
        if a:
            row = gram[i]
            for j, b in enumerate(d2.coefficients):
                if b:
                    total += a * b * row[j]
    return total


def class_equal(d1: DivisorClass, d2: DivisorClass) -> bool:
    """Coefficientwise equality in a common lattice."""
    d1._check(d2)
    return d1.coefficients == d2.coefficients


def adjunction_genus(d: DivisorClass) -> Fraction:
    """Arithmetic genus 1 + (d^2 + d.K)/2; needs a canonical class."""
    canonical = d.lattice.canonical
    if canonical is None:
        raise MissingCanonicalClass("lattice has no canonical class")
    return 1 + Fraction(pair(d, d) + pair(d, canonical), 2)


@dataclass(frozen=True)
class SurfaceInvariants:
    """Numerical invariants of a surface, tied together by Noether's identity."""

    chi: int
    k_squared: int
    euler: int
    pg: int = 0
    q: int = 0


def noether_check(inv: SurfaceInvariants) -> bool:
    """12*chi = K^2 + e and chi = 1 - q + pg, both exactly."""
    return (12 * inv.chi == inv.k_squared + inv.euler
            and inv.chi == 1 - inv.q + inv.pg)


def euler_bookkeeping(kind: str, **args) -> int:
    """Topological Euler numbers under blow-ups and double covers."""
    if kind == "blowup":
        return args["base"] + args["points"]
    if kind == "double_cover":
        return 2 * args["base"] - args["branch"]
    raise ValueError(f"unknown bookkeeping kind {kind!r}")


# -- blow-up bases ------------------------------------------------------------


def blowup_basis(forest) -> DeclaredLattice:
    """Lattice of a plane blown up at points, each with at most one
    infinitely-near child.

    ``forest`` is a list of ``(name, child_name_or_None)``.  The basis is the
    line class ``h`` followed by one total-transform class ``e_<name>`` per
    point; the gram matrix is diag(1, -1, ..., -1) and the canonical class is
    -3h + sum of all exceptionals.  For every point the proper-transform
    class is published under the point's own name (parent minus child for a
    point carrying a child), and the child class under the child's name.
    """
    names = ["h"]
    pairs = []
    for name, child in forest:
        names.append(f"e_{name}")
        if child is not None:
            names.append(f"e_{child}")
        pairs.append((name, child))
    size = len(names)
    gram = [[Fraction(0)] * size for _ in range(size)]
    gram[0][0] = Fraction(1)
    for i in range(1, size):
        gram[i][i] = Fraction(-1)
    lattice = DeclaredLattice(names, gram)
    canonical = lattice.basis("h") * -3
    for name in names[1:]:
        canonical = canonical + lattice.basis(name)
    named = {}
    for name, child in pairs:
        if child is None:
            named[name] = lattice.basis(f"e_{name}")
        else:
            named[name] = lattice.basis(f"e_{name}") - lattice.basis(f"e_{child}")
            named[child] = lattice.basis(f"e_{child}")
    return DeclaredLattice(lattice.names, lattice.gram, canonical, named)


# -- double covers and contractions --------------------------------------------


@dataclass(frozen=True)
class PullbackResult:
    lattice: DeclaredLattice
    branch: DivisorClass
    _source: DeclaredLattice

    def pull(self, d: DivisorClass) -> DivisorClass:
        if d.lattice is not self._source:
            raise LatticeMismatch("class does not live in the covered lattice")
        return DivisorClass(self.lattice, d.coefficients)

    def reduced_preimage(self, component: DivisorClass) -> DivisorClass:
        """Halved pullback of a branch component (its reduced preimage)."""
        if component.lattice is not self._source:
            raise LatticeMismatch("component does not live in the covered lattice")
        if pair(component, component).numerator % 2 != 0:
            raise OddComponentSquare(
                f"component square {pair(component, component)} is odd")
        return DivisorClass(self.lattice,
                            tuple(c / 2 for c in component.coefficients))


def double_cover_pullback(lattice: DeclaredLattice,
                          branch: DivisorClass) -> PullbackResult:
    """Lattice of a double cover branched along ``branch``.

    Pullback doubles every pairing; the canonical class upstairs is the
    pullback of K + branch/2.  Divisibility of the branch class by 2 in the
    class group is the caller's responsibility and is recorded, not checked.
    """
    if branch.lattice is not lattice:
        raise LatticeMismatch("branch class lives elsewhere")
    if pair(branch, branch).numerator % 2 != 0:
        raise OddComponentSquare("branch self-intersection must be even")
    names = tuple(f"p({n})" for n in lattice.names)
    gram = tuple(tuple(2 * v for v in row) for row in lattice.gram)
    canonical = None
    if lattice.canonical is not None:
        # Pullback keeps coefficient vectors, so K + branch/2 downstairs is
        # literally the canonical vector upstairs.
        canonical = lattice.canonical + branch * Fraction(1, 2)
    upstairs = DeclaredLattice(names, gram, canonical)
    return PullbackResult(upstairs, DivisorClass(upstairs, branch.coefficients),
                          lattice)


@dataclass(frozen=True)
class BlowdownResult:
    lattice: DeclaredLattice
    contracted: DivisorClass

    def push(self, d: DivisorClass) -> DivisorClass:
        """Orthogonal projection away from the contracted (-1)-class."""
        e = DivisorClass(self.lattice, self.contracted.coefficients)
        moved = d if d.lattice is self.lattice else DivisorClass(self.lattice,
                                                                 d.coefficients)
        return moved + e * pair(moved, e)


def blow_down(lattice: DeclaredLattice, e: DivisorClass) -> BlowdownResult:
    """Contract a (-1)-class: e^2 = -1 and e.K = -1 are verified exactly.

    The ambient basis is kept; tracked classes must be mapped through
    ``push``, which lands them in the orthogonal complement of ``e``.  The
    new canonical class is push(K) = K - e, so K^2 grows by exactly one.
    """
    if lattice.canonical is None:
        raise MissingCanonicalClass("blow-down needs a canonical class")
    if e.lattice is not lattice:
        raise LatticeMismatch("class does not live in this lattice")
    if pair(e, e) != -1:
        raise NotMinusOneClass(f"e^2 = {pair(e, e)}, expected -1")
    if pair(e, lattice.canonical) != -1:
        raise NotMinusOneClass(f"e.K = {pair(e, lattice.canonical)}, expected -1")
    new_canonical = lattice.canonical - e
    contracted = DeclaredLattice(lattice.names, lattice.gram, new_canonical,
                                 lattice.named)
    return BlowdownResult(contracted, DivisorClass(contracted, e.coefficients))


# -- exact solving ---------------------------------------------------------------


@dataclass(frozen=True)
class SolveOutcome:
    coefficients: tuple[Fraction, ...]
    rank: int
    nullity: int
    combination: DivisorClass


def solve_class(generators, constraints) -> SolveOutcome:
    """Solve X = sum x_i G_i from pairing constraints (W_j, X.W_j).

    Raises :class:`InconsistentSystem` (with rank data) when no exact
    solution exists; for underdetermined consistent systems the free
    coordinates are zero and the nullity is reported.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("no generators")
    lattice = generators[0].lattice
    for g in generators:
        if g.lattice is not lattice:
            raise LatticeMismatch("generators live in different lattices")
    rows = []
    targets = []
    for probe, target in constraints:
        if probe.lattice is not lattice:
            raise LatticeMismatch("probe lives in a different lattice")
        rows.append([pair(g, probe) for g in generators])
        targets.append(Fraction(target))
    result = solve(rows, targets, Fraction(0), Fraction(1))
    combo = lattice.zero()
    for coef, gen in zip(result.solution, generators):
        combo = combo + gen * coef
    return SolveOutcome(tuple(result.solution), result.rank, result.nullity,
                        combo)


# -- text DSL ---------------------------------------------------------------------


def parse_lattice(text: str) -> DeclaredLattice:
    """Parse a lattice declaration.

    Line-oriented: ``basis N1 N2 ...`` declares the basis, ``pair A B = q``
    sets a symmetric pairing entry (unset entries are zero), ``class N =
    expr`` names a combination, and ``canonical N`` marks the canonical
    class.  ``#`` starts a comment.
    """
    names: list[str] = []
    entries: dict[tuple[str, str], Fraction] = {}
    class_lines: list[tuple[str, str]] = []
    canonical_name = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "basis":
            names.extend(rest.split())
        elif head == "pair":
            lhs, _, value = rest.partition("=")
            parts = lhs.split()
            if len(parts) != 2:
                raise ValueError(f"malformed pair line: {raw!r}")
            entries[(parts[0], parts[1])] = Fraction(value.strip())
        elif head == "class":
            name, _, expr = rest.partition("=")
            class_lines.append((name.strip(), expr.strip()))
        elif head == "canonical":
            canonical_name = rest.strip()
        else:
            raise ValueError(f"unknown declaration {head!r}")
    if not names:
        raise ValueError("lattice declaration has no basis")
    index = {n: i for i, n in enumerate(names)}
    size = len(names)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for (a, b), value in entries.items():
        if a not in index or b not in index:
            raise ValueError(f"pairing of undeclared classes {a!r}, {b!r}")
        gram[index[a]][index[b]] = value
        gram[index[b]][index[a]] = value
    named: dict[str, DivisorClass] = {}
    for name, expr in class_lines:
        working = DeclaredLattice(names, gram, None, named)
        named[name] = evaluate_expression(working, expr)
    canonical = None
    if canonical_name:
        working = DeclaredLattice(names, gram, None, named)
        canonical = working.resolve(canonical_name)
    return DeclaredLattice(names, gram, canonical, named)


def evaluate_expression(lattice: DeclaredLattice, text: str):
    """Evaluate a class expression; '.' computes the intersection pairing.

    Returns a :class:`DivisorClass`, or a Fraction for pairings and pure
    rational arithmetic.
    """

    def lookup(name):
        return lattice.resolve(name)

    def pairing(a, b):
        if not isinstance(a, DivisorClass) or not isinstance(b, DivisorClass):
            raise grammar.GrammarError("'.' needs two divisor classes")
        return pair(a, b)

    return grammar.evaluate(text, number=Fraction, lookup=lookup,
                            pairing=pairing)
