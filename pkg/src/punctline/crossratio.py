"""Projective-line geometry over the supported exact fields.

Points are homogeneous pairs, cross-ratios are computed with 2x2
brackets (so the point at infinity needs no special casing), and the
decision procedures answer the central question of the reconstruction
pipeline: when do two cross-ratios generate the same arithmetic data?
In characteristic zero the answer is near-rigidity (equality up to one
exceptional unit pair); in characteristic p it is rigidity up to a
power of Frobenius.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import is_prime
from .fieldarith import FieldDesc, frobenius, is_constant
from .multlattice import cyclic_equal, solve_p_power

EQUAL = "equal"
RHO_PAIR = "rho-pair"
HYPOTHESIS_FAILS = "hypothesis-fails"
CASE_A = "case-a"
CASE_B = "case-b"


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^1 in canonical homogeneous coordinates: [a : 1] for
    affine points, [1 : 0] for infinity."""

    a: object
    b: object

    def __post_init__(self):
        a, b = self.a, self.b
        if a.field != b.field:
            raise ValueError("homogeneous coordinates from different fields")
        if b.is_zero():
            if a.is_zero():
                raise ValueError("[0 : 0] is not a projective point")
            a, b = a.field.one(), b
        else:
            a, b = a / b, b.field.one()
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def affine(cls, value):
        return cls(value, value.field.one())

    @classmethod
    def infinity(cls, field: FieldDesc):
        return cls(field.one(), field.zero())

    @property
    def field(self):
        return self.a.field

    def is_infinity(self) -> bool:
        return self.b.is_zero()


def bracket(x: ProjPoint, y: ProjPoint):
    """[x, y] = a_x b_y - a_y b_x; zero exactly when x = y."""
    return x.a * y.b - y.a * x.b


@dataclass(frozen=True)
class CuspSet:
    field: FieldDesc
    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        if len(pts) < 3:
            raise ValueError("a cusp set needs at least 3 points")
        for pt in pts:
            if pt.field != self.field:
                raise ValueError("point outside the cusp set's field")
        if len(set(pts)) != len(pts):
            raise ValueError("cusp points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def size(self) -> int:
        return len(self.points)


def cross_ratio(x1: ProjPoint, x2: ProjPoint, x3: ProjPoint, x4: ProjPoint):
    """[x4,x1][x3,x2] / ([x4,x2][x3,x1]), never in {0, 1, infinity} for
    distinct points."""
    pts = (x1, x2, x3, x4)
    for s, t in itertools.combinations(pts, 2):
        if s == t:
            raise ValueError("cross-ratio needs pairwise-distinct points")
    num = bracket(x4, x1) * bracket(x3, x2)
    den = bracket(x4, x2) * bracket(x3, x1)
    return num / den


@dataclass(frozen=True)
class MobiusMap:
    """x -> (m00 x + m01) / (m10 x + m11), scaled so the first nonzero
    entry is 1."""

    m00: object
    m01: object
    m10: object
    m11: object

    def __post_init__(self):
        entries = (self.m00, self.m01, self.m10, self.m11)
        det = self.m00 * self.m11 - self.m01 * self.m10
        if det.is_zero():
            raise ValueError("Mobius map needs nonzero determinant")
        lead = next(e for e in entries if not e.is_zero())
        scaled = tuple(e / lead for e in entries)
        for name, value in zip(("m00", "m01", "m10", "m11"), scaled):
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls, field: FieldDesc):
        return cls(field.one(), field.zero(), field.zero(), field.one())

    def apply(self, x: ProjPoint) -> ProjPoint:
        return ProjPoint(
            self.m00 * x.a + self.m01 * x.b,
            self.m10 * x.a + self.m11 * x.b,
        )

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        return MobiusMap(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.m11, -self.m01, -self.m10, self.m00)

    def apply_set(self, e: CuspSet) -> CuspSet:
        return CuspSet(e.field, tuple(self.apply(pt) for pt in e.points))


def _collineation(p1, p2, p3):
    # rows kill p1 and p2 respectively, scaled so p3 lands on 1
    k1 = bracket(p3, p2)
    k2 = bracket(p3, p1)
    return (k1 * p1.b, -(k1 * p1.a), k2 * p2.b, -(k2 * p2.a))


def mobius_from_triples(p1, p2, p3, q1, q2, q3) -> MobiusMap:
    """The unique map with p_i -> q_i, via the standard maps of both
    triples onto (0, infinity, 1)."""
    for s, t in itertools.combinations((p1, p2, p3), 2):
        if s == t:
            raise ValueError("degenerate source triple")
    for s, t in itertools.combinations((q1, q2, q3), 2):
        if s == t:
            raise ValueError("degenerate target triple")
    sp = MobiusMap(*_collineation(p1, p2, p3))
    sq = MobiusMap(*_collineation(q1, q2, q3))
    return sq.inverse().compose(sp)


def twist_set(e: CuspSet, n: int) -> CuspSet:
    """Raise every coordinate to the p^n power."""
    if e.field.kind != "FpT":
        raise ValueError("twists live over function fields only")
    if n < 0:
        raise ValueError("twist exponent must be nonnegative")
    return CuspSet(
        e.field,
        tuple(ProjPoint(frobenius(pt.a, n), frobenius(pt.b, n)) for pt in e.points),
    )


def _check_lambda_domain(lam):
    if lam.is_zero() or lam == lam.field.one():
        raise ValueError("lambda must avoid 0 and 1")


def decide_lambda_char0(lam1, lam2) -> str:
    """Decide what two characteristic-zero cross-ratios with identical
    cyclic data can be.

    When both <lam1> = <lam2> and <1-lam1> = <1-lam2> hold, the pair is
    forced: lam1 = lam2, or {lam1, lam2} = {rho, 1/rho} with rho the
    primitive sixth root of unity.  Any third outcome is a defect in
    this toolkit, not a data condition, and raises RuntimeError.
    """
    if lam1.field != lam2.field:
        raise ValueError("field mismatch")
    if lam1.field.char() != 0:
        raise ValueError("characteristic-zero fields only")
    _check_lambda_domain(lam1)
    _check_lambda_domain(lam2)
    one = lam1.field.one()
    if not (cyclic_equal(lam1, lam2) and cyclic_equal(one - lam1, one - lam2)):
        return HYPOTHESIS_FAILS
    if lam1 == lam2:
        return EQUAL
    if lam1.field.kind == "QRho":
        rho = lam1.field.rho()
        if {lam1, lam2} == {rho, rho.inverse()}:
            return RHO_PAIR
    raise RuntimeError(
        "cyclic hypotheses hold but the pair is neither equal nor "
        "{rho, 1/rho}: %r, %r" % (lam1, lam2)
    )


def decide_lambda_charp(lam1, lam2):
    """The unique n with lam2 = lam1^(p^n), or None when the cyclic
    hypotheses on lam and 1 - lam fail.  lam1 must be non-constant."""
    if lam1.field != lam2.field:
        raise ValueError("field mismatch")
    if lam1.field.kind != "FpT":
        raise ValueError("function fields only")
    if lam1.is_zero() or is_constant(lam1):
        raise ValueError("lam1 must be non-constant")
    if lam2.is_zero():
        raise ValueError("lam2 must avoid 0 and 1")
    _check_lambda_domain(lam2)
    p = lam1.field.p
    one = lam1.field.one()
    u = solve_p_power(lam1, lam2, p)
    if u is None:
        return None
    if solve_p_power(one - lam1, one - lam2, p) is None:
        return None
    # both hypotheses hold, so the positive-sign equation must single
    # out the twist exponent at the magnitude u
    if u >= 0:
        if lam2 == frobenius(lam1, u):
            return u
    else:
        if frobenius(lam2, -u) == lam1:
            return u
    raise RuntimeError(
        "cyclic hypotheses hold but no Frobenius exponent matches: "
        "%r, %r" % (lam1, lam2)
    )


def power_product_solve(p: int, x1: int, y1: int, bound: int):
    """All nonzero integer pairs (x2, y2) in the bound-box with
    (p^x1 - 1)(p^y1 - 1) = (p^x2 - 1)(p^y2 - 1) in Q.

    The product determines the pair up to order, so the result is
    {(x1, y1), (y1, x1)} clipped to the box.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    if x1 == 0 or y1 == 0:
        raise ValueError("exponents must be nonzero")
    if bound < 1:
        raise ValueError("bound must be positive")
    target = (Fraction(p) ** x1 - 1) * (Fraction(p) ** y1 - 1)
    out = set()
    for x2 in range(-bound, bound + 1):
        if x2 == 0:
            continue
        for y2 in range(-bound, bound + 1):
            if y2 == 0:
                continue
            if (Fraction(p) ** x2 - 1) * (Fraction(p) ** y2 - 1) == target:
                out.add((x2, y2))
    return out


def _twisted_power_equal(x, y, p, e1, e2):
    # x^(p^e1 - 1) = y^(p^e2 - 1), exponents read in Z[1/p]; raising
    # both sides to p^w makes them integral without changing truth,
    # and x^(p^a - p^b) = frob^a(x) / frob^b(x) keeps degrees linear
    w = max(0, -e1, -e2)
    lhs = frobenius(x, w + e1) / frobenius(x, w)
    rhs = frobenius(y, w + e2) / frobenius(y, w)
    return lhs == rhs


def exponent_case_decide(lam1, lam2, a1, a2, b1, b2, c1, c2) -> str:
    """Decide which exponent pattern explains three twisted-power
    equalities tying lam1 to lam2.

    Checks lam1^(p^a1-1) = lam2^(p^a2-1), the same for lam - 1 with
    (b1, b2), and for lam/(lam - 1) with (c1, c2).  If all three hold,
    the exponents must align columnwise (case A: a1=a2, b1=b2, c1=c2)
    or rowwise (case B: a1=b1=c1 and a2=b2=c2); case A is reported when
    both apply.  A third alignment would be a defect and raises
    RuntimeError.
    """
    if lam1.field != lam2.field:
        raise ValueError("field mismatch")
    if lam1.field.kind != "FpT":
        raise ValueError("function fields only")
    if lam1.is_zero() or is_constant(lam1):
        raise ValueError("lam1 must be non-constant")
    if lam2.is_zero():
        raise ValueError("lam2 must avoid 0 and 1")
    _check_lambda_domain(lam2)
    if not (a1 - a2 == b1 - b2 == c1 - c2):
        raise ValueError("exponent differences must agree")
    p = lam1.field.p
    one = lam1.field.one()
    holds = (
        _twisted_power_equal(lam1, lam2, p, a1, a2)
        and _twisted_power_equal(lam1 - one, lam2 - one, p, b1, b2)
        and _twisted_power_equal(
            lam1 / (lam1 - one), lam2 / (lam2 - one), p, c1, c2
        )
    )
    if not holds:
        return HYPOTHESIS_FAILS
    if a1 == a2 and b1 == b2 and c1 == c2:
        return CASE_A
    if a1 == b1 == c1 and a2 == b2 == c2:
        return CASE_B
    raise RuntimeError(
        "twisted-power equalities hold with misaligned exponents: "
        "(%d,%d) (%d,%d) (%d,%d)" % (a1, a2, b1, b2, c1, c2)
    )


def star_check(e: CuspSet) -> bool:
    """True when no 4-subset has a constant cross-ratio (vacuous for
    size 3)."""
    if e.field.kind != "FpT":
        raise ValueError("the non-isotriviality check lives over function fields")
    for quad in itertools.combinations(e.points, 4):
        if is_constant(cross_ratio(*quad)):
            return False
    return True
