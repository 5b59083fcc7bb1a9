"""Truncated group rings (Z/M)[A] for finite abelian A.

The profinite statements this package shadows live in completed group
rings; every claim here is phrased at a finite truncation, and the
limit-flavored ones are phrased through the transition maps between
truncation levels (a literal non-zero-divisor claim at a single level
would be false).
"""

import itertools
import math
import re
from dataclasses import dataclass, field

from .exactalg import IntMatrix, kernel_mod_m


@dataclass(frozen=True)
class AbelianShape:
    """A = Z/N_1 + ... + Z/N_s given by its moduli tuple."""

    moduli: tuple

    def __post_init__(self):
        mods = tuple(int(n) for n in self.moduli)
        if not mods or any(n < 1 for n in mods):
            raise ValueError("moduli must be a nonempty tuple of integers >= 1")
        object.__setattr__(self, "moduli", mods)

    def order(self) -> int:
        return math.prod(self.moduli)

    def reduce(self, key):
        if len(key) != len(self.moduli):
            raise ValueError("key length does not match shape")
        return tuple(int(k) % n for k, n in zip(key, self.moduli))

    def elements(self):
        return itertools.product(*(range(n) for n in self.moduli))


@dataclass(frozen=True, eq=False)
class GroupRingElem:
    shape: AbelianShape
    M: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("coefficient modulus must be >= 2")
        norm = {}
        for key, c in self.coeffs.items():
            key = self.shape.reduce(key)
            c = (norm.get(key, 0) + int(c)) % self.M
            if c:
                norm[key] = c
            else:
                norm.pop(key, None)
        object.__setattr__(self, "coeffs", norm)

    @classmethod
    def zero(cls, shape, M):
        return cls(shape, M, {})

    @classmethod
    def monomial(cls, shape, M, key, coeff=1):
        if isinstance(key, int):
            key = (key,) + (0,) * (len(shape.moduli) - 1)
        return cls(shape, M, {tuple(key): coeff})

    @classmethod
    def one(cls, shape, M):
        return cls.monomial(shape, M, (0,) * len(shape.moduli))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _compat(self, other):
        if self.shape != other.shape or self.M != other.M:
            raise ValueError("shape or modulus mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElem)
            and self.shape == other.shape
            and self.M == other.M
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return GroupRingElem(self.shape, self.M, out)

    def __neg__(self):
        return GroupRingElem(self.shape, self.M, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return grmul(self, other)

    def scale(self, c: int):
        return GroupRingElem(self.shape, self.M, {k: v * c for k, v in self.coeffs.items()})


def grmul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    """Convolution product."""
    a._compat(b)
    out = {}
    for k1, c1 in a.coeffs.items():
        for k2, c2 in b.coeffs.items():
            key = a.shape.reduce(tuple(x + y for x, y in zip(k1, k2)))
            out[key] = out.get(key, 0) + c1 * c2
    return GroupRingElem(a.shape, a.M, out)


def augment(a: GroupRingElem) -> int:
    return sum(a.coeffs.values()) % a.M


def annihilator_basis(shape: AbelianShape, M: int, a: GroupRingElem):
    """Z/M-module generators of {y : a*y = 0}, via the kernel of the
    multiplication-by-a matrix over the group basis."""
    if a.shape != shape or a.M != M:
        raise ValueError("element does not live in the requested ring")
    basis = list(shape.elements())
    index = {g: i for i, g in enumerate(basis)}
    rows = [[0] * len(basis) for _ in basis]
    for g in basis:
        col = index[g]
        for k, c in a.coeffs.items():
            h = shape.reduce(tuple(x + y for x, y in zip(k, g)))
            rows[index[h]][col] += c
    gens = kernel_mod_m(IntMatrix(rows), M)
    out = []
    for vec in gens:
        elem = GroupRingElem(shape, M, {basis[i]: v for i, v in enumerate(vec)})
        if not elem.is_zero():
            out.append(elem)
    return out


def project(a: GroupRingElem, new_moduli) -> GroupRingElem:
    """Coordinatewise coset-sum projection onto a quotient shape; each new
    modulus must divide the one it replaces."""
    new_moduli = tuple(int(n) for n in new_moduli)
    if len(new_moduli) != len(a.shape.moduli):
        raise ValueError("projection must keep the number of coordinates")
    for old, new in zip(a.shape.moduli, new_moduli):
        if new < 1 or old % new != 0:
            raise ValueError("%d does not divide the shape order %d" % (new, old))
    shape = AbelianShape(new_moduli)
    out = {}
    for key, c in a.coeffs.items():
        k = shape.reduce(key)
        out[k] = out.get(k, 0) + c
    return GroupRingElem(shape, a.M, out)


def transition(a: GroupRingElem, m_prime: int) -> GroupRingElem:
    """Project (Z/M)[Z/(k*m')] onto (Z/M)[Z/m'] by summing over cosets."""
    if len(a.shape.moduli) != 1:
        raise ValueError("transition requires a cyclic shape")
    return project(a, (m_prime,))


def _admissible_part(n: int, excluded_prime) -> int:
    # the part of n supported on the allowed primes; None allows them all
    if excluded_prime is None:
        return n
    while n % excluded_prime == 0:
        n //= excluded_prime
    return n


def limit_regularity_check(n: int, M: int, m_prime: int, k: int, excluded_prime=None) -> bool:
    """Transition-compatibility shadow of regularity of x^n - 1.

    True iff the transition map from level k*m' to level m' sends every
    annihilator generator of x^n - 1 into k*(Z/M)[Z/m'].  The admissible
    part of n (all of n when excluded_prime is None) must divide m'.
    """
    if n < 1 or M < 2 or m_prime < 1 or k < 1:
        raise ValueError("truncation parameters must be positive (M >= 2)")
    if m_prime % _admissible_part(n, excluded_prime) != 0:
        raise ValueError(
            "admissible part of n=%d does not divide m'=%d" % (n, m_prime)
        )
    shape = AbelianShape((k * m_prime,))
    a = GroupRingElem.monomial(shape, M, n) - GroupRingElem.one(shape, M)
    divisor = math.gcd(k, M)
    for gen in annihilator_basis(shape, M, a):
        image = transition(gen, m_prime)
        if any(c % divisor != 0 for c in image.coeffs.values()):
            return False
    return True


def gamma_splitting(n: int, p: int) -> int:
    """The element of Z/n that is 0 on the p-part and 1 away from it.

    Needs p | n and n not a power of p, so the result is a genuine
    splitting idempotent exponent: nonzero, yet x^gamma - 1 kills the
    norm of the subgroup it generates.
    """
    if n % p != 0:
        raise ValueError("p must divide the shape order")
    q = 1
    while n % (q * p) == 0:
        q *= p
    m = n // q
    if m == 1:
        raise ValueError("order is a pure p-power; no splitting")
    # CRT: gamma = 0 mod q, 1 mod m
    inv = pow(q, -1, m)
    return (q * inv) % n


_TERM_RE = re.compile(r"([+-]?)\s*(\d+)?\s*(?:\*\s*)?([a-z](?:\^\d+)?(?:\s*\*?\s*[a-z](?:\^\d+)?)*)?\s*")

_VARS = "xyzabcdefghijklmnopqrstuvw"


def parse_elem(shape: AbelianShape, M: int, text: str) -> GroupRingElem:
    """Parse CLI polynomial syntax over the shape: terms like `x^3-1`,
    `2*x*y^2+3`, with variables x, y, z, a, ... naming the coordinates."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty group-ring element")
    out = GroupRingElem.zero(shape, M)
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError("bad group-ring element near %r" % s[pos:])
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) is not None else 1
        key = [0] * len(shape.moduli)
        if m.group(3):
            for piece in re.findall(r"([a-z])(?:\^(\d+))?", m.group(3)):
                idx = _VARS.index(piece[0])
                if idx >= len(shape.moduli):
                    raise ValueError("variable %r exceeds shape rank" % piece[0])
                key[idx] += int(piece[1]) if piece[1] else 1
        out = out + GroupRingElem.monomial(shape, M, tuple(key), sign * coeff)
        pos = m.end()
    return out


def elem_text(a: GroupRingElem) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for key in sorted(a.coeffs):
        c = a.coeffs[key]
        mono = "*".join(
            _VARS[i] + ("^%d" % e if e > 1 else "")
            for i, e in enumerate(key)
            if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append("%d*%s" % (c, mono))
    return " + ".join(parts)
