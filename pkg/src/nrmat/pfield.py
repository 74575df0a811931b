"""Exact arithmetic for the near-regular partial field U1 and small finite fields.

U1 is the ring Z[a, 1/a, 1/(1-a)] together with the unit group <-1, a, 1-a>.
Nonzero members of the partial field are signed monomials +-a^i (1-a)^j
(`NRElem`); arbitrary ring elements (`RingElem`) show up as determinants.

A `RingElem` is stored as a monomial prefactor a^i (1-a)^j times an integer
"core" polynomial divisible by neither a nor 1-a.  Membership in the partial
field is then just ``core == (+-1,)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

__all__ = [
    "NRElem", "RingElem", "GF", "FieldElem", "NRAutomorphism", "NRHom",
    "ZERO", "ONE", "ALPHA", "gf", "FIELD_IDS",
    "nr_mul", "nr_add", "ring_reduce", "p_membership", "is_fundamental",
    "enumerate_fundamentals", "FUNDAMENTALS", "apply_automorphism",
    "list_automorphisms", "apply_hom", "phi_gf3",
]


# ---------------------------------------------------------------------------
# integer polynomials in a, coefficient tuples low -> high

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, q):
    n = max(len(p), len(q))
    return _trim((p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0)
                 for k in range(n))


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        if ca:
            for b, cb in enumerate(q):
                out[a + b] += ca * cb
    return _trim(out)


def _times_one_minus_alpha(p, k):
    for _ in range(k):
        p = _padd(p, (0,) + _pneg(p))
    return p


def _pdiv_exact(p, q):
    """Quotient p/q in Z[a]; raises ArithmeticError if q does not divide p."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = [Fraction(c) for c in p]
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    for k in range(len(out) - 1, -1, -1):
        c = p[k + len(q) - 1] / q[-1]
        out[k] = c
        if c:
            for t, cq in enumerate(q):
                p[k + t] -= c * cq
    if any(p) or any(c.denominator != 1 for c in out):
        raise ArithmeticError("inexact polynomial division")
    return _trim(int(c) for c in out)


def _factor_out(p):
    """Return (i, j, core) with p = a^i (1-a)^j core and core(0), core(1) != 0."""
    p = _trim(p)
    if not p:
        return 0, 0, ()
    i = 0
    while p[i] == 0:
        i += 1
    p = p[i:]
    j = 0
    while sum(p) == 0:
        # p = (1-a) q  =>  q_k = p_k + q_{k-1}
        q, acc = [], 0
        for c in p[:-1]:
            acc += c
            q.append(acc)
        p = _trim(q)
        j += 1
    return i, j, p


# ---------------------------------------------------------------------------
# ring elements

@dataclass(frozen=True, slots=True)
class RingElem:
    """a^i (1-a)^j * core, with core an integer polynomial (low -> high).

    Construct through `RingElem.from_poly` or `ring_reduce`; the raw
    constructor trusts its arguments to be reduced.
    """
    i: int
    j: int
    core: tuple

    @staticmethod
    def from_poly(coeffs, den_i: int = 0, den_j: int = 0) -> RingElem:
        """numerator(a) / (a^den_i (1-a)^den_j), reduced."""
        i, j, core = _factor_out(tuple(int(c) for c in coeffs))
        if not core:
            return RING_ZERO
        return RingElem(i - den_i, j - den_j, core)

    @staticmethod
    def integer(n: int) -> RingElem:
        return RingElem.from_poly((n,))

    def is_zero(self) -> bool:
        return not self.core

    def __bool__(self):
        return bool(self.core)

    def numerator(self):
        """(numerator polynomial, den_i, den_j) with nonnegative denominators."""
        if not self.core:
            return (), 0, 0
        num = (0,) * max(self.i, 0) + self.core
        num = _times_one_minus_alpha(num, max(self.j, 0))
        return num, max(-self.i, 0), max(-self.j, 0)

    def __mul__(self, other):
        other = _as_ring(other)
        if not self.core or not other.core:
            return RING_ZERO
        return RingElem(self.i + other.i, self.j + other.j, _pmul(self.core, other.core))

    __rmul__ = __mul__

    def __add__(self, other):
        other = _as_ring(other)
        if not self.core:
            return other
        if not other.core:
            return self
        i, j = min(self.i, other.i), min(self.j, other.j)
        p = _times_one_minus_alpha((0,) * (self.i - i) + self.core, self.j - j)
        q = _times_one_minus_alpha((0,) * (other.i - i) + other.core, other.j - j)
        di, dj, core = _factor_out(_padd(p, q))
        if not core:
            return RING_ZERO
        return RingElem(i + di, j + dj, core)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.i, self.j, _pneg(self.core)) if self.core else self

    def __sub__(self, other):
        return self + (-_as_ring(other))

    def __rsub__(self, other):
        return _as_ring(other) + (-self)

    def exact_div(self, other) -> RingElem:
        """Quotient in the ring; ArithmeticError if it does not lie in the ring."""
        other = _as_ring(other)
        if not other.core:
            raise ZeroDivisionError("division by zero ring element")
        if not self.core:
            return RING_ZERO
        core = _pdiv_exact(self.core, other.core)
        return RingElem(self.i - other.i, self.j - other.j, core)

    def __truediv__(self, other):
        return self.exact_div(other)

    def inverse(self) -> RingElem:
        if self.core not in ((1,), (-1,)):
            raise ArithmeticError(f"{self} is not a unit of the ring")
        return RingElem(-self.i, -self.j, self.core)

    def to_nr(self) -> NRElem | None:
        return p_membership(self)

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Value at a = x (x not in {0, 1})."""
        x = Fraction(x)
        v = sum(c * x ** k for k, c in enumerate(self.core))
        return v * x ** self.i * (1 - x) ** self.j

    def __repr__(self):
        if not self.core:
            return "RingElem(0)"
        return f"RingElem(a^{self.i}(1-a)^{self.j}*{list(self.core)})"


RING_ZERO = RingElem(0, 0, ())
RING_ONE = RingElem(0, 0, (1,))


def _as_ring(x) -> RingElem:
    if isinstance(x, RingElem):
        return x
    if isinstance(x, NRElem):
        return x.to_ring()
    if isinstance(x, int):
        return RingElem.integer(x)
    raise TypeError(f"cannot coerce {x!r} to RingElem")


def ring_reduce(e: RingElem) -> RingElem:
    """Canonical form of a ring element (idempotent)."""
    if not e.core:
        return RING_ZERO
    di, dj, core = _factor_out(e.core)
    if not core:
        return RING_ZERO
    return RingElem(e.i + di, e.j + dj, core)


# ---------------------------------------------------------------------------
# partial-field elements

@dataclass(frozen=True, slots=True, order=True)
class NRElem:
    """Zero (sign 0) or sign * a^i (1-a)^j with sign in {+1, -1}."""
    sign: int
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if self.sign == 0 and (self.i or self.j):
            raise ValueError("zero carries no exponents")

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __bool__(self):
        return self.sign != 0

    def __mul__(self, other):
        return nr_mul(self, other)

    def __neg__(self):
        return NRElem(-self.sign, self.i, self.j)

    def inverse(self) -> NRElem:
        if not self.sign:
            raise ZeroDivisionError("zero has no inverse")
        return NRElem(self.sign, -self.i, -self.j)

    def __truediv__(self, other):
        return nr_mul(self, other.inverse())

    def __pow__(self, k: int):
        if not self.sign:
            if k <= 0:
                raise ZeroDivisionError("0 ** nonpositive")
            return ZERO
        return NRElem(self.sign ** (k % 2) if k % 2 else 1, self.i * k, self.j * k)

    def to_ring(self) -> RingElem:
        if not self.sign:
            return RING_ZERO
        return RingElem(self.i, self.j, (self.sign,))

    def token(self) -> str:
        if not self.sign:
            return "0"
        return f"{'+' if self.sign > 0 else '-'}:{self.i}:{self.j}"

    @staticmethod
    def parse(tok: str) -> NRElem:
        if tok == "0":
            return ZERO
        parts = tok.split(":")
        if len(parts) != 3 or parts[0] not in ("+", "-"):
            raise ValueError(f"bad near-regular token {tok!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise ValueError(f"bad near-regular token {tok!r}") from None
        return NRElem(1 if parts[0] == "+" else -1, i, j)

    def __repr__(self):
        return f"NRElem({self.token()})"


ZERO = NRElem(0)
ONE = NRElem(1, 0, 0)
ALPHA = NRElem(1, 1, 0)


def nr_mul(p: NRElem, q: NRElem) -> NRElem:
    if not p.sign or not q.sign:
        return ZERO
    return NRElem(p.sign * q.sign, p.i + q.i, p.j + q.j)


def p_membership(e: RingElem) -> NRElem | None:
    """The partial-field element equal to e, or None when e lies outside it."""
    e = ring_reduce(e)
    if not e.core:
        return ZERO
    if e.core == (1,):
        return NRElem(1, e.i, e.j)
    if e.core == (-1,):
        return NRElem(-1, e.i, e.j)
    return None


def nr_add(p: NRElem, q: NRElem) -> NRElem | None:
    """p + q if the sum is defined in U1, else None."""
    return p_membership(p.to_ring() + q.to_ring())


def is_fundamental(p: NRElem) -> bool:
    return p_membership(RING_ONE - p.to_ring()) is not None


def enumerate_fundamentals(bound: int) -> frozenset:
    if bound < 1:
        raise ValueError("bound must be positive")
    found = {ZERO} if is_fundamental(ZERO) else set()
    for s, i, j in product((1, -1), range(-bound, bound + 1), range(-bound, bound + 1)):
        p = NRElem(s, i, j)
        if is_fundamental(p):
            found.add(p)
    return frozenset(found)


# 0, 1, a, 1-a, 1/(1-a), a/(a-1), (a-1)/a, 1/a
FUNDAMENTALS = (
    ZERO, ONE, ALPHA, NRElem(1, 0, 1), NRElem(1, 0, -1),
    NRElem(-1, 1, -1), NRElem(-1, -1, 1), NRElem(1, -1, 0),
)


# ---------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True, slots=True)
class NRAutomorphism:
    """The automorphism of U1 determined by where it sends a."""
    image_of_alpha: NRElem

    def __post_init__(self):
        a = self.image_of_alpha
        if a in (ZERO, ONE) or a not in FUNDAMENTALS:
            raise ValueError(f"{a} is not a fundamental element other than 0, 1")

    def __call__(self, p):
        if isinstance(p, RingElem):
            q = p_membership(p)
            if q is None:
                raise ValueError("automorphisms act on partial-field elements only")
            return apply_automorphism(self, q).to_ring()
        return apply_automorphism(self, p)

    def compose(self, other: NRAutomorphism) -> NRAutomorphism:
        """self o other."""
        return NRAutomorphism(apply_automorphism(self, other.image_of_alpha))

    def inverse(self) -> NRAutomorphism:
        for g in list_automorphisms():
            if self.compose(g).is_identity():
                return g
        raise AssertionError("automorphism group is not closed")

    def is_identity(self) -> bool:
        return self.image_of_alpha == ALPHA


def _one_minus(p: NRElem) -> NRElem:
    q = p_membership(RING_ONE - p.to_ring())
    assert q is not None
    return q


def apply_automorphism(psi: NRAutomorphism, p: NRElem) -> NRElem:
    """Substitute psi(a) for a in +-a^i (1-a)^j."""
    if not p.sign:
        return ZERO
    a = psi.image_of_alpha
    return NRElem(p.sign) * a ** p.i * _one_minus(a) ** p.j


@lru_cache(maxsize=None)
def list_automorphisms() -> tuple:
    return tuple(NRAutomorphism(x) for x in FUNDAMENTALS[2:])


# ---------------------------------------------------------------------------
# finite fields

FIELD_IDS = ("gf2", "gf3", "gf4", "gf5", "gf7", "gf8")


class GF:
    """GF(q) for q in {2,3,4,5,7,8} with explicit lookup tables.

    Prime fields use residues 0..p-1.  GF(4) and GF(8) use bit codes of
    polynomials in x modulo x^2+x+1 and x^3+x+1 respectively.
    """

    _MODULI = {4: 0b111, 8: 0b1011}

    def __init__(self, q: int):
        if q not in (2, 3, 4, 5, 7, 8):
            raise ValueError(f"unsupported field size {q}")
        self.q = q
        self.name = f"gf{q}"
        self.prime = q in (2, 3, 5, 7)
        self.char = q if self.prime else 2
        r = range(q)
        if self.prime:
            self.add = [[(a + b) % q for b in r] for a in r]
            self.mul = [[(a * b) % q for b in r] for a in r]
        else:
            self.add = [[a ^ b for b in r] for a in r]
            self.mul = [[self._clmul(a, b) for b in r] for a in r]
        self.neg = [next(b for b in r if self.add[a][b] == 0) for a in r]
        self.sub = [[self.add[a][self.neg[b]] for b in r] for a in r]
        self.inv = [0] + [next(b for b in r if self.mul[a][b] == 1) for a in r[1:]]
        self.nonzero = tuple(r[1:])
        # generator powers, used for GF(8) tokens
        self.generator = next(g for g in self.nonzero if self._order(g) == q - 1)
        self.power = [1]
        for _ in range(q - 2):
            self.power.append(self.mul[self.power[-1]][self.generator])
        self.log = {v: k for k, v in enumerate(self.power)}

    def _clmul(self, a, b):
        mod, deg = self._MODULI[self.q], self.q.bit_length() - 1
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> deg & 1:
                a ^= mod
        return out

    def _order(self, g):
        x, k = g, 1
        while x != 1:
            x = self.mul[x][g]
            k += 1
        return k

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        if self.prime:
            return FieldElem(self, int(value) % self.q)
        if not 0 <= value < self.q:
            raise ValueError(f"code {value} out of range for {self.name}")
        return FieldElem(self, value)

    def from_int(self, n: int) -> FieldElem:
        """Image of the integer n under Z -> GF(q)."""
        return FieldElem(self, (n % self.q) if self.prime else (n % 2))

    def elements(self):
        return [FieldElem(self, v) for v in range(self.q)]

    def det(self, rows) -> int:
        """Determinant of a square matrix of codes (list of lists)."""
        m = [list(r) for r in rows]
        n = len(m)
        add, mul, sub, inv = self.add, self.mul, self.sub, self.inv
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = self.neg[d]
            pc = m[c][c]
            d = mul[d][pc]
            ip = inv[pc]
            for r in range(c + 1, n):
                f = m[r][c]
                if f:
                    f = mul[f][ip]
                    mr, mc = m[r], m[c]
                    for k in range(c, n):
                        if mc[k]:
                            mr[k] = sub[mr[k]][mul[f][mc[k]]]
        return d

    def token(self, v: int) -> str:
        if self.prime or v == 0:
            return str(v)
        if self.q == 4:
            return ("0", "1", "w", "w2")[v]
        return f"g{self.log[v]}"

    def parse(self, tok: str) -> FieldElem:
        if self.prime:
            if not tok.isdigit() or int(tok) >= self.q:
                raise ValueError(f"bad {self.name} token {tok!r}")
            return FieldElem(self, int(tok))
        if self.q == 4:
            table = {"0": 0, "1": 1, "w": 2, "w2": 3}
            if tok not in table:
                raise ValueError(f"bad gf4 token {tok!r}")
            return FieldElem(self, table[tok])
        if tok == "0":
            return FieldElem(self, 0)
        if tok.startswith("g") and tok[1:].isdigit() and int(tok[1:]) < 7:
            return FieldElem(self, self.power[int(tok[1:])])
        raise ValueError(f"bad gf8 token {tok!r}")

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (gf, (self.name,))


@lru_cache(maxsize=None)
def gf(name) -> GF:
    """Shared field instance by id ('gf3') or size (3)."""
    q = int(name[2:]) if isinstance(name, str) else int(name)
    return GF(q)


@dataclass(frozen=True, slots=True)
class FieldElem:
    field: GF
    value: int

    def __bool__(self):
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def _other(self, o):
        if isinstance(o, FieldElem):
            if o.field is not self.field:
                raise ValueError("mixed fields")
            return o.value
        return self.field(o).value

    def __add__(self, o):
        return FieldElem(self.field, self.field.add[self.value][self._other(o)])

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElem(self.field, self.field.sub[self.value][self._other(o)])

    def __rsub__(self, o):
        return FieldElem(self.field, self.field.sub[self._other(o)][self.value])

    def __mul__(self, o):
        return FieldElem(self.field, self.field.mul[self.value][self._other(o)])

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg[self.value])

    def inverse(self) -> FieldElem:
        if not self.value:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(self.field, self.field.inv[self.value])

    def __truediv__(self, o):
        return self * FieldElem(self.field, self._other(o)).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElem(self.field, 1)
        for _ in range(k):
            out = out * self
        return out

    def token(self) -> str:
        return self.field.token(self.value)

    def __repr__(self):
        return f"{self.field.name}:{self.token()}"


# ---------------------------------------------------------------------------
# homomorphisms into finite fields

@dataclass(frozen=True)
class NRHom:
    """The partial-field homomorphism U1 -> GF(q) sending a to `image_of_alpha`."""
    image_of_alpha: FieldElem

    def __post_init__(self):
        x = self.image_of_alpha
        if x.value == 0 or x.value == 1:
            raise ValueError("a must map outside {0, 1}")

    @property
    def field(self) -> GF:
        return self.image_of_alpha.field

    def __call__(self, p) -> FieldElem:
        if isinstance(p, RingElem):
            q = p_membership(p)
            if q is None:
                return self._ring(p)
            p = q
        return apply_hom(self, p)

    def _ring(self, e: RingElem) -> FieldElem:
        # any ring element maps, since a and 1-a map to units
        x = self.image_of_alpha
        F = self.field
        core = sum((x ** k * F.from_int(c) for k, c in enumerate(e.core)), F(0))
        return core * x ** e.i * (1 - x) ** e.j


def apply_hom(h: NRHom, p: NRElem) -> FieldElem:
    F = h.field
    if not p.sign:
        return F(0)
    x = h.image_of_alpha
    return F.from_int(p.sign) * x ** p.i * (1 - x) ** p.j


def phi_gf3() -> NRHom:
    """The unique homomorphism U1 -> GF(3) (a -> -1)."""
    F = gf("gf3")
    return NRHom(F(2))
