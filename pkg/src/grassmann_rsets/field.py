"""Table-driven arithmetic in small finite fields GF(p^e).

Elements are plain integers in ``range(q)``.  The integer ``v`` stands for
the polynomial residue whose coefficients are the base-``p`` digits of ``v``
(least significant digit = constant term), so for prime fields the encoding
is just the residue itself.  All arithmetic is a table lookup; tables are
built once per field and the field objects are cached, so ``make_field(3)``
always returns the same instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_ORDER = 49
MAX_DEGREE = 3

# Monic moduli, constant term first.  Conway polynomials where one exists.
MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
    49: (3, 6, 1),
}


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Irreducibility for degree <= 3: no root in GF(p) suffices."""
    e = len(modulus) - 1
    if modulus[-1] != 1 or e < 1:
        return False
    if e == 1:
        return True
    if e > 3:
        # Exhaustive search for a monic factor of degree <= e // 2.
        for d in range(1, e // 2 + 1):
            for idx in range(p**d):
                f = [(idx // p**i) % p for i in range(d)] + [1]
                if _poly_divides(f, list(modulus), p):
                    return False
        return True
    return all(_poly_eval(modulus, x, p) != 0 for x in range(p))


def _poly_divides(f, g, p):
    g = list(g)
    while len(g) >= len(f):
        c = g[-1]
        if c:
            shift = len(g) - len(f)
            for i, fc in enumerate(f):
                g[shift + i] = (g[shift + i] - c * fc) % p
        g.pop()
    return not any(g)


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    q = p**e
    if q in MODULI and len(MODULI[q]) == e + 1:
        return MODULI[q]
    for idx in range(p**e):
        cand = tuple((idx // p**i) % p for i in range(e)) + (1,)
        if cand[0] != 0 and _is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldSpec:
    """The finite field GF(p^e) with precomputed operation tables.

    Attributes
    ----------
    p, e, q : int
        Characteristic, extension degree and order ``q = p**e``.
    modulus : tuple of int
        Monic irreducible polynomial defining the extension, constant term
        first.  For prime fields this is ``(0, 1)`` and is not used.
    add, sub, mul : list of list of int
        ``q x q`` operation tables.
    neg, inv : list of int
        Unary tables; ``inv[0]`` is ``None``.
    frob : list of list of int
        ``frob[j][x] == x ** (p ** j)`` for ``0 <= j < e``.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        q = self.q
        digits = [self._digits(v) for v in range(q)]
        self.add = [[self._encode([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        self.neg = [self._encode([(-a) % p for a in digits[x]]) for x in range(q)]
        self.sub = [[self.add[x][self.neg[y]] for y in range(q)] for x in range(q)]
        self.mul = [[self._poly_mul(digits[x], digits[y]) for y in range(q)] for x in range(q)]
        self.inv: list = [None] * q
        for x in range(1, q):
            for y in range(1, q):
                if self.mul[x][y] == 1:
                    self.inv[x] = y
                    break
        self.frob = [list(range(q))]
        for _ in range(1, e):
            prev = self.frob[-1]
            self.frob.append([self._pow_raw(prev[x], p) for x in range(q)])
        self.elements = tuple(range(q))
        self.units = tuple(range(1, q))
        self.primitive = self._find_primitive()

    def _digits(self, v):
        return [(v // self.p**i) % self.p for i in range(self.e)]

    def _encode(self, digits):
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _poly_mul(self, a, b):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        m = self.modulus
        for deg in range(len(prod) - 1, e - 1, -1):
            c = prod[deg]
            if c:
                for i in range(e + 1):
                    prod[deg - e + i] = (prod[deg - e + i] - c * m[i]) % p
        return self._encode(prod[:e])

    def _pow_raw(self, x, k):
        r = 1
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def _find_primitive(self):
        for g in range(1, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul[x][g]
                order += 1
            if order == self.q - 1:
                return g
        raise FieldError("no primitive element")  # unreachable for a field

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            if x == 0:
                raise ZeroDivisionError("zero has no inverse")
            x, k = self.inv[x], -k
        r, base = 1, x
        while k:
            if k & 1:
                r = self.mul[r][base]
            base = self.mul[base][base]
            k >>= 1
        return r

    def frobenius(self, x: int, j: int) -> int:
        return self.frob[j % self.e][x]

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    @property
    def odd(self) -> bool:
        return self.p != 2

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __reduce__(self):
        return (make_field, (self.p, self.e))

    def __repr__(self):
        return f"GF({self.q})" if self.e == 1 else f"GF({self.p}^{self.e})"


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldSpec:
    """Build (or fetch the cached) field GF(p^e).

    Raises :class:`FieldError` for a non-prime characteristic, ``e`` outside
    ``1..MAX_DEGREE`` or an order above ``MAX_ORDER``.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise FieldError(f"extension degree {e} outside 1..{MAX_DEGREE}")
    if p**e > MAX_ORDER:
        raise FieldError(f"field order {p**e} exceeds cap {MAX_ORDER}")
    modulus = (0, 1) if e == 1 else _find_modulus(p, e)
    if e > 1 and not _is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return FieldSpec(p, e, modulus)


def field_from_json(doc: dict) -> FieldSpec:
    F = make_field(int(doc["p"]), int(doc.get("e", 1)))
    if "modulus" in doc and F.e > 1 and tuple(doc["modulus"]) != F.modulus:
        raise FieldError(f"unsupported modulus {doc['modulus']} for GF({F.q})")
    return F


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its field, for operator-style arithmetic."""

    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"value {self.value} outside GF({self.field.q})")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add[self.value][self._other(other)])

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub[self.value][self._other(other)])

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul[self.value][self._other(other)])

    def __truediv__(self, other):
        return self * other.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field.neg[self.value])

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(self.field, self.field.inv[self.value])

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def field_arith(op: str, *operands: FieldElement) -> FieldElement:
    """Apply ``op`` in {add, mul, neg, inv, pow} to field elements.

    ``pow`` takes an element and an int exponent.
    """
    if op == "add":
        a, b = operands
        return a + b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "neg":
        (a,) = operands
        return -a
    if op == "inv":
        (a,) = operands
        return a.inverse()
    if op == "pow":
        a, k = operands
        return a ** int(k)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(x: FieldElement, j: int) -> FieldElement:
    """``x ** (p ** j)``; the identity when ``e`` divides ``j``."""
    return FieldElement(x.field, x.field.frobenius(x.value, j))
