"""
Exact arithmetic in the finite field GF(q), q = p^k.

Elements are polynomials over Z_p of degree < k, reduced modulo a monic
irreducible polynomial of degree k. The modulus chosen by field_make is the
smallest irreducible one when candidates are ordered by the integer
c_0 + c_1 p + ... + c_{k-1} p^{k-1}, so every run (and every other
implementation following the same rule) lands on the same representation.

Elements are enumerated by the same encoding: the element at position i has
the base-p digits of i as its coefficients, little-endian. This gives the
canonical labeling used by the constructions.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from scarpis.errors import FieldError

logger = logging.getLogger(__name__)

DEFAULT_MAX_FIELD_ORDER = 1 << 20

_DESCRIPTOR_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n is small here)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(f: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of f modulo the monic polynomial g, coefficients little-endian."""
    r = [c % p for c in f]
    dg = len(g) - 1
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if c:
            shift = top - dg
            for i, gi in enumerate(g):
                r[shift + i] = (r[shift + i] - c * gi) % p
    return r[:dg]


def is_irreducible(coeffs: tuple[int, ...] | list[int], p: int) -> bool:
    """Test whether x^k + c_{k-1}x^{k-1} + ... + c_0 is irreducible over Z_p.

    Degree 1 is always irreducible. Degrees 2 and 3 are irreducible exactly
    when they have no root in Z_p. Higher degrees use trial division by every
    monic polynomial of degree at most k/2.

    Args:
        coeffs: The k non-leading coefficients (c_0, ..., c_{k-1}).
        p: The prime characteristic.

    Returns:
        True if the polynomial has no nontrivial factorization.
    """
    k = len(coeffs)
    if k == 1:
        return True
    f = list(coeffs) + [1]
    if k <= 3:
        for x in range(p):
            value = 0
            for c in reversed(f):
                value = (value * x + c) % p
            if value == 0:
                return False
        return True
    for degree in range(1, k // 2 + 1):
        for low in product(range(p), repeat=degree):
            g = list(low) + [1]
            if not any(_poly_mod(f, g, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^k) as Z_p[x] modulo a monic irreducible polynomial.

    Attributes:
        p: Prime characteristic.
        k: Extension degree (>= 1).
        modulus: Non-leading coefficients (c_0, ..., c_{k-1}) of the modulus.
    """

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"Characteristic must be prime, got {self.p!r}")
        if self.k < 1:
            raise FieldError(f"Extension degree must be >= 1, got {self.k!r}")
        if len(self.modulus) != self.k:
            raise FieldError(
                f"Modulus needs {self.k} coefficients, got {len(self.modulus)}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise FieldError(f"Modulus coefficients must lie in [0, {self.p})")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(
                f"Modulus {format_polynomial(self)} is reducible over Z_{self.p}"
            )

    @property
    def q(self) -> int:
        """Order of the field."""
        return self.p**self.k

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def element(self, index: int) -> FieldElement:
        """Return the element whose coefficients are the base-p digits of index."""
        if not 0 <= index < self.q:
            raise FieldError(f"Element index {index} out of range for GF({self.q})")
        digits = []
        for _ in range(self.k):
            index, d = divmod(index, self.p)
            digits.append(d)
        return FieldElement(self, tuple(digits))

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k): k residues, coefficient i multiplying x^i."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.spec.k:
            raise FieldError(
                f"Element of {self.spec} needs {self.spec.k} coefficients, "
                f"got {len(self.coeffs)}"
            )
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise FieldError(f"Coefficients must lie in [0, {self.spec.p})")

    @property
    def index(self) -> int:
        """Position of this element in enumerate_field(spec)."""
        value = 0
        for c in reversed(self.coeffs):
            value = value * self.spec.p + c
        return value

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: FieldElement) -> FieldElement:
        return add(self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return sub(self, other)

    def __neg__(self) -> FieldElement:
        return neg(self)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return mul(self, other)

    def __str__(self) -> str:
        terms = [
            _term(c, i) for i, c in reversed(list(enumerate(self.coeffs))) if c
        ]
        return " + ".join(terms) if terms else "0"


def _term(c: int, i: int) -> str:
    if i == 0:
        return str(c)
    power = "x" if i == 1 else f"x^{i}"
    return power if c == 1 else f"{c}{power}"


def format_polynomial(spec: FieldSpec) -> str:
    """Render the modulus, e.g. 'x^3 + 2x + 1'."""
    terms = [_term(1, spec.k)]
    terms += [_term(c, i) for i, c in reversed(list(enumerate(spec.modulus))) if c]
    return " + ".join(terms)


def field_make(
    p: int, k: int, *, max_order: int = DEFAULT_MAX_FIELD_ORDER
) -> FieldSpec:
    """Build GF(p^k) with the smallest monic irreducible modulus.

    Args:
        p: Prime characteristic.
        k: Extension degree.
        max_order: Largest accepted field order.

    Returns:
        The field specification.

    Raises:
        FieldError: If p is not prime, k < 1, or p^k exceeds max_order.
    """
    if not is_prime(p):
        raise FieldError(f"Characteristic must be prime, got {p!r}")
    if k < 1:
        raise FieldError(f"Extension degree must be >= 1, got {k!r}")
    if p**k > max_order:
        raise FieldError(f"Field order {p}^{k} exceeds the bound {max_order}")

    for code in range(p**k):
        coeffs = []
        for _ in range(k):
            code, d = divmod(code, p)
            coeffs.append(d)
        if is_irreducible(coeffs, p):
            spec = FieldSpec(p, k, tuple(coeffs))
            logger.debug("Built %s with modulus %s", spec, format_polynomial(spec))
            return spec
    # Irreducible polynomials exist in every degree.
    raise AssertionError(f"no irreducible polynomial of degree {k} over Z_{p}")


def parse_field_descriptor(text: str) -> tuple[int, int]:
    """Parse the 'p' | 'p^k' grammar into (p, k)."""
    match = _DESCRIPTOR_RE.match(text)
    if match is None:
        raise FieldError(f"Field descriptor must look like 'p' or 'p^k', got {text!r}")
    p = int(match.group(1))
    k = int(match.group(2)) if match.group(2) is not None else 1
    return p, k


def field_from_descriptor(
    text: str, *, max_order: int = DEFAULT_MAX_FIELD_ORDER
) -> FieldSpec:
    """Build the field named by a 'p' or 'p^k' descriptor."""
    p, k = parse_field_descriptor(text)
    return field_make(p, k, max_order=max_order)


def _check_same(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.spec != b.spec:
        raise FieldError(f"Mismatched field contexts: {a.spec} and {b.spec}")
    return a.spec


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = _check_same(a, b)
    return FieldElement(
        spec, tuple((x + y) % spec.p for x, y in zip(a.coeffs, b.coeffs))
    )


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = _check_same(a, b)
    return FieldElement(
        spec, tuple((x - y) % spec.p for x, y in zip(a.coeffs, b.coeffs))
    )


def neg(a: FieldElement) -> FieldElement:
    p = a.spec.p
    return FieldElement(a.spec, tuple((-c) % p for c in a.coeffs))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Polynomial product reduced modulo the field modulus."""
    spec = _check_same(a, b)
    p, k = spec.p, spec.k
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] += x * y
    # x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1})
    for top in range(2 * k - 2, k - 1, -1):
        c = prod[top] % p
        if c:
            shift = top - k
            for i, m in enumerate(spec.modulus):
                prod[shift + i] -= c * m
    return FieldElement(spec, tuple(c % p for c in prod[:k]))


def power(a: FieldElement, exponent: int) -> FieldElement:
    """Square-and-multiply exponentiation, exponent >= 0."""
    if exponent < 0:
        raise FieldError(f"Exponent must be non-negative, got {exponent}")
    result = a.spec.one
    base = a
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        base = mul(base, base)
        exponent >>= 1
    return result


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via a^(q-2).

    Raises:
        FieldError: If a is zero.
    """
    if a.is_zero():
        raise FieldError(f"Zero has no inverse in {a.spec}")
    return power(a, a.spec.q - 2)


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All q elements; position i holds the base-p digits of i."""
    return [spec.element(i) for i in range(spec.q)]


def quadratic_character(a: FieldElement) -> int:
    """Quadratic character by Euler's criterion: a^((q-1)/2) in {0, 1, -1}.

    In characteristic 2 every element is a square, so nonzero elements map
    to 1.
    """
    spec = a.spec
    if a.is_zero():
        return 0
    if spec.p == 2:
        return 1
    r = power(a, (spec.q - 1) // 2)
    if r == spec.one:
        return 1
    if r == neg(spec.one):
        return -1
    raise AssertionError(f"Euler criterion gave {r} for {a} in {spec}")


@lru_cache(maxsize=64)
def square_set(spec: FieldSpec) -> frozenset[int]:
    """Indices of the nonzero squares of the field."""
    squares = set()
    for b in enumerate_field(spec)[1:]:
        squares.add(mul(b, b).index)
    return frozenset(squares)


@lru_cache(maxsize=64)
def quadratic_character_table(spec: FieldSpec) -> tuple[int, ...]:
    """Quadratic character of every element, indexed by element index.

    Computed from the square set, independently of quadratic_character.
    """
    squares = square_set(spec)
    return tuple(
        0 if i == 0 else (1 if i in squares else -1) for i in range(spec.q)
    )
