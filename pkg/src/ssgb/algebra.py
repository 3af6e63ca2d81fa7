"""Prime-field coefficients, exponent-vector monomials and sparse polynomials.

Monomials are plain tuples of non-negative exponents, one entry per ring
variable; variable 0 is the greatest.  ``None`` stands for the zero monomial
adjoined to the monoid: it absorbs under multiplication and sits strictly
below every genuine monomial.

Coefficients are ints in ``[0, p)``.  The modulus lives on the :class:`Ring`
(the run-level context), never on individual coefficients.
"""

from __future__ import annotations

from operator import add, sub
from typing import Iterable, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]
Monomial0 = Optional[Monomial]
Term = Tuple[Monomial, int]

DEFAULT_MODULUS = 32003
ORDERS = ("grevlex", "lex")

# fixed-width exponent storage; anything larger is an overflow
MAX_EXPONENT = 2**31 - 1


class ContractError(ValueError):
    """An operation was called with arguments violating its precondition."""


def is_prime(n: int) -> bool:
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


class PrimeField:
    """Arithmetic in Z/p on canonical residues."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_MODULUS):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def element(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(a, -1, self.p)


# ---------- monomials ----------


def _check_overflow(m: Monomial) -> Monomial:
    if m and max(m) > MAX_EXPONENT:
        raise OverflowError(f"exponent overflow in {m}")
    return m


def mono_mul(a: Monomial0, b: Monomial0) -> Monomial0:
    if a is None or b is None:
        return None
    if len(a) != len(b):
        raise ContractError("monomials over different variable counts")
    return _check_overflow(tuple(map(add, a, b)))


def mono_divides(a: Monomial0, b: Monomial0) -> bool:
    """``a | b`` in the monoid extended by zero.

    Everything divides zero (take the cofactor zero); zero divides only zero.
    """
    if b is None:
        return True
    if a is None:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(b: Monomial0, a: Monomial0) -> Monomial0:
    """Quotient ``b / a``; requires ``a | b``."""
    if not mono_divides(a, b):
        raise ContractError(f"{a} does not divide {b}")
    if b is None:
        return None
    return tuple(map(sub, b, a))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    if a is None or b is None:
        raise ContractError("lcm of the zero monomial")
    return tuple(map(max, a, b))


def degree(m: Monomial) -> int:
    return sum(m)


def grevlex_key(m: Monomial) -> tuple:
    # higher degree wins; then the smaller exponent on the last variable wins
    return (sum(m),) + tuple(-e for e in reversed(m))


def lex_key(m: Monomial) -> tuple:
    return m


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, m):
        k = self[m] = self.fn(m)
        return k


class Ring:
    """Immutable context: modulus, variable count/names and monomial order."""

    def __init__(
        self,
        modulus: int = DEFAULT_MODULUS,
        nvars: int = 1,
        order: str = "grevlex",
        names: Optional[Sequence[str]] = None,
    ):
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        if names is None:
            names = [f"x{i + 1}" for i in range(nvars)]
        if len(names) != nvars:
            raise ValueError("need one name per variable")
        if len(set(names)) != nvars:
            raise ValueError("variable names must be unique")
        self.field = PrimeField(modulus)
        self.modulus = modulus
        self.nvars = nvars
        self.order = order
        self.names = tuple(names)
        self.one_monomial: Monomial = (0,) * nvars
        # sort key of a monomial; plain tuple comparison of keys is the order
        self.key = _KeyCache(grevlex_key if order == "grevlex" else lex_key).__getitem__

    def __repr__(self):
        return f"Ring({self.modulus}, {self.order}, {' '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, Ring) and (
            self.modulus,
            self.order,
            self.names,
        ) == (other.modulus, other.order, other.names)

    def __hash__(self):
        return hash((self.modulus, self.order, self.names))

    # --- monomial order ---

    def compare(self, a: Monomial0, b: Monomial0) -> int:
        """Three-way comparison in the order extended by zero (-1, 0, 1)."""
        if a is None or b is None:
            return (a is not None) - (b is not None)
        if len(a) != self.nvars or len(b) != self.nvars:
            raise ContractError("monomial has the wrong number of variables")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def less(self, a: Monomial0, b: Monomial0) -> bool:
        if b is None:
            return False
        if a is None:
            return True
        return self.key(a) < self.key(b)

    def key0(self, m: Monomial0) -> tuple:
        """Sort key valid for the zero monomial too."""
        return (0,) if m is None else (1, self.key(m))

    # --- polynomial constructors ---

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    @property
    def one(self) -> Polynomial:
        return Polynomial(self, ((self.one_monomial, 1),))

    def constant(self, c: int) -> Polynomial:
        c %= self.modulus
        return Polynomial(self, ((self.one_monomial, c),) if c else ())

    def var(self, i: int) -> Polynomial:
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, ((tuple(m), 1),))

    def monomial(self, m: Monomial, c: int = 1) -> Polynomial:
        return self.poly({tuple(m): c})

    def poly(self, terms: Mapping[Monomial, int] | Iterable[Term]) -> Polynomial:
        """Build a polynomial from loose terms, merging duplicates."""
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict = {}
        p = self.modulus
        for m, c in terms:
            m = tuple(m)
            if len(m) != self.nvars:
                raise ContractError("monomial has the wrong number of variables")
            if min(m, default=0) < 0:
                raise ContractError("negative exponent")
            _check_overflow(m)
            acc[m] = (acc.get(m, 0) + c) % p
        key = self.key
        items = sorted(
            ((m, c) for m, c in acc.items() if c), key=lambda t: key(t[0]), reverse=True
        )
        return Polynomial(self, tuple(items))


class Polynomial:
    """Sparse polynomial; ``terms`` strictly decreasing in the ring order.

    Instances are immutable.  The constructor trusts its input; use
    :meth:`Ring.poly` for unsorted data.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: tuple):
        self.ring = ring
        self.terms = terms

    # --- inspection ---

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and self.ring == other.ring

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        from .frontend import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def hm(self) -> Monomial0:
        return self.terms[0][0] if self.terms else None

    @property
    def hc(self) -> int:
        return self.terms[0][1] if self.terms else 0

    def leading(self) -> tuple[Monomial0, int]:
        return (self.hm, self.hc)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def total_degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def check_invariants(self) -> None:
        """Representation check: canonical nonzero coefficients, strictly decreasing."""
        key = self.ring.key
        p = self.ring.modulus
        for m, c in self.terms:
            if not 0 < c < p:
                raise AssertionError(f"non-canonical coefficient {c}")
            if len(m) != self.ring.nvars:
                raise AssertionError("wrong monomial length")
        for (a, _), (b, _) in zip(self.terms, self.terms[1:]):
            if not key(a) > key(b):
                raise AssertionError("terms not strictly decreasing")

    # --- arithmetic ---

    def scale(self, c: int) -> Polynomial:
        p = self.ring.modulus
        c %= p
        if c == 0:
            return Polynomial(self.ring, ())
        if c == 1:
            return self
        return Polynomial(self.ring, tuple((m, a * c % p) for m, a in self.terms))

    def monic(self) -> Polynomial:
        if not self.terms or self.terms[0][1] == 1:
            return self
        return self.scale(self.ring.field.inv(self.terms[0][1]))

    def mul_monomial(self, t: Monomial, c: int = 1) -> Polynomial:
        """``c * t * self``; multiplication by a monomial preserves term order."""
        p = self.ring.modulus
        c %= p
        if c == 0 or not self.terms:
            return Polynomial(self.ring, ())
        if any(t):
            terms = tuple((tuple(map(add, t, m)), a * c % p) for m, a in self.terms)
        elif c == 1:
            return self
        else:
            terms = tuple((m, a * c % p) for m, a in self.terms)
        return Polynomial(self.ring, terms)

    def add_scaled(self, K: int, t: Monomial, q: Polynomial) -> Polynomial:
        """``self + K * t * q`` by a linear merge of the two sorted term lists."""
        ring = self.ring
        p = ring.modulus
        K %= p
        if K == 0 or not q.terms:
            return self
        if any(t):
            shifted = [(tuple(map(add, t, m)), a * K % p) for m, a in q.terms]
        else:
            shifted = [(m, a * K % p) for m, a in q.terms]
        a_terms = self.terms
        if not a_terms:
            return Polynomial(ring, tuple(shifted))
        key = ring.key
        out = []
        append = out.append
        i = j = 0
        na, nb = len(a_terms), len(shifted)
        ma, ca = a_terms[0]
        mb, cb = shifted[0]
        ka, kb = key(ma), key(mb)
        while True:
            if ka > kb:
                append((ma, ca))
                i += 1
                if i == na:
                    break
                ma, ca = a_terms[i]
                ka = key(ma)
            elif kb > ka:
                append((mb, cb))
                j += 1
                if j == nb:
                    break
                mb, cb = shifted[j]
                kb = key(mb)
            else:
                s = (ca + cb) % p
                if s:
                    append((ma, s))
                i += 1
                j += 1
                if i == na or j == nb:
                    break
                ma, ca = a_terms[i]
                mb, cb = shifted[j]
                ka, kb = key(ma), key(mb)
        if i < na:
            out.extend(a_terms[i:])
        if j < nb:
            out.extend(shifted[j:])
        return Polynomial(ring, tuple(out))

    def __add__(self, other: Polynomial) -> Polynomial:
        return self.add_scaled(1, self.ring.one_monomial, other)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self.add_scaled(-1, self.ring.one_monomial, other)

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = Polynomial(self.ring, ())
        for m, c in other.terms:
            out = out.add_scaled(c, m, self)
        return out

    __rmul__ = __mul__


def poly_add_scaled(p: Polynomial, K: int, t: Monomial, q: Polynomial) -> Polynomial:
    return p.add_scaled(K, t, q)


def _reductor_order(G: Sequence[Polynomial]) -> list[Polynomial]:
    ring = G[0].ring
    indexed = sorted(range(len(G)), key=lambda i: (ring.key(G[i].hm), i))
    return [G[i] for i in indexed]


def poly_normal_form(p: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Full reduction of ``p`` modulo ``G``.

    The reductor for a term is the first element of ``G`` whose head divides
    it, scanning by ascending head monomial and then by position in ``G``.
    """
    if not G or not p.terms:
        return p
    if any(not g.terms for g in G):
        raise ContractError("normal form modulo a zero polynomial")
    ring = p.ring
    inv = ring.field.inv
    modulus = ring.modulus
    reductors = [(g.hm, inv(g.hc), g) for g in _reductor_order(G)]
    remainder: list[Term] = []
    while p.terms:
        m, c = p.terms[0]
        for hm, hc_inv, g in reductors:
            for x, y in zip(hm, m):
                if x > y:
                    break
            else:
                p = p.add_scaled(-c * hc_inv % modulus, tuple(map(sub, m, hm)), g)
                break
        else:
            remainder.append((m, c))
            p = Polynomial(ring, p.terms[1:])
    return Polynomial(ring, tuple(remainder))
