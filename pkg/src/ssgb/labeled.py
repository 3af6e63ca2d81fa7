"""Labeled polynomials ``(signature, polynomial)`` and signature-safe reduction.

A labeled polynomial pairs ``p`` with the head monomial ``sigma`` of some
cofactor ``u`` such that ``u*f == p`` modulo the previous ideal.  The
signature is a plain monomial (or ``None`` for zero) because a single new
generator ``f`` is adjoined per run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from operator import add, sub
from typing import Optional, Sequence

from .algebra import ContractError, Monomial, Monomial0, Polynomial, Ring, mono_mul


class HOrdering(enum.Enum):
    FIRST_BELOW = "below"  # h1 <_H h2
    FIRST_ABOVE = "above"  # h1 >_H h2
    TIED = "tied"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class LabeledPolynomial:
    sig: Monomial0
    poly: Polynomial
    cofactor: Optional[Polynomial] = None

    def __post_init__(self):
        if self.sig is None and not self.poly.terms:
            raise ContractError("(0, 0) is not a labeled polynomial")

    @property
    def hm(self) -> Monomial0:
        return self.poly.hm

    @property
    def hc(self) -> int:
        return self.poly.hc

    @property
    def ring(self) -> Ring:
        return self.poly.ring


def labeled_mul(t: Monomial, h: LabeledPolynomial) -> LabeledPolynomial:
    if t is None:
        raise ContractError("multiplier must be a nonzero monomial")
    u = h.cofactor.mul_monomial(t) if h.cofactor is not None else None
    return LabeledPolynomial(mono_mul(t, h.sig), h.poly.mul_monomial(t), u)


def _cross_products(h1: LabeledPolynomial, h2: LabeledPolynomial):
    return mono_mul(h1.hm, h2.sig), mono_mul(h2.hm, h1.sig)


def h_compare(h1: LabeledPolynomial, h2: LabeledPolynomial) -> HOrdering:
    """Compare ``HM(p1)*sig2`` against ``HM(p2)*sig1``."""
    a, b = _cross_products(h1, h2)
    if a is None and b is None:
        return HOrdering.INCOMPARABLE
    c = h1.ring.compare(a, b)
    if c < 0:
        return HOrdering.FIRST_BELOW
    if c > 0:
        return HOrdering.FIRST_ABOVE
    return HOrdering.TIED


def h_less(h1: LabeledPolynomial, h2: LabeledPolynomial) -> bool:
    """``h1 <_H h2``."""
    a, b = _cross_products(h1, h2)
    return h1.ring.less(a, b)


def sig_safe_reduce_step(
    h1: LabeledPolynomial, h2: LabeledPolynomial, t: Monomial
) -> LabeledPolynomial:
    """Cancel the head of ``h1`` with ``t*h2``, whose signature must be smaller."""
    ring = h1.ring
    if h1.hm is None or h1.hm != mono_mul(t, h2.hm):
        raise ContractError("heads do not match for a reduction step")
    if not ring.less(mono_mul(t, h2.sig), h1.sig):
        raise ContractError("reductor signature is not strictly smaller")
    K = -h1.hc * ring.field.inv(h2.hc) % ring.modulus
    p = h1.poly.add_scaled(K, t, h2.poly)
    u = None
    if h1.cofactor is not None:
        if h2.cofactor is None:
            raise ContractError("reductor lacks a cofactor in certified mode")
        u = h1.cofactor.add_scaled(K, t, h2.cofactor)
    return LabeledPolynomial(h1.sig, p, u)


def find_reductor(h: LabeledPolynomial, R: Sequence[LabeledPolynomial]):
    """The ``>_H``-maximal ``r`` in ``R`` with ``r >_H h`` and ``HM(r) | HM(h)``.

    Returns ``(r, t)`` with ``t = HM(h)/HM(r)``, or ``None``.  Among such
    reductors ``>_H`` ranks by the signature of ``t*r`` (smaller is greater);
    ties go to the smaller head, then to the earlier position in ``R``.
    """
    m = h.hm
    if m is None:
        return None
    ring = h.ring
    key0 = ring.key0
    sigma_key = key0(h.sig)
    best = None
    best_rank = None
    for idx, r in enumerate(R):
        hm = r.poly.terms[0][0] if r.poly.terms else None
        if hm is None:
            continue
        for x, y in zip(hm, m):
            if x > y:
                break
        else:
            t = tuple(map(sub, m, hm))
            s = None if r.sig is None else tuple(map(add, t, r.sig))
            sk = key0(s)
            # r >_H h  <=>  SIG(t*r) < SIG(h)  when HM(t*r) = HM(h)
            if sk < sigma_key:
                rank = (sk, ring.key(hm), idx)
                if best_rank is None or rank < best_rank:
                    best, best_rank = (r, t), rank
    return best


def reduce_labeled(h: LabeledPolynomial, R: Sequence[LabeledPolynomial]):
    """Signature-safe head reduction of ``h`` by ``R`` until no reductor is left.

    Returns the reduced labeled polynomial and the number of steps taken.
    Stops as soon as the polynomial becomes zero.
    """
    steps = 0
    while h.poly.terms:
        found = find_reductor(h, R)
        if found is None:
            break
        r, t = found
        h = sig_safe_reduce_step(h, r, t)
        steps += 1
    return h, steps


def reduce_checking_signatures(
    sigma: Monomial, p: Polynomial, R: Sequence[LabeledPolynomial]
) -> Polynomial:
    if sigma is None:
        raise ContractError("signature of the reduced element must be nonzero")
    return reduce_labeled(LabeledPolynomial(sigma, p), R)[0].poly
