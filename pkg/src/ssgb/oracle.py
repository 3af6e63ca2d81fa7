"""Classical Buchberger machinery used to cross-check the signature engine.

Only :mod:`ssgb.algebra` is shared with the engine; nothing here touches
signatures except :func:`certify_labeled`, which reads a labeled polynomial
as plain data.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from operator import sub
from typing import Optional, Sequence

from .algebra import (
    ContractError,
    Monomial,
    Polynomial,
    mono_divides,
    mono_lcm,
    poly_normal_form,
)
from .stats import RunStats


@dataclass(frozen=True, order=True)
class CriticalPair:
    sugar: int
    lcm_key: tuple
    i: int
    j: int
    lcm: Monomial


def s_polynomial(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p.terms or not q.terms:
        raise ContractError("S-polynomial of a zero polynomial")
    ring = p.ring
    inv = ring.field.inv
    lcm = mono_lcm(p.hm, q.hm)
    left = p.mul_monomial(tuple(map(sub, lcm, p.hm)), inv(p.hc))
    return left.add_scaled(-inv(q.hc), tuple(map(sub, lcm, q.hm)), q)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _tail_reduce(g: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    head = Polynomial(g.ring, g.terms[:1])
    return head + poly_normal_form(Polynomial(g.ring, g.terms[1:]), G)


def buchberger(F: Sequence[Polynomial], stats: Optional[RunStats] = None) -> list[Polynomial]:
    """A Groebner basis of ``F``.

    Pairs are processed by (sugar, lcm, index) and only the coprime-head
    criterion is applied.  The working basis is kept interreduced: an element
    whose head becomes divisible by a newcomer's head is taken out and
    queued for re-reduction, and surviving tails are reduced by the newcomer.
    Without this, lex runs swell to thousands of terms.
    """
    stats = stats if stats is not None else RunStats()
    basis: dict[int, Polynomial] = {}
    sugar: dict[int, int] = {}
    pairs: list[CriticalPair] = []
    todo: list[tuple[Polynomial, int]] = []
    next_id = 0

    def add(p: Polynomial, s: int) -> None:
        nonlocal next_id
        p = p.monic()
        for k in list(basis):
            if mono_divides(p.hm, basis[k].hm):
                todo.append((basis.pop(k), sugar.pop(k)))
        for k in basis:
            basis[k] = _tail_reduce(basis[k], [p])
        j = next_id
        next_id += 1
        key = p.ring.key
        for i, g in basis.items():
            stats.pairs_generated += 1
            if _coprime(g.hm, p.hm):
                stats.pairs_pruned += 1
                continue
            lcm = mono_lcm(g.hm, p.hm)
            d = sum(lcm)
            s_ij = max(sugar[i] + d - sum(g.hm), s + d - sum(p.hm))
            heapq.heappush(pairs, CriticalPair(s_ij, key(lcm), i, j, lcm))
        basis[j] = p
        sugar[j] = s

    def reduce_and_add(q: Polynomial, s: int) -> None:
        stats.reduction_steps += 1
        r = poly_normal_form(q, list(basis.values()))
        if r.terms:
            add(r, max(s, r.total_degree()))
        else:
            stats.zero_reductions += 1
        while todo:
            q, s = todo.pop()
            r = poly_normal_form(q, list(basis.values()))
            if r.terms:
                add(r, max(s, r.total_degree()))

    for f in F:
        if f.terms:
            reduce_and_add(f, f.total_degree())
    while pairs:
        cp = heapq.heappop(pairs)
        if cp.i not in basis or cp.j not in basis:
            continue
        stats.iterations += 1
        reduce_and_add(s_polynomial(basis[cp.i], basis[cp.j]), cp.sugar)
    G = list(basis.values())
    stats.basis_size_raw = len(G)
    return G


def is_groebner_basis(G: Sequence[Polynomial]) -> bool:
    G = list(G)
    if any(not g.terms for g in G):
        raise ContractError("basis contains a zero polynomial")
    for j in range(len(G)):
        for i in range(j):
            if _coprime(G[i].hm, G[j].hm):
                continue
            if poly_normal_form(s_polynomial(G[i], G[j]), G).terms:
                return False
    return True


def ideal_membership(p: Polynomial, G: Sequence[Polynomial]) -> bool:
    return not poly_normal_form(p, [g for g in G if g.terms]).terms


def certify_labeled(h, f: Polynomial, G0: Sequence[Polynomial]) -> bool:
    """Check that ``h.cofactor`` witnesses ``h`` as a labeled polynomial.

    ``HM(u) == SIG(h)`` and ``u*f - poly(h)`` reduces to zero modulo ``G0``.
    """
    u = h.cofactor
    if u is None:
        raise ContractError("labeled polynomial carries no cofactor")
    if u.hm != h.sig:
        return False
    return ideal_membership(u * f - h.poly, G0)
