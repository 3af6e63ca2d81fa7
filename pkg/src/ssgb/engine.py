"""The signature-based main loop and the incremental driver around it.

One call of :func:`run_step` adjoins a single generator ``f`` to a Groebner
basis ``G``.  ``R`` grows by exactly one labeled polynomial per iteration;
``B`` holds pending multiples ``t*r`` of elements of ``R`` as (multiplier,
index) pairs and is only expanded on selection.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from operator import add, sub
from typing import Optional, Sequence

from .algebra import (
    ContractError,
    Monomial,
    Polynomial,
    mono_divides,
    mono_lcm,
    mono_mul,
    poly_normal_form,
)
from .labeled import (
    LabeledPolynomial,
    h_less,
    labeled_mul,
    reduce_labeled,
)
from .stats import RunStats

log = logging.getLogger(__name__)

DEFAULT_MAX_ITERATIONS = 10**6


class InvariantViolation(RuntimeError):
    """A runtime invariant check failed; ``label`` names the broken property."""

    def __init__(self, label: str, detail: str = ""):
        super().__init__(f"{label}: {detail}" if detail else label)
        self.label = label


class IterationLimitExceeded(RuntimeError):
    pass


@dataclass
class EngineOptions:
    certify: bool = False
    check_invariants: bool = False
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    sort_by_degree: bool = False
    # equal-signature tie in B: "min_head" or "max_head"
    tie_break: str = "min_head"


@dataclass(frozen=True)
class PendingMultiple:
    multiplier: Monomial
    base: int
    sig: Monomial
    head: Monomial


@dataclass
class EngineState:
    G: list[Polynomial]
    f: Polynomial
    R: list[LabeledPolynomial]
    B: dict
    current: Optional[LabeledPolynomial]
    stats: RunStats
    options: EngineOptions
    signature_trace: list = field(default_factory=list)
    # generators of the two monoideals tracked for termination
    syzygy_gens: list = field(default_factory=list)
    pair_gens: list = field(default_factory=list)

    @property
    def ring(self):
        return self.f.ring

    @property
    def signature_order_violations(self) -> int:
        less = self.ring.less
        tr = self.signature_trace
        return sum(1 for a, b in zip(tr, tr[1:]) if less(b, a))

    def raw_basis(self) -> list[Polynomial]:
        return [r.poly for r in self.R]


def init_state(
    G: Sequence[Polynomial],
    f: Polynomial,
    options: Optional[EngineOptions] = None,
    stats: Optional[RunStats] = None,
) -> EngineState:
    options = options or EngineOptions()
    if not f.terms:
        raise ContractError("f must be nonzero")
    for g in G:
        if g.ring != f.ring:
            raise ContractError("generators live in different rings")
        if g.is_constant():
            raise ContractError("previous basis must not contain constants")
    ring = f.ring
    zero = ring.zero
    certify = options.certify
    R = [LabeledPolynomial(g.hm, zero, g if certify else None) for g in G]
    R += [LabeledPolynomial(None, g, zero if certify else None) for g in G]
    state = EngineState(
        G=list(G),
        f=f,
        R=R,
        B={},
        current=LabeledPolynomial(ring.one_monomial, f, ring.one if certify else None),
        stats=stats if stats is not None else RunStats(),
        options=options,
    )
    state.syzygy_gens = [g.hm for g in G]
    return state


def _pending(state: EngineState, t: Monomial, base: int) -> None:
    if (t, base) in state.B:
        return
    r = state.R[base]
    state.B[(t, base)] = PendingMultiple(t, base, mono_mul(t, r.sig), mono_mul(t, r.hm))
    state.stats.pairs_generated += 1


def generate_pairs(state: EngineState, h: LabeledPolynomial) -> None:
    """Extend B from the freshly inserted ``h`` (the last element of R)."""
    if not h.poly.terms:
        raise ContractError("pairs are generated only for nonzero polynomials")
    R = state.R
    h_idx = len(R) - 1
    if R[h_idx] is not h:
        raise ContractError("h must be the last element inserted into R")
    hm = h.hm
    for idx in range(h_idx):
        r = R[idx]
        if r.hm is not None and h_less(r, h):
            lcm = mono_lcm(r.hm, hm)
            _pending(state, tuple(map(sub, lcm, r.hm)), idx)
        elif h_less(h, r):
            lcm = mono_lcm(r.hm, hm)
            t = tuple(map(sub, lcm, hm))
            if state.options.check_invariants and not any(t):
                raise InvariantViolation(
                    "r-gvw-big", f"unit multiplier: HM of R[{idx}] divides HM(p)"
                )
            _pending(state, t, h_idx)


def _prunes(state: EngineState, r: LabeledPolynomial, b: PendingMultiple) -> bool:
    """``r <_H b`` and ``SIG(r) | SIG(b)``."""
    if r.sig is None or sum(r.sig) > sum(b.sig):
        return False
    if not mono_divides(r.sig, b.sig):
        return False
    # HM(r)*SIG(b) < HM(b)*SIG(r)
    return state.ring.less(mono_mul(r.hm, b.sig), mono_mul(b.head, r.sig))


def prune_B(state: EngineState) -> None:
    R = state.R
    kept = {}
    for k, b in state.B.items():
        if any(_prunes(state, r, b) for r in R):
            state.stats.pairs_pruned += 1
        else:
            kept[k] = b
    state.B = kept


def select_next(state: EngineState) -> Optional[PendingMultiple]:
    """Pop an element of B with minimal signature; None when B is empty."""
    if not state.B:
        return None
    key = state.ring.key
    smallest = min(key(b.sig) for b in state.B.values())
    tied = [b for b in state.B.values() if key(b.sig) == smallest]
    if state.options.tie_break == "max_head":
        chosen = max(tied, key=lambda b: (key(b.head), -b.base))
    else:
        chosen = min(tied, key=lambda b: (key(b.head), b.base))
    del state.B[(chosen.multiplier, chosen.base)]
    return chosen


# ---------- invariant checks ----------


def _check_before_reduce(state: EngineState) -> None:
    h = state.current
    for idx, r in enumerate(state.R):
        if h_less(r, h) and mono_divides(r.sig, h.sig) and r.sig is not None:
            raise InvariantViolation(
                "r-gvw-small", f"R[{idx}] <_H current and its signature divides {h.sig}"
            )


def _check_after_reduce(state: EngineState, h: LabeledPolynomial) -> None:
    sigma, hm = h.sig, h.hm
    if hm is None:
        if any(mono_divides(s, sigma) for s in state.syzygy_gens):
            raise InvariantViolation("monoideal-growth", f"syzygy {sigma} already covered")
    elif any(
        mono_divides(s, sigma) and mono_divides(t, hm) for s, t in state.pair_gens
    ):
        raise InvariantViolation("monoideal-growth", f"pair ({sigma}, {hm}) already covered")
    if hm is not None:
        for idx, r in enumerate(state.R):
            if r.hm is not None and mono_divides(r.hm, hm) and h_less(h, r):
                raise InvariantViolation(
                    "r-gvw-big", f"R[{idx}] >_H (sigma, p) and its head divides HM(p)"
                )
    for idx, r in enumerate(state.R):
        if r.sig is None or not mono_divides(r.sig, sigma):
            continue
        # a zero head only meaningfully divides a zero head
        if (hm is None and r.hm is None) or (
            hm is not None and r.hm is not None and mono_divides(r.hm, hm)
        ):
            raise InvariantViolation(
                "adds-really-new",
                f"R[{idx}] has head dividing {hm} and signature dividing {sigma}",
            )


def _check_pending_reducible(state: EngineState) -> None:
    key0 = state.ring.key0
    for b in state.B.values():
        sk = key0(b.sig)
        for r in state.R:
            if r.hm is None or not mono_divides(r.hm, b.head):
                continue
            t = tuple(map(sub, b.head, r.hm))
            s = None if r.sig is None else tuple(map(add, t, r.sig))
            if key0(s) < sk:
                break
        else:
            raise InvariantViolation(
                "exist-reductor", f"pending {b.multiplier}*R[{b.base}] has no reductor"
            )


def check_invariants(state: EngineState, phase: str, h=None) -> None:
    if phase == "before_reduce":
        _check_before_reduce(state)
    elif phase == "after_reduce":
        _check_after_reduce(state, h)
    elif phase == "after_prune":
        _check_pending_reducible(state)
    else:
        raise ValueError(f"unknown phase {phase!r}")


# ---------- main loop ----------


def run_step(
    G: Sequence[Polynomial],
    f: Polynomial,
    options: Optional[EngineOptions] = None,
    stats: Optional[RunStats] = None,
) -> EngineState:
    """Adjoin ``f`` to the Groebner basis ``G``; returns the final state."""
    state = init_state(G, f, options, stats)
    opts = state.options
    st = state.stats
    checking = opts.check_invariants
    iterations = 0
    while True:
        iterations += 1
        st.iterations += 1
        if iterations > opts.max_iterations:
            raise IterationLimitExceeded(f"more than {opts.max_iterations} iterations")
        state.signature_trace.append(state.current.sig)
        if checking:
            check_invariants(state, "before_reduce")
        h, steps = reduce_labeled(state.current, state.R)
        st.reduction_steps += steps
        if h.hc not in (0, 1):
            inv = state.ring.field.inv(h.hc)
            h = LabeledPolynomial(
                h.sig, h.poly.scale(inv), h.cofactor.scale(inv) if h.cofactor is not None else None
            )
        if checking:
            check_invariants(state, "after_reduce", h)
        state.R.append(h)
        if h.poly.terms:
            state.pair_gens.append((h.sig, h.hm))
            generate_pairs(state, h)
        else:
            state.syzygy_gens.append(h.sig)
            st.zero_reductions += 1
        prune_B(state)
        if checking:
            check_invariants(state, "after_prune")
        nxt = select_next(state)
        if nxt is None:
            break
        state.current = labeled_mul(nxt.multiplier, state.R[nxt.base])
    state.current = None
    return state


def simple_signature_groebner(
    G: Sequence[Polynomial],
    f: Polynomial,
    options: Optional[EngineOptions] = None,
    raw: bool = False,
    stats: Optional[RunStats] = None,
) -> list[Polynomial]:
    """Groebner basis of ``G + [f]``.

    With ``raw`` the polynomial parts of R are returned as they are, zeros
    and seed copies included; otherwise zero polynomials are dropped.
    """
    state = run_step(G, f, options, stats)
    if raw:
        return state.raw_basis()
    return [p for p in state.raw_basis() if p.terms]


def interreduce(G: Sequence[Polynomial]) -> list[Polynomial]:
    """Reduced Groebner basis from a Groebner basis: minimal, tail-reduced, monic."""
    G = [g for g in G if g.terms]
    if not G:
        return []
    ring = G[0].ring
    for g in G:
        if g.is_constant():
            return [ring.one]
    key = ring.key
    # reduce each element by the rest until nothing changes; zeros drop out
    current = sorted((g.monic() for g in G), key=lambda g: key(g.hm))
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            g = current[i]
            others = [h for j, h in enumerate(current) if j != i and h.terms]
            r = poly_normal_form(g, others) if others else g
            if r != g:
                changed = True
                current[i] = r.monic() if r.terms else r
        current = [g for g in current if g.terms]
        if any(g.is_constant() for g in current):
            return [ring.one]
    reduced = current
    return sorted(reduced, key=lambda g: key(g.hm))


def incremental_groebner(
    F: Sequence[Polynomial],
    options: Optional[EngineOptions] = None,
    stats: Optional[RunStats] = None,
    trace: Optional[list] = None,
) -> list[Polynomial]:
    """Reduced Groebner basis of ``F``, adjoining one generator at a time.

    Each finished :class:`EngineState` is appended to ``trace`` when given.
    """
    options = options or EngineOptions()
    stats = stats if stats is not None else RunStats()
    started = time.perf_counter()
    F = [f for f in F if f.terms]
    if options.sort_by_degree:
        F = sorted(F, key=lambda f: f.total_degree())
    basis: list[Polynomial] = []
    raw_size = 0
    for f in F:
        if not basis:
            basis = interreduce([f])
            raw_size = len(basis)
        elif poly_normal_form(f, basis).terms:
            state = run_step(basis, f, options, stats)
            if trace is not None:
                trace.append(state)
            raw_size = len(state.R)
            basis = interreduce(state.raw_basis())
            log.debug("adjoined generator: %d iterations, basis %d", len(state.signature_trace), len(basis))
        if basis and basis[0].is_constant():
            basis = [basis[0].ring.one]
            break
    stats.basis_size_raw = raw_size
    stats.basis_size_reduced = len(basis)
    stats.wall_time += time.perf_counter() - started
    return basis
