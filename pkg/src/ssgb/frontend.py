"""System files, basis formatting and benchmark/random system generators.

System file format::

    ring 32003 grevlex x y z     # modulus, order, variables (first is greatest)
    x^2*y - 3                    # one polynomial per nonblank line
    2x y + z^3                   # '*' between factors is optional

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .algebra import DEFAULT_MODULUS, ORDERS, Polynomial, Ring, is_prime


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class SystemDescription:
    ring: Ring
    generators: list

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    @property
    def variables(self) -> tuple:
        return self.ring.names

    @property
    def order(self) -> str:
        return self.ring.order


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^])"
)


def _tokens(text: str, lineno: int, col0: int):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", lineno, col0 + pos)
        if m.lastgroup != "ws":
            yield m.lastgroup, m.group(), col0 + pos
        pos = m.end()
    yield "end", "", col0 + pos


class _PolyParser:
    """Recursive descent over ``sum := ['+'|'-'] term (('+'|'-') term)*``."""

    def __init__(self, ring: Ring, text: str, lineno: int, col0: int):
        self.ring = ring
        self.index = {n: i for i, n in enumerate(ring.names)}
        self.toks = list(_tokens(text, lineno, col0))
        self.pos = 0
        self.lineno = lineno

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.lineno, tok[2])

    def parse(self) -> Polynomial:
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            terms.append(self.term(sign))
            kind, val, _ = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            raise self.error(f"expected '+' or '-', got {val!r}")
        return self.ring.poly(terms)

    def term(self, sign: int):
        coeff = sign
        exps = [0] * self.ring.nvars
        factors = 0
        while True:
            kind, val, col = self.peek()
            if kind == "int":
                self.take()
                coeff *= int(val)
            elif kind == "name":
                self.take()
                if val not in self.index:
                    raise ParseError(f"unknown variable {val!r}", self.lineno, col)
                e = 1
                if self.peek()[:2] == ("op", "^"):
                    self.take()
                    kind, num, ecol = self.peek()
                    if kind != "int":
                        raise ParseError("malformed exponent", self.lineno, ecol)
                    self.take()
                    e = int(num)
                exps[self.index[val]] += e
            else:
                if factors == 0:
                    raise self.error(f"expected a term, got {val or 'end of line'!r}")
                break
            factors += 1
            if self.peek()[:2] == ("op", "*"):
                self.take()
                if self.peek()[0] not in ("int", "name"):
                    raise self.error("dangling '*'")
        return tuple(exps), coeff


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_polynomial(ring: Ring, text: str, lineno: int = 1, col0: int = 1) -> Polynomial:
    return _PolyParser(ring, text, lineno, col0).parse()


def parse_system(text: str) -> SystemDescription:
    ring: Optional[Ring] = None
    gens = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if ring is None:
            ring = _parse_ring_line(line, lineno)
            continue
        gens.append(parse_polynomial(ring, line, lineno))
    if ring is None:
        raise ParseError("empty system: missing 'ring' line", max(last_line, 1), 1)
    if not gens:
        raise ParseError("empty system: no polynomials", max(last_line, 1), 1)
    return SystemDescription(ring, gens)


def _parse_ring_line(line: str, lineno: int) -> Ring:
    words = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
    if not words or words[0][0] != "ring":
        col = words[0][1] if words else 1
        raise ParseError("expected 'ring <prime> <order> <vars...>'", lineno, col)
    if len(words) < 4:
        raise ParseError("ring line needs a modulus, an order and variables", lineno, 1)
    (mod, mcol), (order, ocol) = words[1], words[2]
    if not mod.isdigit():
        raise ParseError(f"modulus {mod!r} is not an integer", lineno, mcol)
    if not is_prime(int(mod)):
        raise ParseError(f"modulus {mod} is not prime", lineno, mcol)
    if order not in ORDERS:
        raise ParseError(f"unknown order {order!r}", lineno, ocol)
    names = []
    for name, col in words[3:]:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"bad variable name {name!r}", lineno, col)
        if name in names:
            raise ParseError(f"duplicate variable {name!r}", lineno, col)
        names.append(name)
    return Ring(int(mod), len(names), order, names)


# ---------- output ----------


def format_monomial(m, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    out = []
    for m, c in p.terms:
        mono = format_monomial(m, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def format_ring(ring: Ring) -> str:
    return f"ring {ring.modulus} {ring.order} {' '.join(ring.names)}"


def format_basis(G: Sequence[Polynomial], ring: Ring, raw: bool = False) -> str:
    """Parser-compatible text: ring line, then one polynomial per line.

    Unless ``raw``, polynomials are made monic and sorted by ascending head.
    """
    if not raw:
        G = sorted((g.monic() for g in G), key=lambda g: ring.key0(g.hm))
    lines = [format_ring(ring)] + [format_polynomial(g) for g in G]
    return "\n".join(lines) + "\n"


# ---------- benchmark systems ----------


def cyclic(n: int, modulus: int = DEFAULT_MODULUS, order: str = "grevlex") -> SystemDescription:
    if n < 2:
        raise ValueError("cyclic-n needs n >= 2")
    ring = Ring(modulus, n, order, [f"x{i}" for i in range(1, n + 1)])
    gens = []
    for d in range(1, n):
        terms = []
        for i in range(n):
            e = [0] * n
            for j in range(d):
                e[(i + j) % n] += 1
            terms.append((tuple(e), 1))
        gens.append(ring.poly(terms))
    gens.append(ring.poly([((1,) * n, 1), (ring.one_monomial, -1)]))
    return SystemDescription(ring, gens)


def katsura(n: int, modulus: int = DEFAULT_MODULUS, order: str = "grevlex") -> SystemDescription:
    if n < 2:
        raise ValueError("katsura-n needs n >= 2")
    ring = Ring(modulus, n + 1, order, [f"u{i}" for i in range(n + 1)])

    def unit(i):
        e = [0] * (n + 1)
        e[i] = 1
        return e

    gens = []
    for m in range(n):
        terms = []
        for i in range(-n, n + 1):
            a, b = abs(i), abs(m - i)
            if b > n:
                continue
            e = unit(a)
            e[b] += 1
            terms.append((tuple(e), 1))
        terms.append((tuple(unit(m)), -1))
        gens.append(ring.poly(terms))
    gens.append(ring.poly([(tuple(unit(abs(i))), 1) for i in range(-n, n + 1)] + [(ring.one_monomial, -1)]))
    return SystemDescription(ring, gens)


def random_system(
    rng: random.Random,
    nvars: int,
    modulus: int = DEFAULT_MODULUS,
    order: str = "grevlex",
    max_generators: int = 4,
    max_degree: int = 3,
    max_terms: int = 5,
) -> SystemDescription:
    names = ["x", "y", "z", "w", "v", "s", "t"][:nvars] if nvars <= 7 else None
    ring = Ring(modulus, nvars, order, names)
    monos = [m for m in product(range(max_degree + 1), repeat=nvars) if sum(m) <= max_degree]
    gens = []
    for _ in range(rng.randint(1, max_generators)):
        k = rng.randint(1, max_terms)
        terms = [(rng.choice(monos), rng.randrange(1, modulus)) for _ in range(k)]
        gens.append(ring.poly(terms))
    return SystemDescription(ring, gens)


BENCHMARKS = {"cyclic": cyclic, "katsura": katsura}


def gen_benchmark(family: str, n: int, modulus: int = DEFAULT_MODULUS, order: str = "grevlex") -> SystemDescription:
    try:
        fn = BENCHMARKS[family]
    except KeyError:
        raise ValueError(f"unknown benchmark family {family!r}") from None
    return fn(n, modulus, order)
