"""
Polynomials in N[x1, ..., xn] and their evaluation over tuples of graphs,
together with the binomial and multinomial expansions used to rewrite
(G + H)^n and (q1 + ... + qt)^k as sums of products.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from shannon.algebra.rounding import Number, float_down, float_up
from shannon.errors import ParameterError, PolynomialSyntaxError, SizeError
from shannon.graphs.graph import (
    Graph,
    empty_graph,
    power,
    strong_product,
    unit_graph,
)

DEFAULT_MAX_VERTICES = 5_000_000
MAX_EXPONENT = 2**63 - 1


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: Tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        for e in exps:
            if e < 0 or e > MAX_EXPONENT:
                raise ParameterError(f"Exponent {e} outside 0..2^63-1")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Monomial":
        if not 0 <= index < nvars:
            raise ParameterError(f"Variable index {index} outside 0..{nvars - 1}")
        return cls(tuple(1 if i == index else 0 for i in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def __mul__(self, other: "Monomial") -> "Monomial":
        _same_arity(self.nvars, other.nvars)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ParameterError(f"Negative power {k}")
        return Monomial(tuple(e * k for e in self.exponents))

    def __str__(self) -> str:
        return format_monomial(self)


def _same_arity(a: int, b: int) -> None:
    if a != b:
        raise ParameterError(f"Variable counts differ: {a} vs {b}")


@dataclass(frozen=True)
class Polynomial:
    """Sorted (Monomial, coefficient) pairs with coefficients >= 1."""

    nvars: int
    terms: Tuple[Tuple[Monomial, int], ...]

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[Tuple[Monomial, int]]) -> "Polynomial":
        merged: Dict[Monomial, int] = {}
        for mono, coeff in terms:
            if mono.nvars != nvars:
                raise ParameterError(f"Monomial {mono.exponents} does not have {nvars} variables")
            if coeff < 0:
                raise ParameterError(f"Coefficient {coeff} is not a natural number")
            merged[mono] = merged.get(mono, 0) + int(coeff)
        return cls(nvars, tuple(sorted((m, c) for m, c in merged.items() if c)))

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, ())

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.from_terms(nvars, [(Monomial.one(nvars), 1)])

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        return cls.from_terms(nvars, [(Monomial.variable(index, nvars), 1)])

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "Polynomial":
        return cls.from_terms(mono.nvars, [(mono, coeff)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _same_arity(self.nvars, other.nvars)
        return Polynomial.from_terms(self.nvars, self.terms + other.terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        _same_arity(self.nvars, other.nvars)
        return Polynomial.from_terms(
            self.nvars,
            ((a * b, ca * cb) for a, ca in self.terms for b, cb in other.terms),
        )

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ParameterError(f"Negative power {k}")
        result = Polynomial.one(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __str__(self) -> str:
        return format_polynomial(self)


# Graph evaluation -----------------------------------------------------------


def vertex_count(p: Polynomial, sizes: Sequence[int]) -> int:
    """Number of vertices of p evaluated at graphs with the given sizes."""
    _check_arity(p, len(sizes))
    total = 0
    for mono, coeff in p.terms:
        count = coeff
        for size, e in zip(sizes, mono.exponents):
            # cap astronomically large powers; the caller only compares to a budget
            if size > 1 and e * math.log2(size) > 1024:
                return 2**1024
            count *= size**e
        total += count
    return total


def _check_arity(p: Polynomial, count: int) -> None:
    if count != p.nvars:
        raise ParameterError(f"Polynomial has {p.nvars} variables but {count} graphs were given")


def monomial_graph(mono: Monomial, graphs: Sequence[Graph]) -> Graph:
    factors = [power(g, e) for g, e in zip(graphs, mono.exponents) if e]
    if not factors:
        return unit_graph()
    result = factors[0]
    for factor in factors[1:]:
        result = strong_product(result, factor)
    names = [g.label() for g in graphs]
    return Graph(result.n, result.rows, format_monomial(mono, names))


def _disjoint_copies(parts: Iterable[Tuple[Graph, int]], provenance: str) -> Graph:
    rows: List[int] = []
    offset = 0
    for graph, copies in parts:
        for _ in range(copies):
            rows.extend(row << offset for row in graph.rows)
            offset += graph.n
    return Graph(offset, tuple(rows), provenance)


def evaluate(
    p: Polynomial, graphs: Sequence[Graph], max_vertices: int = DEFAULT_MAX_VERTICES
) -> Graph:
    """
    p(G1, ..., Gn): for each term c*x^e in lexicographic exponent order, c
    contiguous copies of the strong product of the powers Gi^ei.
    """
    _check_arity(p, len(graphs))
    size = vertex_count(p, [g.n for g in graphs])
    if size > max_vertices:
        raise SizeError(size, max_vertices)
    if p.is_zero:
        return empty_graph(0)
    names = [g.label() for g in graphs]
    parts = [(monomial_graph(mono, graphs), coeff) for mono, coeff in p.terms]
    return _disjoint_copies(parts, format_polynomial(p, names))


def expand_sum_power(
    g: Graph, h: Graph, n: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Graph:
    """sum_k C(n, k) G^k H^(n-k) as a disjoint union, for k = n down to 0."""
    if n < 1:
        raise ParameterError(f"expand_sum_power needs n >= 1, got {n}")
    size = (g.n + h.n) ** n
    if size > max_vertices:
        raise SizeError(size, max_vertices)
    parts = [
        (strong_product(power(g, k), power(h, n - k)), math.comb(n, k))
        for k in range(n, -1, -1)
    ]
    return _disjoint_copies(parts, f"expand(({g.label()}+{h.label()})^{n})")


# Expansion and divisibility ---------------------------------------------------


def _compositions(k: int, t: int) -> Iterable[Tuple[int, ...]]:
    """All (i1, ..., it) >= 0 with sum k, in lexicographic order."""
    if t == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, t - 1):
            yield (first,) + rest


def multinomial_expand(qs: Sequence[Monomial], k: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Exponent tuples of (q1 + ... + qt)^k with multinomial coefficients."""
    if k < 1 or not qs:
        raise ParameterError(f"multinomial_expand needs k >= 1 and t >= 1, got k={k}, t={len(qs)}")
    kf = math.factorial(k)
    expansion = []
    for tup in _compositions(k, len(qs)):
        coeff = kf
        for i in tup:
            coeff //= math.factorial(i)
        expansion.append((tup, coeff))
    return expansion


def monomial_divides(mu: Monomial, q: Monomial, n: int) -> bool:
    """True iff mu divides q^n."""
    _same_arity(mu.nvars, q.nvars)
    if n < 1:
        raise ParameterError(f"Power must be positive, got {n}")
    return all(a <= n * b for a, b in zip(mu.exponents, q.exponents))


def divisor_exponent(mu: Monomial, q: Monomial) -> Optional[int]:
    """Least N >= 1 with mu | q^N, or None if no power of q is divisible by mu."""
    _same_arity(mu.nvars, q.nvars)
    needed = 1
    for a, b in zip(mu.exponents, q.exponents):
        if a and not b:
            return None
        if a:
            needed = max(needed, -(-a // b))
    return needed


def variables_occurring(p: Polynomial) -> FrozenSet[int]:
    found = set()
    for mono, _ in p.terms:
        found |= mono.support()
    return frozenset(found)


def full_support_power(p: Polynomial) -> Tuple[int, Monomial]:
    """
    Least k such that some term of p^k contains every variable, with that term.
    Uses the multinomial expansion of (q1 + ... + qt)^k over p's monomials.
    """
    if variables_occurring(p) != frozenset(range(p.nvars)):
        raise ParameterError("Not every variable occurs in the polynomial")
    qs = p.monomials()
    for k in range(1, max(1, p.nvars) + 1):
        for tup, _ in multinomial_expand(qs, k):
            mu = Monomial.one(p.nvars)
            for q, i in zip(qs, tup):
                mu = mu * q**i
            if len(mu.support()) == p.nvars:
                return k, mu
    raise AssertionError("a full-support term exists by k = nvars")


# Real evaluation ---------------------------------------------------------------


def evaluate_exact(p: Polynomial, values: Sequence[Number]) -> Fraction:
    _check_arity(p, len(values))
    xs = [Fraction(v) for v in values]
    total = Fraction(0)
    for mono, coeff in p.terms:
        term = Fraction(coeff)
        for x, e in zip(xs, mono.exponents):
            if e:
                term *= x**e
        total += term
    return total


def evaluate_at(p: Polynomial, values: Sequence[Number], rounding: str = "nearest") -> float:
    """p at real values, evaluated exactly and rounded 'down', 'up' or 'nearest'."""
    exact = evaluate_exact(p, values)
    if rounding == "down":
        return float_down(exact)
    if rounding == "up":
        return float_up(exact)
    if rounding == "nearest":
        return float(exact)
    raise ParameterError(f"Unknown rounding mode '{rounding}'")


# Text syntax ---------------------------------------------------------------------

_LETTERS = "xyzuvw"
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+|[a-z])|(?P<op>[+*^]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"Unexpected character '{text[offset]}'", offset)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


def _variable_index(name: str, offset: int) -> Tuple[int, bool]:
    """(0-based index, indexed-form flag)."""
    if name.startswith("x") and len(name) > 1:
        index = int(name[1:])
        if index < 1:
            raise PolynomialSyntaxError(f"Variable '{name}' must be x1 or higher", offset)
        return index - 1, True
    if name in _LETTERS:
        return _LETTERS.index(name), False
    raise PolynomialSyntaxError(f"Unknown variable '{name}'", offset)


def parse_polynomial(text: str, nvars: Optional[int] = None) -> Polynomial:
    """
    Parse "3 x1^2 x2 + x2^3 + 1" (or with letters: "x^2 + 2 x y"). Products are
    written with whitespace or '*'; a term without a number has coefficient 1.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("Empty polynomial", 0)

    raw_terms: List[Tuple[int, Dict[int, int]]] = []
    styles = set()
    coeff, exps, expect_factor = 1, {}, True
    i = 0
    while i < len(tokens):
        kind, value, offset = tokens[i]
        if kind == "op" and value == "+":
            if expect_factor:
                raise PolynomialSyntaxError("Missing term before '+'", offset)
            raw_terms.append((coeff, exps))
            coeff, exps, expect_factor = 1, {}, True
        elif kind == "op" and value == "*":
            if expect_factor:
                raise PolynomialSyntaxError("Missing factor before '*'", offset)
            expect_factor = True
        elif kind == "op":
            raise PolynomialSyntaxError("'^' must follow a variable", offset)
        elif kind == "num":
            coeff *= int(value)
            expect_factor = False
        else:
            index, indexed = _variable_index(value, offset)
            styles.add(indexed)
            exponent = 1
            if i + 1 < len(tokens) and tokens[i + 1][1] == "^":
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "num":
                    raise PolynomialSyntaxError("Expected an exponent after '^'", tokens[i + 1][2] + 1)
                exponent = int(tokens[i + 2][1])
                i += 2
            exps[index] = exps.get(index, 0) + exponent
            expect_factor = False
        i += 1
    if expect_factor:
        raise PolynomialSyntaxError("Polynomial ends with an operator", len(text))
    raw_terms.append((coeff, exps))
    if len(styles) > 1:
        raise PolynomialSyntaxError("Mixing x1..xn with letter variables", 0)

    used = max((max(e) + 1 for _, e in raw_terms if e), default=0)
    if nvars is None:
        nvars = used
    elif used > nvars:
        raise ParameterError(f"Polynomial uses {used} variables but only {nvars} were given")
    return Polynomial.from_terms(
        nvars,
        (
            (Monomial(tuple(e.get(j, 0) for j in range(nvars))), c)
            for c, e in raw_terms
        ),
    )


def _default_names(nvars: int) -> List[str]:
    return [f"x{i + 1}" for i in range(nvars)]


def format_monomial(mono: Monomial, names: Optional[Sequence[str]] = None) -> str:
    names = names or _default_names(mono.nvars)
    parts = []
    for name, e in zip(names, mono.exponents):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) or "1"


def format_polynomial(p: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    if p.is_zero:
        return "0"
    rendered = []
    for mono, coeff in sorted(p.terms, reverse=True):
        body = format_monomial(mono, names)
        if body == "1":
            rendered.append(str(coeff))
        elif coeff == 1:
            rendered.append(body)
        else:
            rendered.append(f"{coeff} {body}")
    return " + ".join(rendered)
