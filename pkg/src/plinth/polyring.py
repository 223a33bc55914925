"""Exact sparse multivariate polynomial arithmetic over the rationals.

This module is the foundation of the toolkit: variable sets with a lex
precedence, sparse monomials, polynomials with ``fractions.Fraction``
coefficients, integer multigradings (weight systems), and enumeration of
the finite graded pieces they cut out.

Everything is exact; no floating point appears anywhere.  All values are
immutable after construction and safe to share between threads.

Text grammar (both input and canonical output)::

    polynomial := [sign] term { sign term }
    term       := factor { "*" factor }
    factor     := rational | variable [ "^" exponent ]
    rational   := integer [ "/" positive-integer ]
    variable   := [A-Za-z][A-Za-z0-9_]*

Whitespace is ignored.  Canonical output sorts terms descending in the
active monomial order, elides coefficient 1 and renders -1 as a leading
minus.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence


class PolyError(Exception):
    """Base class for errors raised by the polynomial layer."""


class VariableMismatchError(PolyError):
    """Operands live over different variable sets."""


class ZeroPolynomialError(PolyError):
    """An operation that needs a nonzero polynomial got zero."""


class InfiniteGradedPieceError(PolyError):
    """A weight system does not cut out finite graded pieces."""


# Multidegree results for the zero / non-homogeneous cases.
ANY_DEGREE = "any"
INHOMOGENEOUS = "inhomogeneous"


class VariableSet:
    """An ordered set of variable names with a lex precedence.

    ``precedence`` lists the names from lowest to highest; the last entry
    is the most significant variable of the lex order.  By default the
    declaration order is the precedence, so ``VariableSet(("x1", ..., "z"))``
    makes ``z`` dominate, matching the convention x1 < x2 < ... < z.
    """

    __slots__ = ("names", "precedence", "_index", "_significance", "_hash")

    def __init__(self, names: Sequence[str], precedence: Sequence[str] | None = None):
        names = tuple(names)
        if not names:
            raise PolyError("variable set must be nonempty")
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names!r}")
        prec = tuple(precedence) if precedence is not None else names
        if sorted(prec) != sorted(names):
            raise PolyError("precedence must be a permutation of the names")
        self.names = names
        self.precedence = prec
        self._index = {name: i for i, name in enumerate(names)}
        # variable indices from most significant to least significant
        self._significance = tuple(self._index[name] for name in reversed(prec))
        self._hash = hash((names, prec))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VariableSet)
            and self.names == other.names
            and self.precedence == other.precedence
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VariableSet({self.names!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def monomial_key(self, m: "Monomial") -> tuple[int, ...]:
        """Exponents listed from the most significant variable down.

        Tuple comparison of keys is exactly the lex order.
        """
        exps = m.exponent_map()
        return tuple(exps.get(i, 0) for i in self._significance)

    def variable(self, name: str) -> "Polynomial":
        return Polynomial(self, {Monomial(((self.index(name), 1),)): Fraction(1)})

    def constant(self, value) -> "Polynomial":
        c = Fraction(value)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {Monomial(()): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def poly(self, text: str) -> "Polynomial":
        """Parse a polynomial from the text grammar."""
        return parse_polynomial(self, text)

    def extend(self, extra: Sequence[str]) -> "VariableSet":
        """A new variable set with ``extra`` names appended (highest precedence)."""
        return VariableSet(self.names + tuple(extra), self.precedence + tuple(extra))


class Monomial:
    """A sparse monomial: (variable index, exponent) pairs, no zero exponents."""

    __slots__ = ("pairs", "_hash")

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        cleaned = tuple(sorted((i, e) for i, e in pairs if e != 0))
        for i, e in cleaned:
            if e < 0:
                raise PolyError(f"negative exponent on variable index {i}")
        self.pairs = cleaned
        self._hash = hash(cleaned)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({self.pairs!r})"

    def is_one(self) -> bool:
        return not self.pairs

    def degree(self) -> int:
        return sum(e for _, e in self.pairs)

    def exponent(self, index: int) -> int:
        for i, e in self.pairs:
            if i == index:
                return e
        return 0

    def exponent_map(self) -> dict[int, int]:
        return dict(self.pairs)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self.pairs)
        for i, e in other.pairs:
            d[i] = d.get(i, 0) + e
        return Monomial(d.items())

    def divides(self, other: "Monomial") -> bool:
        om = other.exponent_map()
        return all(om.get(i, 0) >= e for i, e in self.pairs)

    def divide(self, other: "Monomial") -> "Monomial":
        """Exact quotient self / other; raises if not divisible."""
        d = dict(self.pairs)
        for i, e in other.pairs:
            r = d.get(i, 0) - e
            if r < 0:
                raise PolyError(f"{self!r} not divisible by {other!r}")
            d[i] = r
        return Monomial(d.items())


MONOMIAL_ONE = Monomial(())


class Polynomial:
    """An immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ambient", "_terms", "_ordered", "_lt")

    def __init__(self, ambient: VariableSet, terms: Mapping[Monomial, Fraction]):
        self.ambient = ambient
        self._terms = {m: c for m, c in terms.items() if c != 0}
        self._ordered: list[tuple[Monomial, Fraction]] | None = None
        self._lt: tuple[Monomial, Fraction] | None = None

    # -- basic structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order: descending in the ambient lex order."""
        if self._ordered is None:
            key = self.ambient.monomial_key
            self._ordered = sorted(
                self._terms.items(), key=lambda t: key(t[0]), reverse=True
            )
        return list(self._ordered)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        """The lex-maximal term.  Raises ZeroPolynomialError on zero."""
        if not self._terms:
            raise ZeroPolynomialError("no leading term: zero polynomial")
        if self._lt is None:
            key = self.ambient.monomial_key
            m = max(self._terms, key=key)
            self._lt = (m, self._terms[m])
        return self._lt

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[0]

    def constant_term(self) -> Fraction:
        return self._terms.get(MONOMIAL_ONE, Fraction(0))

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(m.degree() for m in self._terms)

    def max_exponent(self, name: str) -> int:
        """Largest exponent of the named variable across all terms."""
        idx = self.ambient.index(name)
        if not self._terms:
            return 0
        return max(m.exponent(idx) for m in self._terms)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ambient != other.ambient:
            raise VariableMismatchError(
                f"operands over {self.ambient!r} and {other.ambient!r}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        d = dict(self._terms)
        for m, c in other._terms.items():
            s = d.get(m, Fraction(0)) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial(self.ambient, d)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        d = dict(self._terms)
        for m, c in other._terms.items():
            s = d.get(m, Fraction(0)) - c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial(self.ambient, d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ambient, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if not self._terms or not other._terms:
            return Polynomial(self.ambient, {})
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 * m2
                s = d.get(m, Fraction(0)) + c1 * c2
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return Polynomial(self.ambient, d)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial(self.ambient, {})
        return Polynomial(self.ambient, {m: c * v for m, v in self._terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PolyError("negative power")
        result = self.ambient.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ambient == other.ambient
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self._terms.items())))

    # -- evaluation and substitution --------------------------------------

    def evaluate(self, point: Mapping[str, Fraction | int]) -> Fraction:
        """Exact evaluation at a rational point (every variable needs a value)."""
        values = []
        for name in self.ambient.names:
            if name not in point:
                raise PolyError(f"no value for variable {name!r}")
            values.append(Fraction(point[name]))
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for i, e in m.pairs:
                v *= values[i] ** e
            total += v
        return total

    def substitute(
        self, images: Mapping[str, "Polynomial"], target: VariableSet | None = None
    ) -> "Polynomial":
        """Apply the algebra homomorphism sending each variable to its image.

        All images must live over one common variable set (``target``); it
        defaults to the ambient of the first image.  Every variable of the
        polynomial must have an image.
        """
        for name in self.ambient.names:
            if name not in images:
                raise PolyError(f"no image for variable {name!r}")
        if target is None:
            target = next(iter(images.values())).ambient
        for name, g in images.items():
            if g.ambient != target:
                raise VariableMismatchError(f"image of {name!r} over a foreign ambient")
        power_cache: dict[tuple[int, int], Polynomial] = {}

        def var_power(i: int, e: int) -> Polynomial:
            got = power_cache.get((i, e))
            if got is None:
                got = images[self.ambient.names[i]] ** e
                power_cache[(i, e)] = got
            return got

        total = target.zero()
        for m, c in self._terms.items():
            piece = target.constant(c)
            for i, e in m.pairs:
                piece = piece * var_power(i, e)
            total = total + piece
        return total

    def lift(self, target: VariableSet) -> "Polynomial":
        """Reinterpret over a larger variable set (matching by name)."""
        mapping = {name: target.index(name) for name in self.ambient.names}
        d = {}
        for m, c in self._terms.items():
            d[Monomial((mapping[self.ambient.names[i]], e) for i, e in m.pairs)] = c
        return Polynomial(target, d)

    # -- text form ---------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"<poly {format_polynomial(self)}>"


def arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Dispatch add/sub/mul by name; operands must share an ambient."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PolyError(f"unknown operation {op!r}")


def leading_term(f: Polynomial) -> tuple[Monomial, Fraction]:
    return f.leading_term()


class WeightSystem:
    """Integer multigrading: a weight vector of fixed rank per variable."""

    __slots__ = ("ambient", "rank", "weights")

    def __init__(self, ambient: VariableSet, weights: Sequence[Sequence[int]]):
        weights = tuple(tuple(int(x) for x in w) for w in weights)
        if len(weights) != len(ambient):
            raise PolyError(
                f"{len(weights)} weight vectors for {len(ambient)} variables"
            )
        ranks = {len(w) for w in weights}
        if len(ranks) != 1:
            raise PolyError("weight vectors of mixed rank")
        self.ambient = ambient
        self.rank = ranks.pop()
        if self.rank < 1:
            raise PolyError("weight system rank must be positive")
        self.weights = weights

    def weight_of(self, name: str) -> tuple[int, ...]:
        return self.weights[self.ambient.index(name)]

    def monomial_degree(self, m: Monomial) -> tuple[int, ...]:
        deg = [0] * self.rank
        for i, e in m.pairs:
            w = self.weights[i]
            for j in range(self.rank):
                deg[j] += e * w[j]
        return tuple(deg)

    def multidegree(self, f: Polynomial):
        """Common weight vector of all terms.

        Returns the vector, ``ANY_DEGREE`` for the zero polynomial (which is
        homogeneous of every degree), or ``INHOMOGENEOUS``.
        """
        if f.ambient != self.ambient:
            raise VariableMismatchError("polynomial over a different variable set")
        if f.is_zero():
            return ANY_DEGREE
        it = iter(f.monomials())
        deg = self.monomial_degree(next(it))
        for m in it:
            if self.monomial_degree(m) != deg:
                return INHOMOGENEOUS
        return deg

    def is_homogeneous(self, f: Polynomial) -> bool:
        return self.multidegree(f) != INHOMOGENEOUS

    def monomial_basis(
        self, degree: Sequence[int], restrict: Sequence[str] | None = None
    ) -> list[Monomial]:
        """All monomials of exactly the given multidegree, descending order.

        Finiteness requires every weight entry to be nonnegative and every
        (restricted) variable to have at least one strictly positive weight
        coordinate; otherwise InfiniteGradedPieceError is raised.
        """
        degree = tuple(int(x) for x in degree)
        if len(degree) != self.rank:
            raise PolyError(f"degree of rank {len(degree)}, expected {self.rank}")
        if restrict is None:
            indices = list(range(len(self.ambient)))
        else:
            indices = [self.ambient.index(name) for name in restrict]
        for i in indices:
            w = self.weights[i]
            if any(x < 0 for x in w):
                raise InfiniteGradedPieceError(
                    f"negative weight on {self.ambient.names[i]!r}"
                )
            if all(x == 0 for x in w):
                raise InfiniteGradedPieceError(
                    f"variable {self.ambient.names[i]!r} has zero weight vector"
                )
        out: list[Monomial] = []
        chosen: list[tuple[int, int]] = []

        def walk(pos: int, remaining: tuple[int, ...]) -> None:
            if pos == len(indices):
                if all(x == 0 for x in remaining):
                    out.append(Monomial(tuple(chosen)))
                return
            i = indices[pos]
            w = self.weights[i]
            cap = min(
                remaining[j] // w[j] for j in range(self.rank) if w[j] > 0
            )
            for e in range(cap + 1):
                rem = tuple(remaining[j] - e * w[j] for j in range(self.rank))
                if any(x < 0 for x in rem):
                    break
                if e:
                    chosen.append((i, e))
                walk(pos + 1, rem)
                if e:
                    chosen.pop()

        if all(x >= 0 for x in degree):
            walk(0, degree)
        key = self.ambient.monomial_key
        out.sort(key=key, reverse=True)
        return out


def monomial_basis(
    ws: WeightSystem, degree: Sequence[int], restrict: Sequence[str] | None = None
) -> list[Monomial]:
    return ws.monomial_basis(degree, restrict)


def multidegree(f: Polynomial, ws: WeightSystem):
    return ws.multidegree(f)


# -- parsing and formatting ----------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|\d+|[\^*+/-])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise PolyError(f"bad character at {text[pos:pos+10]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_polynomial(ambient: VariableSet, text: str) -> Polynomial:
    """Parse the polynomial text grammar over the given variable set."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyError("empty polynomial text")
    terms: dict[Monomial, Fraction] = {}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def parse_nat() -> int:
        nonlocal pos
        tok = peek()
        if tok is None or not tok.isdigit():
            raise PolyError(f"expected integer near token {pos} in {text!r}")
        pos += 1
        return int(tok)

    def parse_factor() -> tuple[Fraction, dict[int, int]]:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise PolyError(f"unexpected end of input in {text!r}")
        if tok.isdigit():
            pos += 1
            num = int(tok)
            if peek() == "/":
                pos += 1
                den = parse_nat()
                if den == 0:
                    raise PolyError("zero denominator")
                return Fraction(num, den), {}
            return Fraction(num), {}
        if re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", tok):
            pos += 1
            idx = ambient.index(tok)
            exp = 1
            if peek() == "^":
                pos += 1
                exp = parse_nat()
            return Fraction(1), {idx: exp}
        raise PolyError(f"unexpected token {tok!r} in {text!r}")

    def parse_term(sign: int) -> None:
        nonlocal pos
        coef = Fraction(sign)
        exps: dict[int, int] = {}
        while True:
            c, e = parse_factor()
            coef *= c
            for i, n in e.items():
                exps[i] = exps.get(i, 0) + n
            if peek() == "*":
                pos += 1
                continue
            break
        m = Monomial(exps.items())
        s = terms.get(m, Fraction(0)) + coef
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)

    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if tokens[pos] == "-" else 1
        pos += 1
    parse_term(sign)
    while pos < len(tokens):
        tok = tokens[pos]
        if tok not in ("+", "-"):
            raise PolyError(f"expected sign, got {tok!r} in {text!r}")
        pos += 1
        parse_term(-1 if tok == "-" else 1)
    return Polynomial(ambient, terms)


def format_monomial(ambient: VariableSet, m: Monomial) -> str:
    if m.is_one():
        return "1"
    parts = []
    # render factors by descending significance to match the term order
    exps = m.exponent_map()
    for i in ambient._significance:
        e = exps.get(i, 0)
        if e == 1:
            parts.append(ambient.names[i])
        elif e > 1:
            parts.append(f"{ambient.names[i]}^{e}")
    return "*".join(parts)


def _format_coef(c: Fraction) -> str:
    return str(c)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending term order, 1 elided, -1 as leading minus."""
    if f.is_zero():
        return "0"
    chunks = []
    for k, (m, c) in enumerate(f.terms()):
        neg = c < 0
        mag = -c if neg else c
        if m.is_one():
            body = _format_coef(mag)
        elif mag == 1:
            body = format_monomial(f.ambient, m)
        else:
            body = f"{_format_coef(mag)}*{format_monomial(f.ambient, m)}"
        if k == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)
