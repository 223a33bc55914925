"""Leading-term subalgebra machinery: subduction and SAGBI verification.

Given named generators of a subalgebra of a polynomial ring, the leading
terms generate a monomial algebra.  Membership of a monomial in that
algebra is decided by bounded exhaustive search; subduction repeatedly
cancels the leading term of a polynomial by a product of generators and
leaves a replayable certificate.  A generating set is verified to be a
SAGBI basis (up to a degree bound) by subducting every tete-a-tete
difference to zero.

The same step machinery, with a variable prefix allowed in front of the
generator product, decides membership in the ideal generated by chosen
variables inside the subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (
    MONOMIAL_ONE,
    Monomial,
    PolyError,
    Polynomial,
    VariableSet,
)
from .report import Checker, VerificationReport


class SubductionError(PolyError):
    pass


class GeneratorSet:
    """Named nonzero generators of a subalgebra, with leading-term caches."""

    def __init__(self, ambient: VariableSet, generators: Iterable[tuple[str, Polynomial]]):
        self.ambient = ambient
        self.names: list[str] = []
        self.polys: dict[str, Polynomial] = {}
        for name, g in generators:
            if name in self.polys:
                raise SubductionError(f"duplicate generator name {name!r}")
            if g.is_zero():
                raise SubductionError(f"generator {name!r} is zero")
            if g.ambient != ambient:
                raise SubductionError(f"generator {name!r} over a different ambient")
            self.names.append(name)
            self.polys[name] = g
        self.names.sort()
        self.lt: dict[str, tuple[Monomial, Fraction]] = {
            name: self.polys[name].leading_term() for name in self.names
        }
        # search order: skip generators with constant leading term (they can
        # never help cancel a monomial and would not terminate)
        self._search_names = [
            name for name in self.names if not self.lt[name][0].is_one()
        ]
        self._fact_cache: dict[Monomial, tuple[str, ...] | None] = {}
        self._prod_cache: dict[tuple[str, ...], Polynomial] = {}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.polys

    def leading_monomials(self) -> dict[str, Monomial]:
        return {name: lt[0] for name, lt in self.lt.items()}

    def product(self, names: Sequence[str]) -> Polynomial:
        """Product of generators for a multiset of names (cached)."""
        key = tuple(sorted(names))
        got = self._prod_cache.get(key)
        if got is None:
            got = self.ambient.one()
            for name in key:
                got = got * self.polys[name]
            self._prod_cache[key] = got
        return got

    def product_lt_coefficient(self, names: Sequence[str]) -> Fraction:
        c = Fraction(1)
        for name in names:
            c *= self.lt[name][1]
        return c

    # -- monomial algebra membership ---------------------------------------

    def factorization(self, m: Monomial) -> tuple[str, ...] | None:
        """Multiset of generator names whose leading monomials multiply to m.

        Bounded exhaustive search, depth capped by the total degree of m.
        Ties break toward the fewest factors, then the lexicographically
        smallest name sequence, so certificates are deterministic.
        """
        got = self._fact_cache.get(m, "miss")
        if got != "miss":
            return got
        result = self._factorize(m)
        self._fact_cache[m] = result
        return result

    def _factorize(self, m: Monomial) -> tuple[str, ...] | None:
        if m.is_one():
            return ()
        names = self._search_names
        lts = [self.lt[name][0] for name in names]
        degs = [lt.degree() for lt in lts]
        if not names:
            return None
        min_deg = min(degs)
        max_depth = m.degree() // min_deg

        def dfs(rem: Monomial, start: int, depth_left: int) -> tuple[str, ...] | None:
            if rem.is_one():
                return () if depth_left == 0 else None
            if depth_left == 0:
                return None
            rd = rem.degree()
            # degree window prune
            if rd > depth_left * max(degs[start:], default=0):
                return None
            if rd < depth_left * min(degs[start:], default=rd + 1):
                return None
            for k in range(start, len(names)):
                if lts[k].divides(rem):
                    sub = dfs(rem.divide(lts[k]), k, depth_left - 1)
                    if sub is not None:
                        return (names[k],) + sub
            return None

        for depth in range(1, max_depth + 1):
            found = dfs(m, 0, depth)
            if found is not None:
                return found
        return None


def monomial_algebra_member(
    m: Monomial, G: GeneratorSet
) -> tuple[str, ...] | None:
    """Factor m over the leading monomials of G, or None."""
    return G.factorization(m)


@dataclass(frozen=True)
class SubductionStep:
    """One cancellation: coefficient * (prefix variable?) * product(factors)."""

    coefficient: Fraction
    factors: tuple[str, ...]
    prefix: str | None = None


@dataclass
class SubductionCertificate:
    """Replayable record of a subduction run: input = sum(steps) + remainder."""

    input: Polynomial
    steps: list[SubductionStep]
    remainder: Polynomial
    complete: bool = True
    stuck: Monomial | None = None

    @property
    def ok(self) -> bool:
        return self.complete and self.remainder.is_zero()

    def replay(self, G: GeneratorSet) -> Polynomial:
        """Reconstruct the input from the steps and the remainder."""
        total = self.remainder
        for step in self.steps:
            piece = G.product(step.factors).scale(step.coefficient)
            if step.prefix is not None:
                piece = piece * G.ambient.variable(step.prefix)
            total = total + piece
        return total

    def to_text(self) -> str:
        lines = []
        for step in self.steps:
            prefix = f"{step.prefix} * " if step.prefix else ""
            factors = " * ".join(step.factors) if step.factors else "1"
            lines.append(f"step {step.coefficient} * {prefix}{factors}")
        lines.append(f"remainder {self.remainder}")
        lines.append(f"complete {str(self.complete).lower()}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "steps": [
                {
                    "coefficient": str(s.coefficient),
                    "factors": list(s.factors),
                    "prefix": s.prefix,
                }
                for s in self.steps
            ],
            "remainder": str(self.remainder),
            "complete": self.complete,
        }


def subduct(
    f: Polynomial, G: GeneratorSet, max_steps: int = 10_000
) -> SubductionCertificate:
    """Normal form of f against the subalgebra generated by G.

    Repeatedly cancels the leading term by a scalar multiple of a product
    of generators whose leading terms multiply to it; stops when the
    leading term has no factorization or the remainder is zero.  Exceeding
    the step budget flags the certificate incomplete.
    """
    if max_steps < 1:
        raise SubductionError("max_steps must be >= 1")
    steps: list[SubductionStep] = []
    cur = f
    key = G.ambient.monomial_key
    while not cur.is_zero():
        lm, lc = cur.leading_term()
        names = G.factorization(lm)
        if names is None:
            return SubductionCertificate(f, steps, cur, complete=True)
        if len(steps) >= max_steps:
            return SubductionCertificate(f, steps, cur, complete=False)
        coeff = lc / G.product_lt_coefficient(names)
        piece = G.product(names).scale(coeff)
        nxt = cur - piece
        if not nxt.is_zero() and key(nxt.leading_monomial()) >= key(lm):
            raise SubductionError("subduction step failed to decrease the leading term")
        steps.append(SubductionStep(coeff, names))
        cur = nxt
    return SubductionCertificate(f, steps, cur, complete=True)


def x_ideal_membership(
    f: Polynomial,
    G: GeneratorSet,
    prefixes: Sequence[str],
    max_steps: int = 10_000,
) -> SubductionCertificate:
    """Write f as sum of prefix * (generator product) * coefficient.

    Each step cancels the leading term by a prefix variable times a
    generator-product leading term; no prefixed factorization means
    failure, reported with the stuck monomial.
    """
    if max_steps < 1:
        raise SubductionError("max_steps must be >= 1")
    indices = [(p, G.ambient.index(p)) for p in prefixes]
    steps: list[SubductionStep] = []
    cur = f
    key = G.ambient.monomial_key
    while not cur.is_zero():
        lm, lc = cur.leading_term()
        chosen: tuple[str, tuple[str, ...]] | None = None
        for p, idx in indices:
            if lm.exponent(idx) >= 1:
                names = G.factorization(lm.divide(Monomial(((idx, 1),))))
                if names is not None:
                    chosen = (p, names)
                    break
        if chosen is None:
            return SubductionCertificate(f, steps, cur, complete=True, stuck=lm)
        if len(steps) >= max_steps:
            return SubductionCertificate(f, steps, cur, complete=False, stuck=None)
        p, names = chosen
        coeff = lc / G.product_lt_coefficient(names)
        piece = G.product(names).scale(coeff) * G.ambient.variable(p)
        nxt = cur - piece
        if not nxt.is_zero() and key(nxt.leading_monomial()) >= key(lm):
            raise SubductionError("prefixed step failed to decrease the leading term")
        steps.append(SubductionStep(coeff, names, prefix=p))
        cur = nxt
    return SubductionCertificate(f, steps, cur, complete=True)


@dataclass(frozen=True)
class TeteATete:
    """Two distinct generator multisets with equal leading-monomial products."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    product: Monomial


def tete_a_tetes(G: GeneratorSet, total_degree_bound: int) -> list[TeteATete]:
    """All pairs of distinct generator multisets, up to the bound, whose
    leading monomials have equal products (deduplicated)."""
    if total_degree_bound < 0:
        raise SubductionError("degree bound must be nonnegative")
    names = G._search_names
    lts = [G.lt[name][0] for name in names]
    degs = [lt.degree() for lt in lts]
    by_product: dict[Monomial, list[tuple[str, ...]]] = {}

    def walk(start: int, acc_names: tuple[str, ...], acc_mono: Monomial, budget: int):
        if acc_names:
            by_product.setdefault(acc_mono, []).append(acc_names)
        for k in range(start, len(names)):
            if degs[k] <= budget:
                walk(
                    k,
                    acc_names + (names[k],),
                    acc_mono * lts[k],
                    budget - degs[k],
                )

    walk(0, (), MONOMIAL_ONE, total_degree_bound)
    out: list[TeteATete] = []
    for mono, group in sorted(
        by_product.items(), key=lambda kv: G.ambient.monomial_key(kv[0]), reverse=True
    ):
        if len(group) < 2:
            continue
        group = sorted(set(group))
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                out.append(TeteATete(group[a], group[b], mono))
    return out


def tete_a_tete_difference(G: GeneratorSet, tt: TeteATete) -> Polynomial:
    """Monic-normalized difference of the two generator products."""
    left = G.product(tt.left).scale(1 / G.product_lt_coefficient(tt.left))
    right = G.product(tt.right).scale(1 / G.product_lt_coefficient(tt.right))
    return left - right


def verify_sagbi(
    G: GeneratorSet,
    total_degree_bound: int,
    max_steps: int = 10_000,
    check_id: str = "sagbi",
    anchor: str = "every tete-a-tete difference subducts to remainder zero",
) -> VerificationReport:
    """Subduct every tete-a-tete difference up to the bound; all must reach 0.

    The report records the bound (completeness is only claimed up to it)
    and, for each nonzero difference, the observed leading term.
    """
    checker = Checker(
        check_id,
        anchor,
        {"degree_bound": total_degree_bound, "generators": len(G)},
    )
    pairs = tete_a_tetes(G, total_degree_bound)
    checker.note(f"tete-a-tetes up to total degree {total_degree_bound}: {len(pairs)}")
    observed: list[str] = []
    for tt in pairs:
        diff = tete_a_tete_difference(G, tt)
        if diff.is_zero():
            continue
        lm, lc = diff.leading_term()
        cert = subduct(diff, G, max_steps)
        if not cert.ok:
            checker.require(
                False,
                {
                    "left": list(tt.left),
                    "right": list(tt.right),
                    "remainder": str(cert.remainder),
                    "complete": cert.complete,
                },
            )
        else:
            observed.append(
                f"LT({'*'.join(tt.left)} - {'*'.join(tt.right)}) = "
                f"{lc}*{lm.pairs}"
            )
    checker.note(f"nonzero differences subducted to zero: {len(observed)}")
    return checker.report()
