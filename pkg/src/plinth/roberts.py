"""Roberts' additive-group action on affine 7-space.

The coordinate ring is k[x1,x2,x3,y1,y2,y3,z] with the lex order
x1 < x2 < x3 < y1 < y2 < y3 < z and the rank-3 torus grading with weights
(1,0,0), (0,1,0), (0,0,1), (3,0,0), (0,3,0), (0,0,3), (2,2,2).  The action
is generated by the locally nilpotent derivation

    D = x1^3 d/dy1 + x2^3 d/dy2 + x3^3 d/dy3 + (x1*x2*x3)^2 d/dz.

Its invariant ring is not finitely generated; this module builds the
classical finite approximations: the quadratic invariants u12, u13, u23,
the recursive family beta(i, n) with leading term x_i * z^n, the generator
sets S_N, and the verification suites for the structural facts the family
satisfies (the hypersurface relation, the five relations among the nine
low-degree invariants, SAGBI behaviour of S_N, conductor and radical
structure, and the collapse of the fixed-point locus).

beta(i, n) is constructed by ansatz: solve D(f) = 0 on the monomial basis
of the multidegree (2n,2n,2n) + e_i with the x_i*z^n coefficient pinned to
1 and the z^(n-1) and z^(n-2) slices pinned to their canonical values

    -n * x_j^2 x_k^2 y_i           at z^(n-1)
    binom(n,2) * (x_i^2 x_j^4 x_k y_i y_k + x_i^2 x_j x_k^4 y_i y_j
                  - x_i^5 x_j x_k y_j y_k)   at z^(n-2)

({j,k} the complementary indices); the residual ambiguity in lower
z-degrees is resolved by the reduced-echelon representative, so the
construction is deterministic and cacheable.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .derivation import Derivation
from .polyring import (
    INHOMOGENEOUS,
    Monomial,
    PolyError,
    Polynomial,
    VariableSet,
    WeightSystem,
)
from .report import Checker, VerificationReport
from .sagbi import (
    GeneratorSet,
    SubductionCertificate,
    monomial_algebra_member,
    subduct,
    x_ideal_membership,
)

VARIABLE_NAMES = ("x1", "x2", "x3", "y1", "y2", "y3", "z")
WEIGHTS = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (3, 0, 0),
    (0, 3, 0),
    (0, 0, 3),
    (2, 2, 2),
)

# Coordinates of the target affine 9-space of the separating morphism
# (x1, x2, x3, u12, u13, u23, b1, b2, b3) -> (X1, ..., B3).
IMAGE_NAMES_9 = ("X1", "X2", "X3", "U12", "U13", "U23", "B1", "B2", "B3")
IMAGE_NAMES_6 = ("X1", "X2", "X3", "U12", "U13", "U23")

# The hypersurface cut out by the six z-free invariants.  Note the pairing:
# x_i^3 multiplies the u that omits the index i, with alternating sign --
# this is the unique multihomogeneous combination, of multidegree (3,3,3).
Y0_RELATION = "X1^3*U23 - X2^3*U13 + X3^3*U12"

# The five relations among the nine invariants (coordinates on the image of
# the separating morphism into affine 9-space).  Each substitutes to the
# zero polynomial; the u subscripts pair each term to a common multidegree.
Y1_GENERATORS = (
    "X1^2*U23 - X3*B2 + X2*B3",
    "X2^2*U13 - X3*B1 + X1*B3",
    "X3^2*U12 - X2*B1 + X1*B2",
    "U12*U13*U23*(X1*X2*B3 + X2*X3*B1 + X3*X1*B2)"
    " - U23*B1^3 + U13*B2^3 - U12*B3^3",
    "X1*X2*X3*U12*U13*U23 - X1*U23*B1^2 + X2*U13*B2^2 - X3*U12*B3^2",
)


def _parse_with_products(ambient: VariableSet, text: str) -> Polynomial:
    """Parse a generator expression, allowing one level of (...) grouping."""
    # the polynomial grammar has no parentheses; expand A*(B) by hand
    if "(" not in text:
        return ambient.poly(text)
    head, rest = text.split("(", 1)
    inner, tail = rest.split(")", 1)
    left = ambient.poly(head.rstrip("* \t"))
    total = left * ambient.poly(inner)
    if tail.strip():
        total = total + ambient.poly("0" + tail)
    return total


class RobertsAction:
    """The fixed ring, grading, derivation and invariant catalog."""

    def __init__(self) -> None:
        self.ring = VariableSet(VARIABLE_NAMES)
        self.weights = WeightSystem(self.ring, WEIGHTS)
        R = self.ring
        self.D = Derivation(
            R,
            {
                "x1": R.zero(),
                "x2": R.zero(),
                "x3": R.zero(),
                "y1": R.poly("x1^3"),
                "y2": R.poly("x2^3"),
                "y3": R.poly("x3^3"),
                "z": R.poly("x1^2*x2^2*x3^2"),
            },
        )
        self.D.certify_locally_nilpotent(bound=4)
        self.u12 = R.poly("x1^3*y2 - x2^3*y1")
        self.u13 = R.poly("x1^3*y3 - x3^3*y1")
        self.u23 = R.poly("x2^3*y3 - x3^3*y2")
        self._betas: dict[tuple[int, int], Polynomial] = {}
        self._gensets: dict[int, GeneratorSet] = {}
        self._kernel_cache: dict[tuple[tuple[int, int, int], str], list[Polynomial]] = {}

    # -- the invariant catalog -------------------------------------------

    def u(self, i: int, j: int) -> Polynomial:
        return {(1, 2): self.u12, (1, 3): self.u13, (2, 3): self.u23}[(i, j)]

    def beta_degree(self, i: int, n: int) -> tuple[int, int, int]:
        d = [2 * n, 2 * n, 2 * n]
        d[i - 1] += 1
        return tuple(d)

    def beta(self, i: int, n: int) -> Polynomial:
        """The invariant with leading term x_i * z^n, in canonical form."""
        if i not in (1, 2, 3) or n < 0:
            raise PolyError(f"beta({i}, {n}) out of range")
        got = self._betas.get((i, n))
        if got is None:
            got = self._construct_beta(i, n)
            if not self.D.apply(got).is_zero():
                raise PolyError(f"constructed beta({i},{n}) is not invariant")
            self._betas[(i, n)] = got
        return got

    def _slice_targets(self, i: int, n: int) -> dict[int, Polynomial]:
        """Pinned z-slices of the canonical form, keyed by z-exponent."""
        R = self.ring
        j, k = sorted({1, 2, 3} - {i})
        x = lambda a: f"x{a}"
        y = lambda a: f"y{a}"
        targets: dict[int, Polynomial] = {
            n: R.variable(x(i)),
        }
        if n >= 1:
            targets[n - 1] = R.poly(f"{x(j)}^2*{x(k)}^2*{y(i)}").scale(-n)
        if n >= 2:
            c = comb(n, 2)
            targets[n - 2] = (
                R.poly(f"{x(i)}^2*{x(j)}^4*{x(k)}*{y(i)}*{y(k)}")
                + R.poly(f"{x(i)}^2*{x(j)}*{x(k)}^4*{y(i)}*{y(j)}")
                - R.poly(f"{x(i)}^5*{x(j)}*{x(k)}*{y(j)}*{y(k)}")
            ).scale(c)
        return targets

    def _construct_beta(self, i: int, n: int) -> Polynomial:
        R = self.ring
        z_index = R.index("z")
        degree = self.beta_degree(i, n)
        mons = self.weights.monomial_basis(degree)
        key = R.monomial_key
        cols = sorted(mons, key=key, reverse=True)
        col_index = {m: c for c, m in enumerate(cols)}
        targets = self._slice_targets(i, n)
        pinned_values: dict[int, Fraction] = {}
        for m in cols:
            t = m.exponent(z_index)
            if t in targets:
                xy_part = m.divide(Monomial(((z_index, t),)) if t else Monomial(()))
                pinned_values[col_index[m]] = targets[t].coefficient(xy_part)

        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        # D(sum c_m m) = 0, one equation per image monomial
        images = [self.D.apply(Polynomial(R, {m: Fraction(1)})) for m in cols]
        image_monos = sorted(
            {m for g in images for m in g.monomials()}, key=key, reverse=True
        )
        im_index = {m: r for r, m in enumerate(image_monos)}
        d_rows = [[Fraction(0)] * len(cols) for _ in image_monos]
        for c, g in enumerate(images):
            for m, coef in g.terms():
                d_rows[im_index[m]][c] = coef
        rows.extend(d_rows)
        rhs.extend(Fraction(0) for _ in d_rows)
        for c, value in pinned_values.items():
            unit = [Fraction(0)] * len(cols)
            unit[c] = Fraction(1)
            rows.append(unit)
            rhs.append(value)

        particular = linalg.solve(rows, rhs)
        if particular is None:
            raise PolyError(
                f"no invariant of multidegree {degree} with canonical slices; "
                f"beta({i},{n}) construction failed"
            )
        homogeneous = linalg.nullspace(rows, len(cols))
        if homogeneous:
            reduced, pivots = linalg.rref(homogeneous)
            for row, pivot in zip(reduced, pivots):
                factor = particular[pivot]
                if factor:
                    particular = [a - factor * b for a, b in zip(particular, row)]
        return Polynomial(R, {m: c for m, c in zip(cols, particular) if c})

    def generator_name(self, i: int, n: int) -> str:
        return f"b{i}_{n}"

    def catalog(self, N: int) -> GeneratorSet:
        """S_N: the u's together with beta(i, n) for n <= N."""
        if N < 0:
            raise PolyError("catalog level must be nonnegative")
        got = self._gensets.get(N)
        if got is None:
            gens: list[tuple[str, Polynomial]] = [
                ("u12", self.u12),
                ("u13", self.u13),
                ("u23", self.u23),
            ]
            for i in (1, 2, 3):
                for n in range(N + 1):
                    gens.append((self.generator_name(i, n), self.beta(i, n)))
            got = GeneratorSet(self.ring, gens)
            self._gensets[N] = got
        return got

    def a0_catalog(self) -> GeneratorSet:
        return self.catalog(0)

    # -- graded kernels -----------------------------------------------------

    def graded_invariants(
        self, degree: Sequence[int], restrict: Sequence[str] | None = None
    ) -> list[Polynomial]:
        """Cached basis of ker D in one multidegree (optionally in k[x,y])."""
        key = (tuple(int(x) for x in degree), ",".join(restrict or ()))
        got = self._kernel_cache.get(key)
        if got is None:
            got = self.D.graded_kernel(self.weights, degree, restrict).basis
            self._kernel_cache[key] = got
        return got

    def graded_invariants_z_capped(
        self, degree: Sequence[int], z_cap: int
    ) -> list[Polynomial]:
        """Basis of the invariants of one multidegree with z-degree <= z_cap."""
        full = self.graded_invariants(degree)
        if not full:
            return []
        z_index = self.ring.index("z")
        heavy = sorted(
            {m for p in full for m in p.monomials() if m.exponent(z_index) > z_cap},
            key=self.ring.monomial_key,
        )
        if not heavy:
            return full
        rows = [[p.coefficient(m) for p in full] for m in heavy]
        combos = linalg.nullspace(rows, len(full))
        out = []
        for combo in combos:
            q = self.ring.zero()
            for c, p in zip(combo, full):
                if c:
                    q = q + p.scale(c)
            if not q.is_zero():
                out.append(q)
        return out

    # -- verification suites -------------------------------------------------

    def y0_relation_check(self) -> bool:
        """The six z-free invariants satisfy the hypersurface relation."""
        ambient6 = VariableSet(IMAGE_NAMES_6)
        rel = ambient6.poly(Y0_RELATION)
        images = self._image_substitution(ambient6)
        return rel.substitute(images, self.ring).is_zero()

    def _image_substitution(self, source: VariableSet) -> dict[str, Polynomial]:
        mapping = {
            "X1": self.ring.variable("x1"),
            "X2": self.ring.variable("x2"),
            "X3": self.ring.variable("x3"),
            "U12": self.u12,
            "U13": self.u13,
            "U23": self.u23,
            "B1": self.beta(1, 1),
            "B2": self.beta(2, 1),
            "B3": self.beta(3, 1),
        }
        return {name: mapping[name] for name in source.names}

    def y1_ideal_check(self) -> VerificationReport:
        """The five relations vanish under substitution of the nine invariants."""
        checker = Checker(
            "roberts.y1",
            "five relations among (x_i, u_jk, beta_i1) substitute to zero",
        )
        ambient9 = VariableSet(IMAGE_NAMES_9)
        images = self._image_substitution(ambient9)
        for idx, text in enumerate(Y1_GENERATORS, start=1):
            g = _parse_with_products(ambient9, text)
            residue = g.substitute(images, self.ring)
            checker.require(
                residue.is_zero(),
                {"generator": idx, "text": text, "residue": str(residue)},
            )
        checker.require(
            self.y0_relation_check(),
            {"relation": Y0_RELATION, "residue": "nonzero"},
        )
        return checker.report()

    def verify_beta_form(self, i: int, n: int) -> VerificationReport:
        """The displayed coefficients of beta(i, n): 1, -n, binom(n, 2)."""
        checker = Checker(
            f"roberts.beta_form.{i}.{n}",
            "beta(i,n) = x_i z^n - n x_j^2 x_k^2 y_i z^(n-1) "
            "+ binom(n,2)(...) z^(n-2) + lower z-degree",
            {"i": i, "n": n},
        )
        b = self.beta(i, n)
        z_index = self.ring.index("z")
        lt_mono, lt_coef = b.leading_term()
        expected_lt = Monomial(((self.ring.index(f"x{i}"), 1), (z_index, n)))
        checker.require(
            lt_mono == expected_lt and lt_coef == 1,
            {"leading_term": str(b), "expected": f"x{i}*z^{n}"},
        )
        md = self.weights.multidegree(b)
        checker.require(
            md == self.beta_degree(i, n),
            {"multidegree": md, "expected": self.beta_degree(i, n)},
        )
        targets = self._slice_targets(i, n)
        for t, expected in targets.items():
            observed = self._z_slice(b, t)
            checker.require(
                observed == expected,
                {
                    "z_exponent": t,
                    "observed": str(observed),
                    "expected": str(expected),
                },
            )
        return checker.report()

    def _z_slice(self, f: Polynomial, t: int) -> Polynomial:
        """Coefficient of z^t in f, as a polynomial in the x and y variables."""
        z_index = self.ring.index("z")
        terms = {}
        for m, c in f.terms():
            if m.exponent(z_index) == t:
                terms[m.divide(Monomial(((z_index, t),)) if t else Monomial(()))] = c
        return Polynomial(self.ring, terms)

    def sagbi_family_checks(self, N: int) -> VerificationReport:
        """Leading terms of the three relation families among the S_N products.

        The observed leading terms must match the closed forms:
        the cubic family gives -x1^3 x3^3 y2 z^(n+m+k); the mixed quadratic
        family gives (n-n') x1^3 x3^2 y2 z^(n+m-1); the equal-index family
        gives (n m - n' m') x1^6 x2 x3 y2 y3 z^(n+m-2).
        """
        checker = Checker(
            f"roberts.sagbi_families.{N}",
            "observed leading terms of the relation families match the "
            "closed-form coefficients",
            {"N": N},
        )
        R = self.ring
        beta = self.beta

        def lt_is(diff: Polynomial, coef: Fraction, text: str, ctx: dict) -> None:
            if coef == 0:
                checker.require(diff.is_zero(), {**ctx, "expected": "zero"})
                return
            expected = R.poly(text).scale(coef)
            m, c = diff.leading_term()
            em, ec = expected.leading_term()
            checker.require(
                (m, c) == (em, ec),
                {**ctx, "observed": str(Polynomial(R, {m: c})), "expected": str(expected)},
            )

        # cubic family: b1n b1m b1k u23 vs b2n b2m b2k u13
        for n in range(N + 1):
            for m in range(n, N + 1):
                for k in range(m, N + 1):
                    diff = (
                        beta(1, n) * beta(1, m) * beta(1, k) * self.u23
                        - beta(2, n) * beta(2, m) * beta(2, k) * self.u13
                    )
                    lt_is(
                        diff,
                        Fraction(-1),
                        f"x1^3*x3^3*y2*z^{n + m + k}" if n + m + k else "x1^3*x3^3*y2",
                        {"family": "cubic", "nmk": (n, m, k)},
                    )
        # mixed quadratic family: b1n b2m vs b1n' b2m'
        for n in range(N + 1):
            for m in range(N + 1):
                for np in range(n + 1, N + 1):
                    mp = n + m - np
                    if not 0 <= mp <= N:
                        continue
                    diff = beta(1, n) * beta(2, m) - beta(1, np) * beta(2, mp)
                    zdeg = n + m - 1
                    lt_is(
                        diff,
                        Fraction(n - np),
                        f"x1^3*x3^2*y2*z^{zdeg}" if zdeg else "x1^3*x3^2*y2",
                        {"family": "mixed", "pairs": ((n, m), (np, mp))},
                    )
        # equal-index family: b1n b1m vs b1n' b1m'
        seen = set()
        for n in range(N + 1):
            for m in range(n, N + 1):
                for np in range(N + 1):
                    mp = n + m - np
                    if not np <= mp <= N:
                        continue
                    if {n, m} == {np, mp}:
                        continue
                    key = ((n, m), (np, mp))
                    if key in seen or (key[1], key[0]) in seen:
                        continue
                    seen.add(key)
                    diff = beta(1, n) * beta(1, m) - beta(1, np) * beta(1, mp)
                    zdeg = n + m - 2
                    lt_is(
                        diff,
                        Fraction(n * m - np * mp),
                        f"x1^6*x2*x3*y2*y3*z^{zdeg}" if zdeg else "x1^6*x2*x3*y2*y3",
                        {"family": "equal-index", "pairs": ((n, m), (np, mp))},
                    )
        return checker.report()

    def an_lemma_checks(
        self,
        N: int,
        degree_bound: int = 8,
        a0_factor_bound: int = 2,
        reverse_bound: int = 3,
        max_steps: int = 10_000,
    ) -> VerificationReport:
        """The three finiteness lemmas for the chain A_N.

        (a) every invariant of z-degree <= N (swept over multidegrees with
            components <= degree_bound) subducts to zero against S_N;
        (b) x_i * beta(j, N+1) - beta(i, 1) * beta(j, N) has matching leading
            terms, z-degree <= N, and subducts to zero against S_N;
        (c) forward: (x_i * g) * beta(j, N+1) subducts into S_N for g in a
            bounded spanning set of products of the z-free generators;
            reverse: for pure u-products f, LT(f) * x_i z^(N+1) has no
            factorization over LT(S_N), so f is outside the conductor.

        Parts (b) and (c) need N >= 1: the comparison products use
        beta(i, 1), which only lies in A_N from level 1 on.
        """
        checker = Checker(
            f"roberts.an_lemma.{N}",
            "conductor chain: z-degree filtration, (x)A_(N+1) in A_N, "
            "conductor meets A_0 in (x)A_0",
            {
                "N": N,
                "degree_bound": degree_bound,
                "a0_factor_bound": a0_factor_bound,
                "reverse_bound": reverse_bound,
            },
        )
        G = self.catalog(N)
        z_index = self.ring.index("z")

        # (a) sweep of graded invariants with z-degree <= N
        swept = 0
        for degree in _degree_box(degree_bound):
            for f in self.graded_invariants_z_capped(degree, N):
                swept += 1
                cert = subduct(f, G, max_steps)
                checker.require(
                    cert.ok,
                    {
                        "part": "a",
                        "degree": degree,
                        "poly": str(f),
                        "remainder": str(cert.remainder),
                    },
                )
        checker.note(f"part (a): {swept} invariants subducted over S_{N}")

        if N == 0:
            checker.note("parts (b), (c) skipped: they require N >= 1")
            return checker.report()

        # (b) x_i beta(j, N+1) vs beta(i,1) beta(j, N)
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                p = self.ring.variable(f"x{i}") * self.beta(j, N + 1)
                q = self.beta(i, 1) * self.beta(j, N)
                checker.require(
                    p.leading_term() == q.leading_term(),
                    {"part": "b", "i": i, "j": j, "detail": "leading terms differ"},
                )
                diff = p - q
                checker.require(
                    diff.is_zero() or diff.max_exponent("z") <= N,
                    {"part": "b", "i": i, "j": j, "detail": "z-degree too high"},
                )
                cert = subduct(diff, G, max_steps)
                checker.require(
                    cert.ok,
                    {"part": "b", "i": i, "j": j, "remainder": str(cert.remainder)},
                )
        checker.note("part (b): 9 comparison products subducted")

        # (c) forward: elements of (x)A_0 stay in the conductor
        a0_products = list(self._a0_products(a0_factor_bound))
        forward = 0
        for g in a0_products:
            for i in (1, 2, 3):
                xg = self.ring.variable(f"x{i}") * g
                for j in (1, 2, 3):
                    cert = subduct(xg * self.beta(j, N + 1), G, max_steps)
                    forward += 1
                    checker.require(
                        cert.ok,
                        {
                            "part": "c-forward",
                            "i": i,
                            "j": j,
                            "g": str(g),
                            "remainder": str(cert.remainder),
                        },
                    )
        checker.note(f"part (c) forward: {forward} products subducted")

        # (c) reverse: pure u-products are not in the conductor
        reverse = 0
        for f in self._pure_u_products(reverse_bound):
            lt = f.leading_monomial()
            for i in (1, 2, 3):
                target = lt * Monomial(
                    ((self.ring.index(f"x{i}"), 1), (z_index, N + 1))
                )
                reverse += 1
                checker.require(
                    monomial_algebra_member(target, G) is None,
                    {
                        "part": "c-reverse",
                        "i": i,
                        "u_product": str(f),
                        "detail": "leading term unexpectedly factorizes",
                    },
                )
        checker.note(f"part (c) reverse: {reverse} leading terms checked")
        return checker.report()

    def _a0_products(self, max_factors: int) -> Iterable[Polynomial]:
        gens = [
            self.ring.variable("x1"),
            self.ring.variable("x2"),
            self.ring.variable("x3"),
            self.u12,
            self.u13,
            self.u23,
        ]
        out = [self.ring.one()]
        frontier = [self.ring.one()]
        for _ in range(max_factors):
            frontier = [f * g for f in frontier for g in gens]
            # deduplicate by string form (products commute)
            seen = {str(f) for f in out}
            for f in frontier:
                s = str(f)
                if s not in seen:
                    seen.add(s)
                    out.append(f)
        return out

    def _pure_u_products(self, max_factors: int) -> Iterable[Polynomial]:
        us = [self.u12, self.u13, self.u23]
        for a in range(max_factors + 1):
            for b in range(max_factors + 1 - a):
                for c in range(max_factors + 1 - a - b):
                    if a + b + c == 0:
                        continue
                    yield us[0] ** a * us[1] ** b * us[2] ** c

    def offdiagonal_degree_check(self, f: Polynomial) -> bool:
        """Is the multidegree of f incongruent to (k, k, k) modulo 3?"""
        md = self.weights.multidegree(f)
        if md == INHOMOGENEOUS:
            raise PolyError("polynomial is not multihomogeneous")
        r = [x % 3 for x in md]
        return not (r[0] == r[1] == r[2])

    def square_in_x_ideal(
        self, i: int, n: int, max_steps: int = 10_000
    ) -> SubductionCertificate:
        """Certificate that beta(i, n)^2 lies in (x1, x2, x3) inside k[S].

        The subduction runs against S_(2n), which contains every leading
        term the chain of cancellations can need (z-degrees up to 2n).
        """
        G = self.catalog(max(2 * n, 0))
        square = self.beta(i, n) ** 2
        return x_ideal_membership(square, G, ("x1", "x2", "x3"), max_steps)

    def radical_structure_check(
        self, N: int = 3, degree_bound: int = 6
    ) -> VerificationReport:
        """Structure of the radical of (x1, x2, x3) in the invariant ring.

        (i) the multidegrees of u12, u13, u23 have rank 3, so their images
        stay algebraically independent modulo the radical; (ii) no power of
        a u has a leading-term factorization using a bare x_j, so the u's
        stay outside the radical; (iii) each beta(i, n), n >= 1, has its
        square certified inside (x1, x2, x3).
        """
        checker = Checker(
            "roberts.radical",
            "radical of (x)A: u's independent and outside, beta squares inside",
            {"N": N, "degree_bound": degree_bound},
        )
        mds = [
            list(self.weights.multidegree(u)) for u in (self.u12, self.u13, self.u23)
        ]
        checker.require(
            linalg.rank(mds) == 3,
            {"part": "independence", "multidegrees": mds},
        )
        checker.note(f"u multidegree determinant: {linalg.det3(mds)}")
        G0 = self.catalog(0)
        for name, u in (("u12", self.u12), ("u13", self.u13), ("u23", self.u23)):
            lt = u.leading_monomial()
            for k in range(1, degree_bound + 1):
                power_lt = (u**k).leading_monomial()
                lt_k = lt
                for _ in range(k - 1):
                    lt_k = lt_k * lt
                checker.require(
                    power_lt == lt_k,
                    {"part": "lt-power", "u": name, "k": k},
                )
                for j in (1, 2, 3):
                    xj = Monomial(((self.ring.index(f"x{j}"), 1),))
                    if not xj.divides(power_lt):
                        continue
                    checker.require(
                        monomial_algebra_member(power_lt.divide(xj), G0) is None,
                        {
                            "part": "x-factor-free",
                            "u": name,
                            "k": k,
                            "x": j,
                            "detail": "factorization with a bare x factor exists",
                        },
                    )
        squares = 0
        for i in (1, 2, 3):
            for n in range(1, N + 1):
                checker.require(
                    self.offdiagonal_degree_check(self.beta(i, n)),
                    {"part": "degree-hypothesis", "i": i, "n": n},
                )
                cert = self.square_in_x_ideal(i, n)
                squares += 1
                checker.require(
                    cert.ok,
                    {
                        "part": "square",
                        "i": i,
                        "n": n,
                        "remainder": str(cert.remainder),
                        "stuck": str(cert.stuck),
                    },
                )
        checker.note(f"beta squares certified in (x1,x2,x3): {squares}")
        return checker.report()

    def fixed_point_collapse(self, N: int = 4) -> bool:
        """Every S_N generator restricts to a constant on x1 = x2 = x3 = 0.

        All the non-constant invariants vanish there, so the quotient map
        sends the whole fixed-point locus to the image of the origin.
        """
        R = self.ring
        zero_x = {
            name: (R.zero() if name.startswith("x") else R.variable(name))
            for name in R.names
        }
        G = self.catalog(N)
        for name in G.names:
            restricted = G.polys[name].substitute(zero_x, R)
            if not restricted.is_constant():
                return False
        return True


def _degree_box(bound: int) -> Iterable[tuple[int, int, int]]:
    for d1 in range(bound + 1):
        for d2 in range(bound + 1):
            for d3 in range(bound + 1):
                if d1 or d2 or d3:
                    yield (d1, d2, d3)


_SHARED: RobertsAction | None = None


def roberts_action() -> RobertsAction:
    """Shared instance; the beta/catalog caches are append-only."""
    global _SHARED
    if _SHARED is None:
        _SHARED = RobertsAction()
    return _SHARED
