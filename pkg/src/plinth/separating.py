"""Point-level separation semantics for additive-group flows.

A finite set of invariants separates a pair of rational points when some
generator evaluates differently on them.  For pairs that no generator
tells apart, the group element moving one point to the other is recovered
exactly by solving the univariate flow equations over the rationals.
Sampling drivers check that "unseparated" means "same orbit" away from the
plinth locus, and compare the verdicts of two generator sets.

All sampling is seeded; identical inputs and seed give identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .derivation import Derivation
from .polyring import PolyError, Polynomial
from .report import Checker, VerificationReport
from .sagbi import GeneratorSet

Point = dict[str, Fraction]


def make_point(ambient_names: Sequence[str], values: Sequence[Fraction | int]) -> Point:
    if len(ambient_names) != len(values):
        raise PolyError("coordinate count mismatch")
    return {name: Fraction(v) for name, v in zip(ambient_names, values)}


def point_text(point: Mapping[str, Fraction]) -> str:
    """Comma-separated rational coordinates in ambient order."""
    return ",".join(str(point[name]) for name in point)


def parse_point(ambient_names: Sequence[str], text: str) -> Point:
    """Inverse of point_text: comma-separated rationals in ambient order."""
    return make_point(ambient_names, [Fraction(part) for part in text.split(",")])


@dataclass
class SeparationReport:
    """Outcome of evaluating a generator set on a pair of points."""

    v: Point
    v_prime: Point
    generator_set: str
    agreeing: list[str] = field(default_factory=list)
    witness: str | None = None

    @property
    def separated(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> str:
        return "separated" if self.separated else "not separated"


def separates(
    v: Mapping[str, Fraction | int],
    v_prime: Mapping[str, Fraction | int],
    G: GeneratorSet,
    label: str = "G",
) -> SeparationReport:
    """Evaluate every generator at both points; first disagreement decides."""
    pv = {name: Fraction(v[name]) for name in G.ambient.names}
    pw = {name: Fraction(v_prime[name]) for name in G.ambient.names}
    report = SeparationReport(pv, pw, label)
    for name in G.names:
        g = G.polys[name]
        if g.evaluate(pv) != g.evaluate(pw):
            report.witness = name
            return report
        report.agreeing.append(name)
    return report


# -- exact univariate root finding for the flow equations -------------------


def _univariate_coeffs(f: Polynomial, param: str) -> list[Fraction]:
    """Coefficients [c_0, c_1, ...] of a polynomial univariate in ``param``."""
    idx = f.ambient.index(param)
    coeffs: dict[int, Fraction] = {}
    for m, c in f.terms():
        exps = m.exponent_map()
        rest = {k: e for k, e in exps.items() if k != idx and e}
        if rest:
            raise PolyError("polynomial is not univariate in the parameter")
        coeffs[exps.get(idx, 0)] = c
    if not coeffs:
        return []
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return out


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    while len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = [c for c in a]
    b = [c for c in b]
    while b:
        a, b = b, _poly_mod(a, b)
        while b and b[-1] == 0:
            b.pop()
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _derivative(a: list[Fraction]) -> list[Fraction]:
    return [a[i] * i for i in range(1, len(a))]


def _rational_roots(a: list[Fraction]) -> list[Fraction]:
    """All rational roots of a nonzero univariate polynomial."""
    while a and a[-1] == 0:
        a.pop()
    if len(a) <= 1:
        return []
    # make squarefree, then integer coefficients
    g = _poly_gcd(a, _derivative(a))
    if len(g) > 1:
        sf: list[Fraction] = []
        rem = list(a)
        # divide a by g exactly
        q: list[Fraction] = [Fraction(0)] * (len(a) - len(g) + 1)
        while len(rem) >= len(g) and any(rem):
            factor = rem[-1] / g[-1]
            q[len(rem) - len(g)] = factor
            shift = len(rem) - len(g)
            for i, c in enumerate(g):
                rem[i + shift] -= factor * c
            while rem and rem[-1] == 0:
                rem.pop()
        a = q
    lcm = 1
    for c in a:
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    ints = [int(c * lcm) for c in a]
    k = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        k += 1
    roots: set[Fraction] = set()
    if k > 0:
        roots.add(Fraction(0))
    if len(ints) > 1:
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _eval_coeffs(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _eval_coeffs(coeffs: Sequence[int | Fraction], s: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * s + c
    return total


def solve_group_element(
    v: Mapping[str, Fraction | int],
    v_prime: Mapping[str, Fraction | int],
    D: Derivation,
) -> Fraction | None:
    """The exact group parameter s with flow_s(v) = v', if one exists.

    Substitutes v into the symbolic coordinate flows, leaving univariate
    polynomial equations in s, and intersects their rational roots.  A
    fixed point paired with itself returns 0 (stabilizer convention);
    an inconsistent system returns None.
    """
    extended, images = D.flow_images()
    param = extended.names[-1]
    equations: list[list[Fraction]] = []
    for name in D.ambient.names:
        values = {n: Fraction(v[n]) for n in D.ambient.names}
        values[param] = Fraction(0)
        flow = images[name]
        # substitute the point, keep the parameter symbolic
        subs = {
            n: extended.constant(values[n]) if n != param else extended.variable(param)
            for n in extended.names
        }
        eq = flow.substitute(subs, extended) - extended.constant(
            Fraction(v_prime[name])
        )
        coeffs = _univariate_coeffs(eq, param)
        equations.append(coeffs)
    nonzero = [e for e in equations if e]
    if not nonzero:
        return Fraction(0)  # every s works: v is a fixed point and v' = v
    if any(len(e) == 1 for e in nonzero):
        return None  # some coordinate can never match
    candidates = _rational_roots(min(nonzero, key=len))
    solutions = [
        s for s in candidates if all(_eval_coeffs(e, s) == 0 for e in nonzero)
    ]
    if not solutions:
        return None
    return solutions[0]


# -- sampling drivers --------------------------------------------------------


def _default_sampler(rng: random.Random, names: Sequence[str]) -> Point:
    return {name: Fraction(rng.randint(-9, 9)) for name in names}


def graph_vs_separation_sampling(
    D: Derivation,
    G_ref: GeneratorSet,
    trials: int,
    seed: int = 1729,
    plinth_indicator: Callable[[Point], bool] | None = None,
    plinth_sampler: Callable[[random.Random], Point] | None = None,
    plinth_unseparated: bool = False,
    sampler: Callable[[random.Random, Sequence[str]], Point] | None = None,
) -> VerificationReport:
    """Unseparated pairs are orbit pairs away from the plinth locus.

    For sampled pairs: if neither point is in the plinth locus and the
    reference generators do not separate them, a group element moving one
    to the other must exist.  Flow pairs are sampled explicitly and must
    always come back unseparated with a recoverable group element.  When a
    plinth sampler is supplied and ``plinth_unseparated`` is set (the whole
    plinth locus maps to one point, as for the 7-space action), sampled
    plinth pairs must never be separated.
    """
    if trials < 1:
        raise PolyError("trials must be >= 1")
    checker = Checker(
        "separating.graph",
        "unseparated pairs off the plinth locus lie on one orbit",
        {"trials": trials, "seed": seed, "generators": len(G_ref)},
    )
    rng = random.Random(seed)
    sample = sampler or _default_sampler
    names = D.ambient.names
    if plinth_indicator is None:
        plinth_indicator = lambda p: False
    flow_pairs = graph_pairs = plinth_pairs = 0
    for trial in range(trials):
        mode = trial % 3
        v = sample(rng, names)
        if mode == 0:
            s = Fraction(rng.randint(-9, 9))
            vp = D.flow_point(v, s)
            flow_pairs += 1
            rep = separates(v, vp, G_ref)
            checker.require(
                not rep.separated,
                {"mode": "flow", "s": str(s), "witness": rep.witness},
            )
            solved = solve_group_element(v, vp, D)
            checker.require(
                solved is not None,
                {"mode": "flow", "detail": "no group element for a flow pair"},
            )
        elif mode == 1:
            vp = sample(rng, names)
            rep = separates(v, vp, G_ref)
            if not rep.separated and not plinth_indicator(v) and not plinth_indicator(vp):
                graph_pairs += 1
                solved = solve_group_element(v, vp, D)
                checker.require(
                    solved is not None,
                    {
                        "mode": "random",
                        "v": point_text(v),
                        "vp": point_text(vp),
                        "detail": "unseparated non-plinth pair off the orbit",
                    },
                )
        elif plinth_sampler is not None:
            v = plinth_sampler(rng)
            vp = plinth_sampler(rng)
            plinth_pairs += 1
            if plinth_unseparated:
                rep = separates(v, vp, G_ref)
                checker.require(
                    not rep.separated,
                    {
                        "mode": "plinth",
                        "v": point_text(v),
                        "vp": point_text(vp),
                        "witness": rep.witness,
                    },
                )
    checker.note(
        f"flow pairs: {flow_pairs}, unseparated random pairs resolved: "
        f"{graph_pairs}, plinth pairs: {plinth_pairs}"
    )
    return checker.report()


def separating_set_equivalence(
    G_small: GeneratorSet,
    G_big: GeneratorSet,
    D: Derivation,
    trials: int,
    seed: int = 1729,
    sampler: Callable[[random.Random, Sequence[str]], Point] | None = None,
) -> VerificationReport:
    """Two invariant generator sets give the same separation verdicts.

    Both sets must consist of flow invariants.  Sampled pairs mix random
    pairs, flow pairs, and near-flow perturbations; any disagreement of
    verdicts is reported with the witnessing generator.
    """
    if trials < 1:
        raise PolyError("trials must be >= 1")
    for label, G in (("small", G_small), ("big", G_big)):
        for name in G.names:
            if not D.apply(G.polys[name]).is_zero():
                raise PolyError(f"generator {name!r} of the {label} set is not invariant")
    checker = Checker(
        "separating.equivalence",
        "the two generator sets separate exactly the same sampled pairs",
        {
            "trials": trials,
            "seed": seed,
            "small": len(G_small),
            "big": len(G_big),
        },
    )
    rng = random.Random(seed)
    sample = sampler or _default_sampler
    names = D.ambient.names
    disagreements = 0
    for trial in range(trials):
        mode = trial % 3
        v = sample(rng, names)
        if mode == 0:
            vp = sample(rng, names)
        elif mode == 1:
            vp = D.flow_point(v, Fraction(rng.randint(-9, 9)))
        else:
            vp = dict(v)
            name = names[rng.randrange(len(names))]
            vp[name] = vp[name] + Fraction(rng.randint(1, 5))
        small = separates(v, vp, G_small, "small")
        big = separates(v, vp, G_big, "big")
        if small.separated != big.separated:
            disagreements += 1
            checker.require(
                False,
                {
                    "trial": trial,
                    "v": point_text(small.v),
                    "vp": point_text(small.v_prime),
                    "small": small.verdict,
                    "big": big.verdict,
                    "witness": small.witness or big.witness,
                },
            )
    checker.note(f"verdicts agreed on {trials - disagreements} of {trials} pairs")
    return checker.report()
