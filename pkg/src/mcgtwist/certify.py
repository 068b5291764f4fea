"""Certified lower bounds and the closed-form expected answers.

Each functional sends a generator to Z_2 (alpha) and a module basis
vector to Z_2 (beta, the parity of the gamma-coordinate sum).  When the
descent conditions hold, the functional is constant on homology classes,
so its values on the named basis give a certified count of independent
Z_2 summands.  The closed-form oracle gives the expected group for any
valid spec; full validation is computed-versus-oracle equality.
"""

from dataclasses import dataclass, field

from .errors import DescentFailed, SpecInvalid
from .intlin import AbelianInvariants
from .surface import Gen


@dataclass
class Functional:
    """A Z_2-valued functional on chains: [x] (x) xi_i maps to
    alpha(x) * beta(i)."""

    name: str
    alpha_map: dict
    gamma_count: int  # beta(i) = 1 exactly for i <= gamma_count

    def alpha(self, gen):
        return self.alpha_map.get(gen, 0)

    def beta(self, i):
        return 1 if i <= self.gamma_count else 0


def functionals_for(spec):
    """The functionals available for a spec's flavor.

    Orientation-behavior at a single puncture ("alpha_j") distinguishes
    each unconstrained puncture slide; with permutable punctures only
    the total orientation-reversal parity ("alpha") and the permutation
    sign ("alpha_prime") descend to the group.
    """
    g, n, k = spec.g, spec.n, spec.k
    if spec.flavor == "pmk":
        return [
            Functional("alpha_%d" % j, {Gen("v", j): 1}, g)
            for j in range(k + 1, n + 1)
        ]
    if spec.flavor == "m":
        return [
            Functional("alpha", {Gen("v", n): 1}, g),
            Functional(
                "alpha_prime", {Gen("s", j): 1 for j in range(1, n)}, g
            ),
        ]
    return []


def functional_value(space, functional, chain):
    """Value of the functional on a chain, in Z_2."""
    total = 0
    for flat, coef in chain.items():
        gen, i = space.unflat(flat)
        total += coef * functional.alpha(gen) * functional.beta(i)
    return total & 1


@dataclass
class DescentReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def descent_check(system, functional):
    """Verify that the functional is well defined on the quotient.

    Needs beta to be invariant under every generator matrix, and the
    functional to vanish on every exact relation vector, every pinned
    partial row, and every ambiguity basis vector.
    """
    space = system.space
    report = DescentReport()
    for gen in space.gens:
        mat = space.rep.psi(gen)
        for c in range(space.d):
            col_parity = sum(
                mat.data[r][c] for r in range(functional.gamma_count)
            ) & 1
            if col_parity != functional.beta(c + 1):
                report.failures.append(
                    "%s: beta not invariant under psi(%s) at xi_%d"
                    % (functional.name, gen.name, c + 1)
                )
                break
    vectors = [(rid, vec) for rid, vec in system.exact]
    vectors += [(p.rid, p.base) for p in system.partials]
    for key, chains in system.ambiguity_chains.items():
        vectors += [("ambiguity:%s" % key, c) for c in chains]
    for rid, vec in vectors:
        if functional_value(space, functional, vec):
            report.failures.append(
                "%s: nonzero on relation %s" % (functional.name, rid)
            )
    return report


def lower_bound(spec, result):
    """Certified lower bound on the number of independent Z_2 summands:
    the GF(2) rank of the functional-by-named-class value matrix."""
    system = result.system
    rows = []
    for functional in functionals_for(spec):
        report = descent_check(system, functional)
        if not report.ok:
            raise DescentFailed("; ".join(report.failures[:3]))
        mask = 0
        for t, (_, chain) in enumerate(result.named_basis):
            if functional_value(system.space, functional, chain):
                mask |= 1 << t
        rows.append(mask)
    rank = 0
    pivots = {}
    for vec in rows:
        while vec:
            p = vec & -vec
            if p not in pivots:
                pivots[p] = vec
                rank += 1
                break
            vec ^= pivots[p]
    return rank


def oracle(spec):
    """The expected invariants, from the closed-form case split."""
    g, s, n, k = spec.g, spec.s, spec.n, spec.k
    if g < 3:
        raise SpecInvalid("genus must be at least 3")
    if spec.flavor in ("pm+", "pmk"):
        if g == 3:
            if s == 0 and k == 0:
                e = 3 + n
            elif s == 0:
                e = 1 + n + k
            else:
                e = n + 3 * s + k
        elif g == 4:
            e = 3 + n - k if s == 0 else 2 + n + s - k
        elif g in (5, 6):
            e = 3 + n - k
        else:
            e = 2 + n - k
    else:
        if n < 2:
            raise SpecInvalid("permutable punctures need n >= 2")
        if g == 3:
            e = 5 if s == 0 else 3 * s + 2
        elif g == 4:
            e = 5 if s == 0 else 4 + s
        elif g in (5, 6):
            e = 5
        else:
            e = 4
    return AbelianInvariants((2,) * e, 0)
