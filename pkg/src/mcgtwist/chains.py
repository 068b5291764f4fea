"""Chain level: classes [x] (x) xi_i, the boundary map, relation
rewriting and the cycle lattice.

A chain is a sparse integer vector over the classes [x] (x) xi_i, where
x runs over the generator alphabet and xi_1..xi_d over the module basis.
The class [x] (x) xi_i is written x_{j,i} (so a_{1,3} is [a_1] (x)
gamma_3).  Coordinates are flattened as position(x) * d + (i - 1).
"""

from dataclasses import dataclass

from .errors import NotACycle
from .intlin import ColumnSolver, Echelon, vec_axpy
from .surface import Gen, build_representation, expand_word


class ChainVector(dict):
    """Sparse chain: flat coordinate -> integer coefficient."""

    def add_term(self, flat, coef):
        w = self.get(flat, 0) + coef
        if w:
            self[flat] = w
        elif flat in self:
            del self[flat]

    def scaled(self, c):
        return ChainVector({k: c * v for k, v in self.items()}) if c else ChainVector()

    def __add__(self, other):
        out = ChainVector(self)
        for k, v in other.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other):
        out = ChainVector(self)
        for k, v in other.items():
            out.add_term(k, -v)
        return out


class ChainSpace:
    """The free module on the classes [x] (x) xi_i for one surface spec."""

    def __init__(self, spec, rep=None):
        self.spec = spec
        self.rep = rep if rep is not None else build_representation(spec)
        self.d = spec.d
        self.gens = spec.generators()
        self.gpos = {gen: p for p, gen in enumerate(self.gens)}
        self.dim = len(self.gens) * self.d
        # Boundary columns: the image of [x] (x) xi_i is column i of
        # psi(x)^-1 - I.
        self._bcol = {}
        for gen in self.gens:
            inv = self.rep.psi(gen, -1)
            cols = []
            for i in range(self.d):
                col = {r: inv.data[r][i] for r in range(self.d) if inv.data[r][i]}
                w = col.get(i, 0) - 1
                if w:
                    col[i] = w
                elif i in col:
                    del col[i]
                cols.append(col)
            self._bcol[gen] = cols

    def flat(self, gen, i):
        """Flat coordinate of [gen] (x) xi_i (i is 1-based)."""
        return self.gpos[gen] * self.d + i - 1

    def unflat(self, flat):
        gen = self.gens[flat // self.d]
        return gen, flat % self.d + 1

    def class_name(self, flat):
        gen, i = self.unflat(flat)
        return "%s_{%d,%d}" % (gen.kind, gen.index, i)

    def chain(self, terms):
        """Build a chain from (kind, generator index, basis index, coef)."""
        out = ChainVector()
        for kind, j, i, coef in terms:
            out.add_term(self.flat(Gen(kind, j), i), coef)
        return out

    def format_chain(self, chain):
        parts = []
        for flat in sorted(chain):
            c = chain[flat]
            name = self.class_name(flat)
            if c == 1:
                parts.append("+" + name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append("%+d*%s" % (c, name))
        return " ".join(parts) or "0"


def boundary1(space, chain):
    """The boundary of a chain, as a sparse module vector (0-based rows)."""
    out = {}
    for flat, coef in chain.items():
        gen, i = space.unflat(flat)
        vec_axpy(out, space._bcol[gen][i - 1], coef)
    return out


def expected_boundary(spec, gen, i):
    """Closed-form boundary of the class [gen] (x) xi_i, derived from the
    generator matrices by hand; used to cross-check the built
    representation (0-based rows)."""
    g, s, n = spec.g, spec.s, spec.n
    kind, j = gen
    d = spec.d

    def vec(pairs):
        return {r: c for r, c in pairs if c}

    if kind == "a":
        if i == j:
            return vec([(j - 1, 1), (j, 1)])
        if i == j + 1:
            return vec([(j - 1, -1), (j, -1)])
        return {}
    if kind == "u":
        if i == 1:
            return vec([(0, -1), (1, 1)])
        if i == 2:
            return vec([(0, 1), (1, -1)])
        return {}
    if kind == "b":
        if i in (1, 3):
            return {r: 1 for r in range(4)}
        if i in (2, 4):
            return {r: -1 for r in range(4)}
        return {}
    if kind == "e":
        if i == 1:
            return {0: 1, 1: 1, **{g + t - 1: 1 for t in range(1, j + 1)}}
        if i == 2:
            return {0: -1, 1: -1, **{g + t - 1: -1 for t in range(1, j + 1)}}
        return {}
    if kind == "d":
        return {}
    if kind == "s":
        if j < n - 1:
            p = g + s + j - 1
            if i == g + s + j:
                return {p: -1, p + 1: 1}
            if i == g + s + j + 1:
                return {p: 1, p + 1: -1}
            return {}
        if i == g + s + n - 1:
            out = {r: -2 for r in range(g)}
            out.update({r: -1 for r in range(g, d)})
            out[d - 1] = -2
            return out
        return {}
    if kind == "v":
        if j < n:
            if i == g:
                return {g + s + j - 1: 1}
            if i == g + s + j:
                return {g + s + j - 1: -2}
            return {}
        if i == g:
            out = {r: -2 for r in range(g)}
            out.update({r: -1 for r in range(g, d)})
            return out
        return {}
    raise ValueError("unknown generator kind %r" % kind)


def rewrite_relation(space, lhs, rhs, xi):
    """Homology class of the relation lhs = rhs with coefficient xi_i.

    Each side w = l_1..l_m contributes, for the letter l_t at prefix
    p = l_1..l_{t-1}: +[x] (x) psi(p)^-1 xi if l_t = x, and
    -[x] (x) psi(p l_t)^-1 xi if l_t = x^-1.  The result is
    contribution(lhs) - contribution(rhs); derived letters are expanded
    first.
    """
    out = ChainVector()
    for word, side in ((lhs, 1), (rhs, -1)):
        q = [0] * space.d
        q[xi - 1] = 1
        for gen, e in expand_word(word, space.spec):
            if e > 0:
                for r, c in enumerate(q):
                    if c:
                        out.add_term(space.flat(gen, r + 1), side * c)
                q = space.rep.psi(gen, -1).matvec(q)
            else:
                q = space.rep.psi(gen, 1).matvec(q)
                for r, c in enumerate(q):
                    if c:
                        out.add_term(space.flat(gen, r + 1), -side * c)
    return out


def rewrite_relation_all(space, lhs, rhs):
    """Rewrite a relation over every basis coefficient at once.

    Returns a list of d chains, entry i-1 matching
    rewrite_relation(space, lhs, rhs, i).  One pass over the letters is
    shared by all coefficients: the running matrix Q = psi(prefix)^-1 is
    updated through its few non-identity rows per generator.
    """
    d = space.d
    out = [ChainVector() for _ in range(d)]
    for word, side in ((lhs, 1), (rhs, -1)):
        q = [[1 if r == c else 0 for c in range(d)] for r in range(d)]

        def contribute(gen, sign):
            for r in range(d):
                row = q[r]
                flat = space.flat(gen, r + 1)
                for t in range(d):
                    if row[t]:
                        out[t].add_term(flat, sign * row[t])

        def apply(mat):
            updates = []
            for r in range(d):
                mrow = mat.data[r]
                if any(mrow[c] != (1 if c == r else 0) for c in range(d)):
                    updates.append(
                        (r, [sum(mrow[c] * q[c][t] for c in range(d) if mrow[c])
                             for t in range(d)])
                    )
            for r, row in updates:
                q[r] = row

        for gen, e in expand_word(word, space.spec):
            if e > 0:
                contribute(gen, side)
                apply(space.rep.psi(gen, -1))
            else:
                apply(space.rep.psi(gen, 1))
                contribute(gen, -side)
    return out


@dataclass
class CycleLattice:
    """The lattice of chains with zero boundary, plus labels for basis
    rows that coincide with one of the explicit generator families."""

    echelon: Echelon
    labels: dict

    @property
    def rank(self):
        return self.echelon.rank

    def contains(self, chain):
        return self.echelon.contains(chain)


def cycle_lattice(space):
    """Kernel of the boundary map on the chain space."""
    solver = ColumnSolver(space.d)
    for gen in space.gens:
        for i in range(1, space.d + 1):
            solver.add(space._bcol[gen][i - 1], tag=space.flat(gen, i))
    ech = Echelon(solver.kernel_basis())
    labels = {}
    named = {
        _freeze(vec): label for label, vec in kernel_generator_list(space)
    }
    for pivot, row in ech.pivots.items():
        label = named.get(_freeze(row))
        if label:
            labels[pivot] = label
    return CycleLattice(ech, labels)


def _freeze(vec):
    return frozenset(vec.items())


def _gamma_correction(space):
    """The unique combination of a- and u-classes on the diagonal whose
    boundary is gamma_1 + gamma_2 + 2*gamma_3 + ... + 2*gamma_g."""
    g = space.spec.g
    if g % 2:
        terms = [("u", 1, 1, -1)] + [("a", j, j, 2) for j in range(2, g, 2)]
    else:
        terms = [("a", 1, 1, 1)] + [("a", j, j, 2) for j in range(3, g, 2)]
    return space.chain(terms)


def _e_unit(space, j, coef):
    """The class e_{j,1}, with e_0 standing for a_1."""
    if j == 0:
        return space.chain([("a", 1, 1, coef)])
    return space.chain([("e", j, 1, coef)])


def _vtilde(space, j, i):
    """The cycle-corrected puncture-slide class for v_j and xi_i."""
    spec = space.spec
    g, s, n = spec.g, spec.s, spec.n
    base = space.chain([("v", j, i, 1)])
    if j < n:
        if i == g:
            return base + _e_unit(space, s + j - 1, 1) + _e_unit(space, s + j, -1)
        if i == g + s + j:
            return base + _e_unit(space, s + j - 1, -2) + _e_unit(space, s + j, 2)
        return base
    if i == g:
        return base + _e_unit(space, s + n - 1, 1) + _gamma_correction(space)
    return base


def kernel_generator_list(space):
    """The explicit labeled generating family of the cycle lattice for
    the spec's flavor, as (label, chain) pairs."""
    spec = space.spec
    g, s, n, k, d = spec.g, spec.s, spec.n, spec.k, spec.d
    out = []
    for j in range(1, g):
        for i in range(1, d + 1):
            if i not in (j, j + 1):
                out.append(("K1", space.chain([("a", j, i, 1)])))
        out.append(("K2", space.chain([("a", j, j, 1), ("a", j, j + 1, 1)])))
    for i in range(3, d + 1):
        out.append(("K3", space.chain([("u", 1, i, 1)])))
    out.append(("K4", space.chain([("u", 1, 1, 1), ("u", 1, 2, 1)])))
    for j in range(1, s + n):
        for i in range(3, d + 1):
            out.append(("K5", space.chain([("e", j, i, 1)])))
        out.append(("K6", space.chain([("e", j, 1, 1), ("e", j, 2, 1)])))
    if g in (3, 4):
        for j in range(1, s):
            for i in range(1, d + 1):
                out.append(("K7", space.chain([("d", j, i, 1)])))
    if g >= 4:
        for i in range(5, d + 1):
            out.append(("K8", space.chain([("b", 1, i, 1)])))
        for i in (2, 4):
            out.append(("K9", space.chain([("b", 1, i, 1), ("b", 1, 1, 1)])))
        out.append(("K10", space.chain([("b", 1, 3, 1), ("b", 1, 1, -1)])))
        out.append(
            ("K11", space.chain([("b", 1, 1, 1), ("a", 1, 1, -1), ("a", 3, 3, -1)]))
        )
    vrange = range(k + 1, n + 1) if spec.flavor == "pmk" else (
        (n,) if spec.flavor == "m" else ()
    )
    for j in vrange:
        for i in range(1, d + 1):
            out.append(("K12", _vtilde(space, j, i)))
    if spec.flavor == "m":
        for j in range(1, n):
            for i in range(1, d + 1):
                if i not in (g + s + j, g + s + j + 1):
                    out.append(("K13", space.chain([("s", j, i, 1)])))
            if j < n - 1:
                out.append(
                    (
                        "K14",
                        space.chain(
                            [("s", j, g + s + j, 1), ("s", j, g + s + j + 1, 1)]
                        ),
                    )
                )
                out.append(
                    (
                        "K15",
                        space.chain([("s", j, g + s + j, 1)])
                        + _e_unit(space, s + j - 1, -1)
                        + _e_unit(space, s + j, 2)
                        + _e_unit(space, s + j + 1, -1),
                    )
                )
        out.append(
            (
                "K16",
                space.chain([("s", n - 1, g + s + n - 1, 1)])
                + _e_unit(space, s + n - 1, 2)
                + _e_unit(space, s + n - 2, -1)
                + _gamma_correction(space),
            )
        )
    return out


def require_cycle(space, lattice, chain, what="chain"):
    if not lattice.contains(chain):
        raise NotACycle("%s is not in the cycle lattice: %s" % (what, space.format_chain(chain)))
