"""Surfaces, generator alphabets, words and the homology representation.

A surface N with genus g, s boundary components and n punctures carries
a mapping class group in three flavors: "pm+" (punctures fixed, local
orientation preserved at every puncture), "pmk" (punctures fixed, local
orientation preserved at the first k) and "m" (punctures may be
permuted).  The group acts on H_1(N; Z), a free module of rank
d = g+s+n-1 with basis xi_1..xi_d consisting of the one-sided classes
gamma_1..gamma_g followed by the boundary/puncture classes
delta_1..delta_{s+n-1}.
"""

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import SpecInvalid, UnknownDerived, UnknownLetter
from .intlin import IntMatrix

FLAVORS = ("pm+", "pmk", "m")

# Generator kinds whose mapping classes fix every puncture and preserve
# all local orientations; the "pm+" alphabet consists of exactly these.
PMPLUS_KINDS = frozenset("auedb")


class Gen(NamedTuple):
    """A generator symbol: a crosscap-chain twist a_j, the crosscap
    transposition u_1, a boundary-chain twist e_j, a boundary-parallel
    twist d_j, the extra twist b_1, a puncture slide v_j, or an
    elementary braid s_j."""

    kind: str
    index: int

    @property
    def name(self):
        return "%s%d" % (self.kind, self.index)


@dataclass(frozen=True)
class SurfaceSpec:
    """The tuple (g, s, n, k, flavor) selecting a surface and a group."""

    g: int
    s: int
    n: int
    k: int = 0
    flavor: str = "pm+"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise SpecInvalid("unknown flavor %r" % (self.flavor,))
        if self.g < 3:
            raise SpecInvalid("genus must be at least 3")
        if self.s < 0 or self.n < 0:
            raise SpecInvalid("boundary and puncture counts must be non-negative")
        if not 0 <= self.k <= self.n:
            raise SpecInvalid("k must satisfy 0 <= k <= n")
        if self.flavor == "pm+" and self.k != self.n:
            raise SpecInvalid("flavor pm+ preserves orientation at all punctures (k = n)")
        if self.flavor == "m" and self.n < 2:
            raise SpecInvalid("flavor m needs at least 2 punctures")

    @classmethod
    def make(cls, g, s, n, k=None, flavor="pm+"):
        """Build a spec, defaulting k to the flavor's natural value."""
        if k is None:
            k = n if flavor == "pm+" else 0
        return cls(g, s, n, k, flavor)

    @property
    def d(self):
        """Rank of H_1 of the surface."""
        return self.g + self.s + self.n - 1

    def require_free_module(self):
        """The pipeline needs H_1 of the surface to be free (s+n >= 1)."""
        if self.s + self.n < 1:
            raise SpecInvalid("computation requires at least one boundary or puncture")

    def generators(self):
        """The ordered generator alphabet of the selected group."""
        self.require_free_module()
        gens = [Gen("a", j) for j in range(1, self.g)]
        gens.append(Gen("u", 1))
        gens.extend(Gen("e", j) for j in range(1, self.s + self.n))
        if self.g in (3, 4):
            gens.extend(Gen("d", j) for j in range(1, self.s))
        if self.g >= 4:
            gens.append(Gen("b", 1))
        if self.flavor == "pmk":
            gens.extend(Gen("v", j) for j in range(self.k + 1, self.n + 1))
        elif self.flavor == "m":
            gens.append(Gen("v", self.n))
            gens.extend(Gen("s", j) for j in range(1, self.n))
        return gens


_LETTER_RE = re.compile(r"^([audebvs])(\d+)(\^-1)?$")


class Word(tuple):
    """A word in the generator alphabet: a tuple of (Gen, +-1) letters."""

    __slots__ = ()

    @classmethod
    def of(cls, *letters):
        out = []
        for item in letters:
            if isinstance(item, Gen):
                out.append((item, 1))
            else:
                out.append((item[0], item[1]))
        return cls(out)

    @classmethod
    def parse(cls, text):
        """Parse letters like "a1 a2 u1^-1" separated by whitespace."""
        letters = []
        for token in text.split():
            m = _LETTER_RE.match(token)
            if not m:
                raise UnknownLetter("cannot parse letter %r" % token)
            kind, idx, inv = m.groups()
            letters.append((Gen(kind, int(idx)), -1 if inv else 1))
        return cls(letters)

    def __mul__(self, other):
        return Word(tuple(self) + tuple(other))

    def inverse(self):
        return Word((g, -e) for g, e in reversed(self))

    def __pow__(self, m):
        if m < 0:
            return self.inverse() ** (-m)
        return Word(tuple(self) * m)

    def reduced(self):
        """Free reduction: cancel adjacent x x^-1 pairs."""
        out = []
        for g, e in self:
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return Word(out)

    def display(self):
        return " ".join(
            g.name + ("^-1" if e < 0 else "") for g, e in self
        ) or "(empty)"


def derived_word(name, spec):
    """Words for the composite mapping classes used in relations.

    Available names: "u2".."u{g-1}" (higher crosscap transpositions,
    expanded recursively down to the generator u1), "W" (the conjugator
    a_2..a_{g-1} u_{g-1}..u_2), "e0" (which is a_1), and "e{s+n}" (the
    twist about the curve enclosing all crosscaps, W a_1^-1 W^-1).
    """
    g = spec.g
    if name == "e0":
        return Word.of(Gen("a", 1))
    if name == "W":
        w = Word.of(*(Gen("a", j) for j in range(2, g)))
        for j in range(g - 1, 1, -1):
            w = w * derived_word("u%d" % j, spec)
        return w
    if name == "e%d" % (spec.s + spec.n):
        w = derived_word("W", spec)
        return (w * Word.of((Gen("a", 1), -1)) * w.inverse()).reduced()
    m = re.match(r"^u(\d+)$", name)
    if m:
        i = int(m.group(1))
        if 2 <= i <= g - 1:
            ai, aj = Gen("a", i - 1), Gen("a", i)
            inner = derived_word("u%d" % (i - 1), spec) if i > 2 else Word.of(Gen("u", 1))
            return (
                Word.of(ai, aj) * inner.inverse() * Word.of((aj, -1), (ai, -1))
            ).reduced()
    raise UnknownDerived("no derived word %r for this surface" % (name,))


def expand_word(word, spec):
    """Replace derived letters (u_i with i >= 2, e_0, e_{s+n}) by their
    defining words so that only alphabet letters remain."""
    out = []
    for gen, e in word:
        repl = None
        if gen.kind == "u" and gen.index >= 2:
            repl = derived_word("u%d" % gen.index, spec)
        elif gen.kind == "e" and gen.index == 0:
            repl = derived_word("e0", spec)
        elif gen.kind == "e" and gen.index == spec.s + spec.n:
            repl = derived_word("e%d" % gen.index, spec)
        if repl is None:
            out.append((gen, e))
        else:
            out.extend(repl if e > 0 else repl.inverse())
    return Word(out).reduced()


@dataclass
class Representation:
    """The action of the group generators on H_1 of the surface."""

    spec: SurfaceSpec
    matrices: dict
    inverses: dict = field(default_factory=dict)

    @property
    def d(self):
        return self.spec.d

    def psi(self, gen, exponent=1):
        try:
            return self.matrices[gen] if exponent > 0 else self.inverses[gen]
        except KeyError:
            raise UnknownLetter("no matrix for generator %s" % gen.name) from None


def _gamma_delta_matrix(spec, fill):
    d = spec.d
    m = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    fill(m)
    return IntMatrix(m)


def build_representation(spec, sign_variant=None):
    """Matrices of all generators of the given group.

    `sign_variant` deliberately flips one sign to exercise the
    consistency checks: "e" flips the third delta coefficient in the
    first column of every e_j with j >= 3, "s" flips the delta_1
    coefficient inside the last elementary braid.  Both variants break
    the boundary-map consistency verified by `chains` and `cli verify`.
    """
    spec.require_free_module()
    if sign_variant not in (None, "e", "s"):
        raise ValueError("sign_variant must be None, 'e' or 's'")
    g, s, n, d = spec.g, spec.s, spec.n, spec.d
    mats = {}
    for gen in spec.generators():
        kind, j = gen

        def fill(m, kind=kind, j=j):
            if kind == "a":
                m[j - 1][j - 1] = 0
                m[j - 1][j] = 1
                m[j][j - 1] = -1
                m[j][j] = 2
            elif kind == "u":
                m[0][0] = m[1][1] = 0
                m[0][1] = m[1][0] = 1
            elif kind == "b":
                for r in range(4):
                    for c in range(4):
                        m[r][c] += 1 if c % 2 else -1
            elif kind == "e":
                m[0][0] = 0
                m[1][0] = -1
                m[0][1] = 1
                m[1][1] = 2
                for t in range(1, j + 1):
                    m[g + t - 1][0] = -1
                    m[g + t - 1][1] = 1
                if sign_variant == "e" and j >= 3:
                    m[g + 2][0] = 1
            elif kind == "d":
                pass
            elif kind == "s":
                if j < n - 1:
                    p = g + s + j - 1
                    m[p][p] = m[p + 1][p + 1] = 0
                    m[p][p + 1] = m[p + 1][p] = 1
                else:
                    for r in range(g):
                        m[r][d - 1] = -2
                    for r in range(g, d):
                        m[r][d - 1] = -1
                    if sign_variant == "s" and d - 1 > g:
                        m[g][d - 1] = 1
            elif kind == "v":
                if j < n:
                    p = g + s + j - 1
                    m[p][p] = -1
                    m[p][g - 1] = 1
                else:
                    for r in range(g):
                        m[r][g - 1] = -2
                    for r in range(g, d):
                        m[r][g - 1] = -1
                    m[g - 1][g - 1] = -1

        mats[gen] = _gamma_delta_matrix(spec, fill)
    rep = Representation(spec, mats)
    rep.inverses = {gen: mat.inverse() for gen, mat in mats.items()}
    return rep


def evaluate_word(rep, word):
    """The matrix of a word: product of generator matrices left to right,
    after expanding derived letters."""
    out = IntMatrix.identity(rep.d)
    for gen, e in expand_word(word, rep.spec):
        out = out @ rep.psi(gen, e)
    return out
