"""Chain level: boundaries, rewriting, and the cycle lattice."""

import pytest

from mcgtwist.chains import (
    ChainSpace,
    ChainVector,
    boundary1,
    cycle_lattice,
    expected_boundary,
    kernel_generator_list,
    require_cycle,
    rewrite_relation,
    rewrite_relation_all,
)
from mcgtwist.errors import NotACycle
from mcgtwist.intlin import Echelon
from mcgtwist.surface import Gen, SurfaceSpec, Word, build_representation, expand_word

BOUNDARY_SPECS = [
    SurfaceSpec.make(3, 1, 0),
    SurfaceSpec.make(3, 0, 2, 0, "pmk"),
    SurfaceSpec.make(4, 2, 1, 0, "pmk"),
    SurfaceSpec.make(5, 0, 2, flavor="m"),
    SurfaceSpec.make(6, 1, 3, flavor="m"),
    SurfaceSpec.make(7, 0, 1),
    SurfaceSpec.make(9, 3, 3, 0, "pmk"),
    SurfaceSpec.make(4, 0, 3, 2, "pmk"),
    SurfaceSpec.make(3, 3, 2, flavor="m"),
]

# At least ten specs spanning all flavors, for the lattice equality
# check against the explicit generating family.
LATTICE_SPECS = BOUNDARY_SPECS + [
    SurfaceSpec.make(5, 2, 2, 2, "pm+"),
    SurfaceSpec.make(8, 1, 2, 1, "pmk"),
    SurfaceSpec.make(4, 1, 2, flavor="m"),
]


class TestChainVector:
    def test_add_term_cancels(self):
        v = ChainVector()
        v.add_term(3, 2)
        v.add_term(3, -2)
        assert v == {}

    def test_arithmetic(self):
        a = ChainVector({0: 1, 1: 2})
        b = ChainVector({1: 2, 2: -1})
        assert a + b == {0: 1, 1: 4, 2: -1}
        assert a - b == {0: 1, 2: 1}
        assert a.scaled(3) == {0: 3, 1: 6}
        assert a.scaled(0) == {}


class TestChainSpace:
    def test_flat_roundtrip(self):
        space = ChainSpace(SurfaceSpec.make(4, 1, 2, 0, "pmk"))
        for gen in space.gens:
            for i in range(1, space.d + 1):
                assert space.unflat(space.flat(gen, i)) == (gen, i)

    def test_class_names(self):
        space = ChainSpace(SurfaceSpec.make(3, 1, 0))
        chain = space.chain([("a", 1, 3, 1), ("u", 1, 1, -2)])
        assert space.format_chain(chain) == "+a_{1,3} -2*u_{1,1}"


@pytest.mark.parametrize("spec", BOUNDARY_SPECS, ids=str)
def test_boundary_matches_closed_form(spec):
    space = ChainSpace(spec)
    for gen in space.gens:
        for i in range(1, space.d + 1):
            assert space._bcol[gen][i - 1] == expected_boundary(spec, gen, i), (
                gen, i
            )


def test_sign_variants_break_boundary_consistency():
    # Either deliberately flipped sign must be caught by the closed-form
    # boundary table.
    spec = SurfaceSpec.make(3, 2, 3, flavor="m")
    for variant in ("e", "s"):
        rep = build_representation(spec, sign_variant=variant)
        space = ChainSpace(spec, rep)
        broken = [
            (gen, i)
            for gen in space.gens
            for i in range(1, space.d + 1)
            if space._bcol[gen][i - 1] != expected_boundary(spec, gen, i)
        ]
        assert broken, variant


class TestRewriting:
    def test_two_sum_formula_on_positive_words(self):
        # Direct implementation of the rewriting formula for positive
        # words: letter t contributes [x_t] (x) psi(x_1..x_{t-1})^-1 xi.
        spec = SurfaceSpec.make(4, 1, 1, 0, "pmk")
        space = ChainSpace(spec)
        lhs = Word.parse("a1 a2 u1 e1")
        rhs = Word.parse("e1 a3 a1")
        for xi in range(1, spec.d + 1):
            direct = ChainVector()
            for word, side in ((lhs, 1), (rhs, -1)):
                letters = list(expand_word(word, spec))
                for t, (gen, _) in enumerate(letters):
                    q = [0] * spec.d
                    q[xi - 1] = 1
                    for prev, _ in letters[:t]:
                        q = space.rep.psi(prev, -1).matvec(q)
                    for r, c in enumerate(q):
                        if c:
                            direct.add_term(space.flat(gen, r + 1), side * c)
            assert rewrite_relation(space, lhs, rhs, xi) == direct

    def test_all_coefficients_agree_with_single(self):
        spec = SurfaceSpec.make(3, 1, 2, flavor="m")
        space = ChainSpace(spec)
        lhs = Word.parse("e1 s1 a1^-1 u1")
        rhs = Word.parse("a2 v2^-1 e2")
        vecs = rewrite_relation_all(space, lhs, rhs)
        for xi in range(1, spec.d + 1):
            assert vecs[xi - 1] == rewrite_relation(space, lhs, rhs, xi)

    def test_braid_relation_classes(self):
        # The braid relation rewritten at a coefficient beyond the
        # moving strands leaves the difference of the two twist classes.
        spec = SurfaceSpec.make(5, 1, 0)
        space = ChainSpace(spec)
        lhs = Word.parse("a1 a2 a1")
        rhs = Word.parse("a2 a1 a2")
        vec = rewrite_relation(space, lhs, rhs, 5)
        assert vec == space.chain([("a", 1, 5, 1), ("a", 2, 5, -1)])

    def test_relation_vectors_are_cycles(self):
        spec = SurfaceSpec.make(3, 0, 2, 0, "pmk")
        space = ChainSpace(spec)
        lhs = Word.parse("a1 e1")
        rhs = Word.parse("e1 a1")
        for vec in rewrite_relation_all(space, lhs, rhs):
            assert boundary1(space, vec) == {}


@pytest.mark.parametrize("spec", LATTICE_SPECS, ids=str)
def test_cycle_lattice_equals_explicit_family(spec):
    space = ChainSpace(spec)
    lattice = cycle_lattice(space)
    family = kernel_generator_list(space)
    for label, chain in family:
        assert boundary1(space, chain) == {}, label
    listed = Echelon(dict(chain) for _, chain in family)
    assert lattice.echelon.same_lattice(listed)


def test_kernel_rank_small_case():
    # (3,1,0): nine chain classes, boundary rank 3, kernel rank 6.
    space = ChainSpace(SurfaceSpec.make(3, 1, 0))
    assert cycle_lattice(space).rank == 6


def test_require_cycle():
    space = ChainSpace(SurfaceSpec.make(3, 1, 0))
    lattice = cycle_lattice(space)
    require_cycle(space, lattice, space.chain([("a", 1, 3, 1)]))
    with pytest.raises(NotACycle):
        require_cycle(space, lattice, space.chain([("a", 1, 1, 1)]))
