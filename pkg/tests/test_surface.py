"""Surface specs, generator alphabets, words and the representation."""

import pytest

from mcgtwist.errors import SpecInvalid, UnknownDerived, UnknownLetter
from mcgtwist.intlin import IntMatrix
from mcgtwist.surface import (
    Gen,
    SurfaceSpec,
    Word,
    build_representation,
    derived_word,
    evaluate_word,
    expand_word,
)

SPECS = [
    SurfaceSpec.make(3, 1, 0),
    SurfaceSpec.make(3, 0, 2, 0, "pmk"),
    SurfaceSpec.make(4, 1, 2, 1, "pmk"),
    SurfaceSpec.make(5, 0, 2, flavor="m"),
    SurfaceSpec.make(7, 2, 3, flavor="m"),
    SurfaceSpec.make(9, 3, 3, 0, "pmk"),
    SurfaceSpec.make(6, 2, 0),
]


class TestSpec:
    def test_validation(self):
        with pytest.raises(SpecInvalid):
            SurfaceSpec.make(2, 1, 0)
        with pytest.raises(SpecInvalid):
            SurfaceSpec.make(3, 0, 2, 3, "pmk")
        with pytest.raises(SpecInvalid):
            SurfaceSpec(3, 0, 2, 1, "pm+")
        with pytest.raises(SpecInvalid):
            SurfaceSpec.make(3, 0, 1, flavor="m")
        with pytest.raises(SpecInvalid):
            SurfaceSpec.make(3, 0, 0).require_free_module()

    def test_dimension(self):
        assert SurfaceSpec.make(3, 1, 0).d == 3
        assert SurfaceSpec.make(9, 3, 3, 0, "pmk").d == 14

    def test_alphabet_pm_plus(self):
        names = [g.name for g in SurfaceSpec.make(3, 1, 2).generators()]
        assert names == ["a1", "a2", "u1", "e1", "e2"]
        names = [g.name for g in SurfaceSpec.make(4, 2, 1).generators()]
        assert names == ["a1", "a2", "a3", "u1", "e1", "e2", "d1", "b1"]

    def test_alphabet_pmk(self):
        names = [g.name for g in SurfaceSpec.make(3, 0, 3, 1, "pmk").generators()]
        assert names == ["a1", "a2", "u1", "e1", "e2", "v2", "v3"]

    def test_alphabet_m(self):
        names = [g.name for g in SurfaceSpec.make(5, 0, 3, flavor="m").generators()]
        assert names == ["a1", "a2", "a3", "a4", "u1", "e1", "e2", "b1",
                         "v3", "s1", "s2"]

    def test_no_d_generators_above_genus_4(self):
        kinds = {g.kind for g in SurfaceSpec.make(5, 3, 1).generators()}
        assert "d" not in kinds


class TestWord:
    def test_parse_display(self):
        w = Word.parse("a1 a2 u1^-1")
        assert w.display() == "a1 a2 u1^-1"
        assert w == Word.of(Gen("a", 1), Gen("a", 2), (Gen("u", 1), -1))

    def test_parse_error(self):
        with pytest.raises(UnknownLetter):
            Word.parse("x7")

    def test_inverse_and_reduction(self):
        w = Word.parse("a1 a2")
        assert (w * w.inverse()).reduced() == Word(())
        assert (w ** -2) == (w ** 2).inverse()

    def test_power(self):
        assert (Word.parse("a1") ** 3).display() == "a1 a1 a1"


@pytest.mark.parametrize("spec", SPECS, ids=str)
class TestRepresentation:
    def test_unimodular_with_exact_inverses(self, spec):
        rep = build_representation(spec)
        ident = IntMatrix.identity(spec.d)
        for gen in spec.generators():
            assert rep.psi(gen).det() in (1, -1)
            assert rep.psi(gen) @ rep.psi(gen, -1) == ident

    def test_involutions(self, spec):
        rep = build_representation(spec)
        ident = IntMatrix.identity(spec.d)
        for gen in spec.generators():
            if gen.kind in "udsv":
                assert rep.psi(gen) @ rep.psi(gen) == ident


def test_a_matrix_values():
    spec = SurfaceSpec.make(3, 1, 0)
    rep = build_representation(spec)
    assert rep.psi(Gen("a", 1)).data == [[0, 1, 0], [-1, 2, 0], [0, 0, 1]]
    assert rep.psi(Gen("u", 1)).data == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]


def test_e_matrix_values():
    spec = SurfaceSpec.make(3, 0, 3, 0, "pmk")
    rep = build_representation(spec)
    m = rep.psi(Gen("e", 2))
    assert m.column(0) == [0, -1, 0, -1, -1]
    assert m.column(1) == [1, 2, 0, 1, 1]
    assert m.column(2) == [0, 0, 1, 0, 0]


def test_derived_words():
    spec = SurfaceSpec.make(5, 1, 0)
    rep = build_representation(spec)
    ident = IntMatrix.identity(spec.d)
    for i in (2, 3, 4):
        u = derived_word("u%d" % i, spec)
        m = evaluate_word(rep, u)
        assert m @ m == ident
    with pytest.raises(UnknownDerived):
        derived_word("u9", spec)
    assert derived_word("e0", spec) == Word.of(Gen("a", 1))


def test_outer_twist_is_conjugate_of_a1():
    spec = SurfaceSpec.make(4, 2, 1)
    rep = build_representation(spec)
    w = derived_word("W", spec)
    e_out = derived_word("e%d" % (spec.s + spec.n), spec)
    lhs = evaluate_word(rep, e_out)
    rhs = (evaluate_word(rep, w)
           @ rep.psi(Gen("a", 1), -1)
           @ evaluate_word(rep, w.inverse()))
    assert lhs == rhs


def test_chain_relation_genus_3():
    spec = SurfaceSpec.make(3, 1, 1)
    rep = build_representation(spec)
    sn = spec.s + spec.n
    lhs = Word.of(Gen("u", 1), Gen("e", sn)) ** 2
    rhs = Word.of(Gen("a", 1), Gen("a", 2)) ** 6
    assert evaluate_word(rep, lhs) == evaluate_word(rep, rhs)


def test_lantern_relation():
    spec = SurfaceSpec.make(4, 1, 3, flavor="m")
    rep = build_representation(spec)
    s = spec.s
    for j in range(1, spec.n):
        lhs = Word.of(Gen("e", s + j - 1), Gen("e", s + j + 1), Gen("s", j))
        rhs = (Word.of(Gen("e", s + j)) * Word.of(Gen("s", j)) ** 3
               * Word.of(Gen("e", s + j)))
        assert evaluate_word(rep, lhs) == evaluate_word(rep, rhs)


def test_expand_word_leaves_alphabet_letters():
    spec = SurfaceSpec.make(5, 0, 1)
    expanded = expand_word(Word.parse("a1 u2 e1"), spec)
    assert all(g.kind != "u" or g.index == 1 for g, _ in expanded)


def test_sign_variant_breaks_braid_involution_checks():
    # The deliberately flipped braid sign keeps the matrix invertible
    # but is caught by the boundary consistency checks in `chains`.
    spec = SurfaceSpec.make(5, 1, 3, flavor="m")
    good = build_representation(spec)
    bad = build_representation(spec, sign_variant="s")
    last = Gen("s", spec.n - 1)
    assert good.psi(last) != bad.psi(last)
    with pytest.raises(ValueError):
        build_representation(spec, sign_variant="q")
