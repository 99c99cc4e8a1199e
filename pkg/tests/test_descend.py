"""Descendant variables, Schur Q-functions, graded dimensions."""

import random
from fractions import Fraction

import pytest

from qtft.exactalg import Polynomial
from qtft.descend import (
    DescendantVariable,
    LNGenerator,
    ProfileError,
    SchurQElement,
    TargetProfile,
    ZClass,
    ZTerm,
    check_z_degree,
    descendant_variable,
    enumerate_descendants,
    large_phase_dims,
    ln_identify,
    ln_identify_monomial,
    monomial_descendant_degree,
    parse_descendant_poly,
    partitions,
    render_descendant_poly,
    render_ln_monomial,
    schur_q,
    schur_q_coproduct,
    schur_q_two_alphabet,
    small_phase_specialize,
    strict_partitions,
)

POINT = TargetProfile.point()
SURFACE = TargetProfile(degrees=(0, 2), rank=1, c1=(1,), dim=1)


# -- profiles and variables ----------------------------------------------------


def test_point_profile_enumeration():
    vars6 = enumerate_descendants(POINT, 6)
    assert vars6 == [
        DescendantVariable(0, 0),
        DescendantVariable(1, 0),
        DescendantVariable(2, 0),
        DescendantVariable(3, 0),
    ]
    assert [POINT.variable_degree(v.k, v.i) for v in vars6] == [0, -2, -4, -6]


def test_surface_profile_enumeration():
    vars2 = enumerate_descendants(SURFACE, 2)
    assert DescendantVariable(0, 1) in vars2  # degree 2
    assert DescendantVariable(1, 1) in vars2  # degree 0
    assert all(abs(SURFACE.variable_degree(v.k, v.i)) <= 2 for v in vars2)


def test_bound_zero_keeps_degree_zero_only():
    vars0 = enumerate_descendants(SURFACE, 0)
    assert vars0 == [DescendantVariable(0, 0), DescendantVariable(1, 1)]
    assert all(SURFACE.variable_degree(v.k, v.i) == 0 for v in vars0)


def test_profile_validation():
    with pytest.raises(ProfileError):
        TargetProfile(degrees=())
    with pytest.raises(ProfileError):
        TargetProfile(degrees=(0,), rank=2, c1=(1,))
    with pytest.raises(ProfileError):
        POINT.variable_degree(0, 5)


def test_profile_json_roundtrip():
    back = TargetProfile.from_obj(SURFACE.to_obj())
    assert back == SURFACE


# -- the degree-zero class -------------------------------------------------------


def test_z_degree_check():
    good = ZClass([ZTerm(0, 0, 0), ZTerm(2, 1, -2), ZTerm(1, 0, -2)])
    assert check_z_degree(good, SURFACE)
    assert check_z_degree(ZClass([]), SURFACE)
    bad = ZClass([ZTerm(2, 1, 0)])
    assert not check_z_degree(bad, SURFACE)
    with pytest.raises(ProfileError):
        check_z_degree(ZClass([ZTerm(0, 9, 0)]), SURFACE)


# -- small-phase specialization -----------------------------------------------------


def test_specialize_examples():
    p = parse_descendant_poly("t_{2,1}*t_{0,0}")
    assert small_phase_specialize(p).is_zero()
    q = parse_descendant_poly("t_{3,0}*t_{0,2}")
    assert small_phase_specialize(q) == q
    const = Polynomial.const(Fraction(7, 2))
    assert small_phase_specialize(const) == const


def test_specialize_is_algebra_map():
    rng = random.Random(19)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 4)):
            mono = tuple(
                ((rng.randint(0, 3), rng.randint(0, 2)), rng.randint(1, 2))
                for _ in range(rng.randint(0, 2))
            )
            merged = {}
            for v, e in mono:
                merged[v] = merged.get(v, 0) + e
            terms[tuple(sorted(merged.items()))] = Fraction(rng.randint(-4, 4))
        return Polynomial(terms)

    for _ in range(25):
        p, q = rand_poly(), rand_poly()
        assert small_phase_specialize(p * q) == small_phase_specialize(
            p
        ) * small_phase_specialize(q)
        assert small_phase_specialize(p + q) == small_phase_specialize(
            p
        ) + small_phase_specialize(q)


def test_specialize_kills_exactly_double_positive():
    p = parse_descendant_poly(
        "t_{0,0} + t_{1,0} + t_{0,1} + t_{1,1} + t_{2,3}"
    )
    out = small_phase_specialize(p)
    assert out == parse_descendant_poly("t_{0,0} + t_{1,0} + t_{0,1}")


# -- cobordism generator identification -----------------------------------------------


def test_ln_identify_generators():
    assert ln_identify(POINT, 1) == LNGenerator(1)
    assert ln_identify(POINT, 1).degree == 2
    assert ln_identify(POINT, 0).degree == 0
    assert ln_identify(POINT, 0).name() == "t_0"
    with pytest.raises(ProfileError):
        ln_identify(SURFACE, 1)


def test_ln_identify_monomials():
    mono = (((2, 0), 1), ((3, 0), 1))
    image = ln_identify_monomial(POINT, mono)
    assert render_ln_monomial(image) == "t_2*t_3"
    # degree doubling: descendant levels sum to 5, image degree 10
    assert sum(g.degree * e for g, e in image.items()) == 10
    assert monomial_descendant_degree(POINT, mono) == -10
    with pytest.raises(ProfileError):
        ln_identify_monomial(POINT, (((1, 1), 1),))


def test_ln_identify_injective_on_generators():
    images = {ln_identify(POINT, k) for k in range(10)}
    assert len(images) == 10


# -- Schur Q-functions ------------------------------------------------------------------


def test_q0_and_q1():
    assert schur_q(0, 4) == Polynomial.const(1)
    want = Polynomial.zero()
    for i in range(4):
        want = want + Polynomial.variable(i).scale(2)
    assert schur_q(1, 4) == want


def test_q1_squared():
    assert schur_q(1, 3) * schur_q(1, 3) == schur_q(2, 3).scale(2)


def test_schur_q_stability():
    for r in (1, 2, 3, 4):
        for m in (r, r + 1, r + 2):
            bigger = schur_q(r, m + 1).substitute_zero([m])
            assert bigger == schur_q(r, m)


def test_reciprocal_identity():
    for n in range(1, 8):
        total = Polynomial.zero()
        for r in range(n + 1):
            total = total + (schur_q(r, 5) * schur_q(n - r, 5)).scale((-1) ** (n - r))
        assert total.is_zero()


def test_coproduct_structure():
    assert schur_q_coproduct(0) == [(0, 0)]
    assert schur_q_coproduct(2) == [(0, 2), (1, 1), (2, 0)]


def test_coproduct_against_two_alphabet_expansion():
    for r in range(0, 6):
        lhs = schur_q_two_alphabet(r, 3, 3)
        rhs = Polynomial.zero()
        for i, j in schur_q_coproduct(r):
            rhs = rhs + schur_q(i, 3).rename_variables(
                lambda v: ("x", v)
            ) * schur_q(j, 3).rename_variables(lambda v: ("y", v))
        assert lhs == rhs


def test_coproduct_coassociative():
    for r in range(0, 9):
        left = sorted(
            (i, j, k)
            for i, rest in schur_q_coproduct(r)
            for j, k in schur_q_coproduct(rest)
        )
        right = sorted(
            (i, j, k)
            for rest, k in schur_q_coproduct(r)
            for i, j in schur_q_coproduct(rest)
        )
        assert left == right


# -- partitions and dimensions -------------------------------------------------------


def test_strict_partition_counts():
    counts = [len(strict_partitions(n)) for n in range(11)]
    assert counts == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]
    assert strict_partitions(5) == [(5,), (4, 1), (3, 2)]


def test_partition_counts():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_schur_q_element_basis_validation():
    e = SchurQElement.basis((4, 2, 1))
    assert e.degree() == 7
    with pytest.raises(ValueError):
        SchurQElement.basis((2, 2))
    with pytest.raises(ValueError):
        SchurQElement.basis((1, 3))
    combo = e + SchurQElement.basis((5, 2)).scale(Fraction(1, 2))
    assert combo.degree() == 7
    mixed = e + SchurQElement.basis((3,))
    with pytest.raises(ValueError):
        mixed.degree()
    assert (e - e) == SchurQElement({})


def test_large_phase_dims_point():
    dims = large_phase_dims(POINT, 10)
    assert dims["primitive"] == {
        0: 0, 1: 1, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 1, 8: 0, 9: 1, 10: 0
    }
    assert [dims["hopf"][n] for n in range(11)] == [
        len(strict_partitions(n)) for n in range(11)
    ]


def test_large_phase_dims_rank_two_doubles():
    double = TargetProfile(degrees=(0, 0))
    one = large_phase_dims(POINT, 8)
    two = large_phase_dims(double, 8)
    assert all(
        two["primitive"][d] == 2 * one["primitive"][d] for d in range(9)
    )


def test_large_phase_dims_shifted_class():
    dims = large_phase_dims(SURFACE, 6)
    # z_0 contributes odd degrees 1, 3, 5; z_1 of degree 2 contributes 3, 5
    assert dims["primitive"][1] == 1
    assert dims["primitive"][2] == 0
    assert dims["primitive"][3] == 2
    assert dims["primitive"][5] == 2


# -- text format -------------------------------------------------------------------------


def test_descendant_parse_render_roundtrip():
    for text in (
        "t_{2,1}*t_{0,0} + t_{3,0}",
        "3/2*t_{1,1}^2 - t_{0,0}",
        "-t_{4,0}",
    ):
        p = parse_descendant_poly(text)
        assert parse_descendant_poly(render_descendant_poly(p)) == p


def test_descendant_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_descendant_poly("t_2,1")
    with pytest.raises(ValueError):
        parse_descendant_poly("t_{1}")
    with pytest.raises(ValueError):
        parse_descendant_poly("")
    with pytest.raises(ValueError):
        parse_descendant_poly("t_{-1,0}")


def test_descendant_variable_helper():
    v = descendant_variable(2, 1)
    assert v == Polynomial.variable((2, 1))
