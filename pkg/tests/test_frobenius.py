"""Frobenius-algebra data, validation, the point theory, and Laurent rings."""

import itertools
import random
from fractions import Fraction

import pytest

from qtft.frobenius import (
    FrobeniusData,
    InvalidFrobeniusData,
    associator_partitions,
    dual_numbers,
    group_algebra_z2,
    perturbed_nonassociative,
    quantum_point,
    random_frobenius,
    rescale_iso,
    star_power,
)
from qtft.rings import (
    Frac,
    LaurentPoly,
    LaurentRing,
    NovikovRing,
    RationalRing,
    ring_from_description,
)


# -- Laurent polynomials ---------------------------------------------------------


def test_laurent_arithmetic():
    q = LaurentPoly.gen("q")
    assert (q + 1) * (q - 1) == q * q - 1
    assert q ** -3 * q ** 3 == LaurentPoly.const(1)
    assert (q ** 2 - q) - (q ** 2 - q) == LaurentPoly({})


def test_laurent_exact_div():
    q = LaurentPoly.gen("q")
    num = (q + 1) * (q ** -2 + 3)
    assert num.exact_div(q + 1) == q ** -2 + 3
    assert (q * q - 1).exact_div(q + 1) == q - 1
    assert (q + 2).exact_div(q + 1) is None
    with pytest.raises(ZeroDivisionError):
        q.exact_div(LaurentPoly({}))


def test_laurent_gcd_up_to_units():
    q = LaurentPoly.gen("q")
    a = (q + 1) * (q + 2) * q ** -5
    b = (q + 1) * (q - 1) * q ** 3
    g = a.gcd(b)
    assert a.exact_div(g) is not None and b.exact_div(g) is not None
    assert g == q + 1


def test_laurent_parse_render_roundtrip():
    for text in ("q", "q^-1", "3/2*q^2 + 1 - q^-3", "-q + 5"):
        p = LaurentPoly.parse(text)
        assert LaurentPoly.parse(p.render()) == p


def test_laurent_var_mismatch():
    with pytest.raises(ValueError):
        LaurentPoly.gen("q") + LaurentPoly.gen("v")


# -- ring adapters and fractions -----------------------------------------------------


def test_ring_descriptions_roundtrip():
    for ring in (RationalRing(), LaurentRing("q"), NovikovRing(2, 5)):
        assert ring_from_description(ring.describe()) == ring


def test_frac_cross_equality():
    ring = LaurentRing("q")
    q = ring.gen()
    a = Frac(ring, q * q - 1, q + 1)   # reduces to q - 1
    b = Frac(ring, q - 1)
    assert a == b
    assert a.as_ring_element() == q - 1
    c = Frac(ring, ring.one(), q + 1)
    assert not c.is_integral()
    with pytest.raises(ValueError):
        c.as_ring_element()


def test_frac_monomial_denominators_absorbed():
    ring = LaurentRing("q")
    q = ring.gen()
    a = Frac(ring, q ** 3 + q, q ** 2)
    assert a.is_integral()
    assert a.as_ring_element() == q + q ** -1


def test_novikov_ring_adapter_division():
    ring = NovikovRing(1)
    mono = ring.parse({"rank": 1, "terms": [{"alpha": [2], "v": -1, "c": "3"}]})
    one = ring.one()
    assert ring.exact_div(one, mono) * mono == one
    # non-monomial divisor is not attempted
    assert ring.exact_div(one, one + mono) is None


# -- validation ------------------------------------------------------------------


def test_group_algebra_valid():
    report = group_algebra_z2().validate()
    assert report.passed
    names = [c.name for c in report.checks]
    assert "associativity" in names and "pairing-compatibility" in names


def test_dual_numbers_valid():
    assert dual_numbers().validate().passed


def test_perturbed_fails_with_witness():
    bad = perturbed_nonassociative()
    report = bad.validate(check_unit=False)
    assert not report.passed
    assoc = next(c for c in report.checks if c.name == "associativity")
    assert not assoc.passed
    assert assoc.witness  # names the failing triple


def test_incompatible_pairing_detected():
    # ordinary product semisimple, quantum product projects onto the second
    # coordinate: associative and commutative, but not self-adjoint for b
    ring = RationalRing()
    one, zero = Fraction(1), Fraction(0)
    ordinary = [
        [[one, zero], [zero, zero]],
        [[zero, zero], [zero, one]],
    ]
    quantum = [
        [[zero, zero], [zero, zero]],
        [[zero, zero], [one, zero]],
    ]
    data = FrobeniusData(
        ring, ["e0", "e1"], quantum, trace=[one, one], ordinary=ordinary
    )
    report = data.validate()
    assert not report.passed
    failing = {c.name for c in report.failures()}
    assert failing == {"pairing-compatibility"}


def test_degenerate_pairing_detected():
    ring = RationalRing()
    one, zero = Fraction(1), Fraction(0)
    prod = [[[one, zero], [zero, one]], [[zero, one], [zero, zero]]]
    data = FrobeniusData(
        ring, ["1", "x"], prod, trace=[one, zero], ordinary=prod
    )  # trace of dual numbers picking the 1-part: b is singular
    report = data.validate()
    nondeg = next(c for c in report.checks if c.name == "nondegeneracy")
    assert not nondeg.passed


def test_copairing_inverts_gram():
    rng = random.Random(2)
    for rank in (1, 2, 3):
        data = random_frobenius(rng, rank)
        copair = data.copairing()
        ring = data.ring
        for i in range(rank):
            for k in range(rank):
                total = Frac(ring, ring.zero())
                for j in range(rank):
                    total = total + Frac(ring, data.bilinear[i][j]) * copair[j][k]
                want = Frac(ring, ring.one() if i == k else ring.zero())
                assert total == want


# -- quantum point -----------------------------------------------------------------


def test_quantum_point_axioms():
    qp = quantum_point()
    report = qp.validate()
    assert report.passed  # includes the unit check for q^-1 * 1


def test_quantum_point_products():
    qp = quantum_point()
    q = qp.ring.gen()
    one = [qp.ring.one()]
    assert star_power(qp, one, 2) == [q]
    assert qp.b_pairing(one, one) == qp.ring.one()
    for k in range(1, 11):
        assert star_power(qp, one, k) == [qp.ring.gen(k - 1) if k > 1 else qp.ring.one()]


def test_star_power_validates_input():
    bad = perturbed_nonassociative()
    with pytest.raises(InvalidFrobeniusData):
        star_power(bad, bad.basis_vector(0), 2)
    with pytest.raises(ValueError):
        star_power(quantum_point(), [quantum_point().ring.one()], 0)


def test_rescale_iso():
    qp = quantum_point()
    ring = qp.ring
    one = [ring.one()]
    for g in (1, 2, 3):
        img = rescale_iso(qp, star_power(qp, one, 2 * g))
        assert img == [ring.gen(2 * g)]
    assert rescale_iso(qp, [ring.zero()]) == [ring.zero()]
    rng = random.Random(4)
    for _ in range(10):
        x = [ring.gen(rng.randint(-3, 3), rng.randint(1, 5))]
        y = [ring.gen(rng.randint(-3, 3), rng.randint(1, 5))]
        lhs = rescale_iso(qp, qp.quantum_product(x, y))[0]
        rhs = rescale_iso(qp, x)[0] * rescale_iso(qp, y)[0]
        assert lhs == rhs


def test_rescale_needs_rank_one():
    with pytest.raises(ValueError):
        rescale_iso(group_algebra_z2(), [Fraction(1), Fraction(0)])


# -- associator -----------------------------------------------------------------


def test_associator_quantum_point():
    qp = quantum_point()
    one = [qp.ring.one()]
    vals = associator_partitions(qp, one, one, one, one)
    q2 = Frac(qp.ring, qp.ring.gen(2))
    assert all(v == q2 for v in vals)


def test_associator_agreement_on_valid_data():
    rng = random.Random(8)
    for rank in (1, 2, 3):
        data = random_frobenius(rng, rank)
        for tup in itertools.product(range(rank), repeat=4):
            vals = associator_partitions(
                data, *[data.basis_vector(i) for i in tup]
            )
            assert vals[0] == vals[1] == vals[2]


def test_associator_disagreement_on_broken_data():
    bad = perturbed_nonassociative()
    found = False
    for tup in itertools.product(range(2), repeat=4):
        vals = associator_partitions(bad, *[bad.basis_vector(i) for i in tup])
        if not (vals[0] == vals[1] == vals[2]):
            found = True
            break
    assert found


# -- serialization -----------------------------------------------------------------


def test_frobenius_json_roundtrip():
    for data in (quantum_point(), group_algebra_z2(), dual_numbers(3)):
        back = FrobeniusData.from_json(data.to_json())
        assert back.rank == data.rank
        assert back.quantum == data.quantum
        assert back.bilinear == data.bilinear
        assert back.trace == data.trace
        assert back.validate().passed == data.validate().passed


def test_frobenius_requires_one_pairing_source():
    ring = RationalRing()
    with pytest.raises(ValueError):
        FrobeniusData(ring, ["1"], [[[1]]], trace=[1])
    with pytest.raises(ValueError):
        FrobeniusData(
            ring, ["1"], [[[1]]], trace=[1], bilinear=[[1]], ordinary=[[[1]]]
        )
