"""Fock-space operators: oscillators, Virasoro, Witt fields, basis change."""

import random
from fractions import Fraction

import pytest

from qtft.exactalg import Polynomial
from qtft.fock import (
    FockPolynomial,
    FourierPolynomial,
    NonScalarDefectError,
    TruncationError,
    apply_oscillator,
    basis_change,
    bracket,
    central_term,
    double_factorial_odd,
    pairing_B,
    parse,
    parse_operator_label,
    render,
    virasoro_L,
    witt_v,
)

N = 16


def T(n, bound=N):
    return FockPolynomial.generator(n, bound)


def t(n, bound=N):
    return FockPolynomial.generator(n, bound, basis="t")


def one(bound=N):
    return FockPolynomial.constant(1, bound)


def random_state(rng, bound=N, basis="T"):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        mono = tuple(
            (v, rng.randint(1, 2))
            for v in sorted(rng.sample(range(0, 7), rng.randint(0, 3)))
        )
        terms[mono] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return FockPolynomial(Polynomial(terms), bound, basis)


# -- the bilinear form -------------------------------------------------------


def test_pairing_on_basis():
    assert pairing_B(FourierPolynomial.mode(0), FourierPolynomial.mode(-1)) == -1
    assert pairing_B(FourierPolynomial.mode(-1), FourierPolynomial.mode(0)) == 1
    assert pairing_B(FourierPolynomial.mode(2), FourierPolynomial.mode(-3)) == -5
    assert pairing_B(FourierPolynomial.mode(2), FourierPolynomial.mode(2)) == 0


def test_pairing_skew_on_random():
    rng = random.Random(1)
    for _ in range(30):
        f = FourierPolynomial(
            {rng.randint(-5, 5): Fraction(rng.randint(-4, 4)) for _ in range(4)}
        )
        g = FourierPolynomial(
            {rng.randint(-5, 5): Fraction(rng.randint(-4, 4)) for _ in range(4)}
        )
        assert pairing_B(f, f) == 0
        assert pairing_B(f, g) == -pairing_B(g, f)


# -- oscillators --------------------------------------------------------------


def test_oscillator_annihilation_is_derivative():
    assert apply_oscillator(2, T(2)) == one()
    assert apply_oscillator(3, T(2)).is_zero()


def test_oscillator_creation_normalization():
    assert apply_oscillator(-3, one()) == 5 * T(2)
    assert apply_oscillator(-1, one()) == T(0)


def test_heisenberg_commutator():
    rng = random.Random(5)
    for _ in range(15):
        p = random_state(rng)
        for m in range(0, 4):
            for n in range(0, 4):
                lhs = apply_oscillator(m, apply_oscillator(-n - 1, p)) - \
                    apply_oscillator(-n - 1, apply_oscillator(m, p))
                want = (2 * n + 1) * p if m == n else 0 * p
                assert lhs == want


def test_commuting_factors_for_nonzero_k():
    rng = random.Random(9)
    for _ in range(10):
        p = random_state(rng)
        for k in (1, -2, 3):
            for n in (-4, -1, 0, 2):
                i = k - n - 1
                a = apply_oscillator(i, apply_oscillator(n, p))
                b = apply_oscillator(n, apply_oscillator(i, p))
                assert a == b


def test_truncation_overflow():
    with pytest.raises(TruncationError):
        apply_oscillator(-(N + 2), one())


# -- Virasoro ----------------------------------------------------------------


def test_action_table_spot_values():
    assert virasoro_L(5, T(7)) == Fraction(5, 2) * T(2)
    assert virasoro_L(3, T(1)).is_zero()
    assert virasoro_L(0, one()) == Fraction(1, 16) * one()


def test_l0_readings():
    # displayed operator includes the 1/16 shift; the bare normal-ordered
    # reading matches the k = 0 instance of the action table
    got = virasoro_L(0, T(4))
    assert got == (Fraction(4) + Fraction(1, 2) + Fraction(1, 16)) * T(4)
    bare = virasoro_L(0, T(4), l0_constant=False)
    assert bare == (Fraction(4) + Fraction(1, 2)) * T(4)


def test_virasoro_not_derivation():
    p, q = T(0), T(0)
    lhs = virasoro_L(1, p * q)
    leibniz = virasoro_L(1, p) * q + p * virasoro_L(1, q)
    assert lhs != leibniz
    assert lhs == Fraction(1, 2) * one()


def test_virasoro_closure_spot():
    for p in (T(7), T(3) * T(2), one()):
        assert bracket("L:1", "L:2", p) == -1 * virasoro_L(3, p)
        assert bracket("L:2", "L:-1", p) == 3 * virasoro_L(1, p)


def test_central_defect_on_vacuum():
    lam = bracket("L:2", "L:-2", one()) - 4 * virasoro_L(0, one())
    # measured by expansion: the defect of [L_2, L_-2] - 4 L_0 is 1/2
    assert lam == Fraction(1, 2) * one()


def test_central_term_measured_values():
    # frozen from the expansion oracle itself; the cubic through m = 1..4
    # predicts the m = 5 value, which is the acceptance-level statement
    measured = {m: central_term(m, 2 * m + 4) for m in range(1, 6)}
    assert measured[1] == 0
    assert measured[2] == Fraction(1, 2)
    assert measured[3] == 2
    assert measured[4] == 5
    assert measured[5] == 10


def test_central_term_needs_room():
    with pytest.raises(TruncationError):
        central_term(3, 2)


# -- Witt fields ---------------------------------------------------------------


def test_witt_action():
    assert witt_v(2, t(5)) == 4 * t(3)
    assert witt_v(4, t(2)).is_zero()
    assert witt_v(0, t(3)) == 4 * t(3)


def test_witt_leibniz_on_generators():
    got = witt_v(1, t(2) * t(3))
    want = 2 * (t(1) * t(3)) + 3 * (t(2) * t(2))
    assert got == want


def test_witt_derivation_randomized():
    rng = random.Random(11)
    for _ in range(15):
        p = random_state(rng, basis="t")
        q = random_state(rng, basis="t")
        for k in (0, 1, 3):
            assert witt_v(k, p * q) == witt_v(k, p) * q + p * witt_v(k, q)


def test_witt_bracket():
    for n in range(0, N + 1):
        lhs = bracket("v:1", "v:2", t(n))
        assert lhs == -1 * witt_v(3, t(n))
    for j, k in ((0, 2), (2, 5), (3, 3)):
        for n in range(0, 9):
            assert bracket(f"v:{j}", f"v:{k}", t(n)) == (j - k) * witt_v(j + k, t(n))


def test_witt_rejects_negative_index():
    with pytest.raises(ValueError):
        witt_v(-1, t(2))


def test_witt_on_T_basis_input():
    # t_n = (2n+1)!! T_n forces the conjugated action on the T-generators:
    # v_k T_n = (n-k+1) (2(n-k)+1)!!/(2n+1)!! T_(n-k)
    for n in range(2, 9):
        for k in range(0, n + 1):
            got = witt_v(k, T(n))
            coeff = Fraction(
                (n - k + 1) * double_factorial_odd(n - k), double_factorial_odd(n)
            )
            assert got == coeff * T(n - k)
            assert got.basis == "T"
    # composition check: the same thing computed by explicit conjugation
    for n in (3, 5):
        for k in (1, 2):
            direct = witt_v(k, T(n))
            conjugated = basis_change(witt_v(k, basis_change(T(n), "t")), "T")
            assert direct == conjugated


# -- basis change ----------------------------------------------------------------


def test_basis_change_values():
    assert basis_change(t(3), "T") == 105 * T(3)
    assert basis_change(t(0), "T") == T(0)
    assert basis_change(105 * T(3), "t") == t(3)


def test_basis_change_roundtrip_randomized():
    rng = random.Random(13)
    for _ in range(20):
        p = random_state(rng, basis="t")
        assert basis_change(basis_change(p, "T"), "t") == p


# -- labels, rendering, parsing ------------------------------------------------------


def test_parse_render_roundtrip():
    for text in ("T_7", "5/2*T_2", "3*T_1^2*T_0 + 1/2*T_4 - T_2", "-T_0"):
        p = parse(text, 10)
        assert parse(render(p), 10) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse("T_1 + t_2", 10)  # mixed bases
    with pytest.raises(ValueError):
        parse("T^2", 10)
    with pytest.raises(ValueError):
        parse("", 10)
    with pytest.raises(ValueError):
        parse_operator_label("L5")
    with pytest.raises(ValueError):
        parse_operator_label("X:1")


def test_mixed_basis_arithmetic_rejected():
    with pytest.raises(ValueError):
        T(1) + t(1)


def test_bound_enforced():
    with pytest.raises(TruncationError):
        FockPolynomial.generator(7, 5)
