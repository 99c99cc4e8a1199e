"""Polynomial Fock space for the antiperiodic boson, with its operator algebra.

The state space is Q[T_0, ..., T_N] for an explicit truncation bound N.
Oscillators act by

    a_n     =  d/dT_n                    for n >= 0  (annihilation)
    a_(-n-1) = (2n+1) * (mult. by T_n)   for n >= 0  (creation)

so that [a_m, a_(-n-1)] = (2n+1) delta_mn.  The creation normalization is
the unique choice (up to the recorded sign convention) reproducing the
Virasoro action table L_k T_n = (n - k + 1/2) T_{n-k} below; the table is
what the test suite pins, the normalization is derived from it.

Virasoro generators:

    L_k = (1/4) sum_{n in Z} a_{k-n-1} a_n              (k != 0)
    L_0 = (1/2) sum_{n >= 0} a_{-n-1} a_n  +  1/16

For k != 0 the two factors a_{k-n-1}, a_n have index sum k-1 != -1, hence
commute; only L_0 needs normal ordering.  The +1/16 constant in L_0 is
included by default and can be switched off (`l0_constant=False`) to get
the bare normal-ordered operator, which is the k = 0 instance of the
action table.

A second generator system t_n = (2n+1)!! T_n carries the derivations

    v_k t_n = (n - k + 1) t_{n-k}   (n >= k, else 0),   k >= 0,

the Lie algebra of formal coordinate changes.  Polynomials carry a basis
tag ("T" or "t"); operators convert internally (the rescaling is exact)
and return results in the basis of their input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .exactalg import Polynomial, format_rational, rational

TBASIS = "T"
SMALL_T_BASIS = "t"


class TruncationError(ValueError):
    """A creation operator needs a variable index beyond the bound N."""


class NonScalarDefectError(ValueError):
    """An operator expected to act as a scalar fails to do so."""


def double_factorial_odd(n: int) -> int:
    """(2n+1)!! = 1*3*5*...*(2n+1)."""
    out = 1
    for i in range(1, n + 1):
        out *= 2 * i + 1
    return out


class FockPolynomial:
    """A polynomial state with truncation bound and basis tag."""

    __slots__ = ("poly", "bound", "basis")

    def __init__(self, poly: Polynomial, bound: int, basis: str = TBASIS):
        if basis not in (TBASIS, SMALL_T_BASIS):
            raise ValueError(f"unknown basis {basis!r}")
        if bound < 0:
            raise ValueError("truncation bound must be nonnegative")
        for v in poly.variables():
            if not (0 <= v <= bound):
                raise TruncationError(
                    f"variable index {v} outside truncation bound {bound}"
                )
        self.poly = poly
        self.bound = bound
        self.basis = basis

    @classmethod
    def constant(cls, c, bound: int, basis: str = TBASIS) -> "FockPolynomial":
        return cls(Polynomial.const(c), bound, basis)

    @classmethod
    def generator(cls, n: int, bound: int, basis: str = TBASIS) -> "FockPolynomial":
        return cls(Polynomial.variable(n), bound, basis)

    def _wrap(self, poly: Polynomial, basis: Optional[str] = None) -> "FockPolynomial":
        return FockPolynomial(poly, self.bound, basis or self.basis)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "FockPolynomial") -> "FockPolynomial":
        self._check_compatible(other)
        return self._wrap(self.poly + other.poly)

    def __sub__(self, other: "FockPolynomial") -> "FockPolynomial":
        self._check_compatible(other)
        return self._wrap(self.poly - other.poly)

    def __neg__(self) -> "FockPolynomial":
        return self._wrap(-self.poly)

    def __mul__(self, other) -> "FockPolynomial":
        if isinstance(other, FockPolynomial):
            self._check_compatible(other)
            return self._wrap(self.poly * other.poly)
        return self._wrap(self.poly.scale(other))

    def __rmul__(self, other) -> "FockPolynomial":
        return self._wrap(self.poly.scale(other))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FockPolynomial)
            and self.basis == other.basis
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.basis, self.poly))

    def _check_compatible(self, other: "FockPolynomial"):
        if self.basis != other.basis:
            raise ValueError("mixed-basis arithmetic; convert first")
        if self.bound != other.bound:
            raise ValueError("mixed truncation bounds")

    def to_basis(self, basis: str) -> "FockPolynomial":
        if basis == self.basis:
            return self
        return basis_change(self, basis)

    def __repr__(self):
        return f"FockPolynomial({render(self)!r}, N={self.bound})"


# ---------------------------------------------------------------------------
# Text form: "5/2*T_2", "3*T_1^2*T_0 + 1/2*T_4"
# ---------------------------------------------------------------------------


def render(p: FockPolynomial) -> str:
    name = p.basis
    if p.poly.is_zero():
        return "0"
    bits = []
    for mono, coeff in sorted(p.poly.terms.items()):
        factors = []
        if coeff == -1 and mono:
            lead = "-"
        elif coeff == 1 and mono:
            lead = ""
        else:
            lead = format_rational(coeff)
        if lead not in ("", "-"):
            factors.append(lead)
        for var, exp in mono:
            factors.append(f"{name}_{var}" + (f"^{exp}" if exp != 1 else ""))
        text = "*".join(factors) if factors else "0"
        if lead == "-":
            text = "-" + text
        bits.append(text)
    return " + ".join(bits).replace("+ -", "- ")


def parse(text: str, bound: int) -> FockPolynomial:
    """Parse the plain-text grammar ``c*T_i^e*... +- ...`` (T or t variables)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial expression")
    # split into signed terms at top level
    terms = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*/^_":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    poly = Polynomial.zero()
    basis_seen = None
    for term in terms:
        sign = Fraction(1)
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError("dangling sign in polynomial expression")
        coeff = sign
        mono: dict = {}
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {term!r}")
            if factor[0] in "Tt":
                name = factor[0]
                if basis_seen is None:
                    basis_seen = name
                elif basis_seen != name:
                    raise ValueError("mixed T and t variables in one expression")
                body = factor[1:]
                if not body.startswith("_"):
                    raise ValueError(f"malformed variable {factor!r}")
                if "^" in body:
                    idx_s, exp_s = body[1:].split("^", 1)
                    exp = int(exp_s)
                else:
                    idx_s, exp = body[1:], 1
                idx = int(idx_s)
                if exp <= 0:
                    raise ValueError("variable exponents must be positive")
                mono[idx] = mono.get(idx, 0) + exp
            else:
                coeff *= rational(factor)
        poly = poly + Polynomial({tuple(sorted(mono.items())): coeff})
    basis = TBASIS if basis_seen in (None, "T") else SMALL_T_BASIS
    return FockPolynomial(poly, bound, basis)


# ---------------------------------------------------------------------------
# Antiperiodic Fourier modes and the bilinear form B
# ---------------------------------------------------------------------------


class FourierPolynomial:
    """Finite Q-linear combination of the mode symbols a_n, n in Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None):
        canon = {}
        for n, c in (coeffs or {}).items():
            c = rational(c)
            if c != 0:
                canon[int(n)] = canon.get(int(n), Fraction(0)) + c
        self.coeffs = {n: c for n, c in canon.items() if c != 0}

    @classmethod
    def mode(cls, n: int, coeff=1) -> "FourierPolynomial":
        return cls({n: coeff})

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return FourierPolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "FourierPolynomial":
        c = rational(c)
        return FourierPolynomial({n: c * x for n, x in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, FourierPolynomial) and self.coeffs == other.coeffs


def pairing_B(f: FourierPolynomial, g: FourierPolynomial) -> Fraction:
    """Skew form with B(a_n, a_m) = (2m+1) when n+m+1 = 0, else 0."""
    total = Fraction(0)
    for n, cf in f.coeffs.items():
        m = -n - 1
        cg = g.coeffs.get(m)
        if cg:
            total += cf * cg * (2 * m + 1)
    return total


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


def apply_oscillator(n: int, p: FockPolynomial) -> FockPolynomial:
    """a_n for n >= 0 (derivative), a_n for n < 0 (scaled multiplication)."""
    q = p.to_basis(TBASIS)
    if n >= 0:
        result = q.poly.differentiate(n)
    else:
        m = -n - 1
        if m > q.bound:
            raise TruncationError(
                f"creation index {m} exceeds truncation bound {q.bound}"
            )
        result = q.poly.multiply_variable(m).scale(2 * m + 1)
    return FockPolynomial(result, q.bound, TBASIS).to_basis(p.basis)


def _quadratic_term(i: int, n: int, poly: Polynomial, bound: int) -> Polynomial:
    """a_i a_n acting on a T-basis polynomial, rightmost factor first."""
    if n >= 0:
        inner = poly.differentiate(n)
    else:
        m = -n - 1
        if poly.is_zero():
            return Polynomial.zero()
        if m > bound:
            raise TruncationError(
                f"creation index {m} exceeds truncation bound {bound}"
            )
        inner = poly.multiply_variable(m).scale(2 * m + 1)
    if inner.is_zero():
        return inner
    if i >= 0:
        return inner.differentiate(i)
    m = -i - 1
    if m > bound:
        raise TruncationError(f"creation index {m} exceeds truncation bound {bound}")
    return inner.multiply_variable(m).scale(2 * m + 1)


def virasoro_L(k: int, p: FockPolynomial, l0_constant: bool = True) -> FockPolynomial:
    """Apply L_k.  Finitely many modes contribute on any polynomial.

    For k != 0 the candidate summation indices n are: variables of p
    (annihilation slot a_n), indices with k-n-1 a variable of p (the other
    slot annihilates), and for k < 0 the block k <= n <= -1 where both
    factors create.
    """
    q = p.to_basis(TBASIS)
    poly = q.poly
    if poly.is_zero():
        return p
    if k == 0:
        acc = Polynomial.zero()
        for n in poly.variables():
            acc = acc + _quadratic_term(-n - 1, n, poly, q.bound)
        result = acc.scale(Fraction(1, 2))
        if l0_constant:
            result = result + poly.scale(Fraction(1, 16))
    else:
        vars_p = poly.variables()
        candidates = set(vars_p)
        candidates.update(k - 1 - v for v in vars_p if k - 1 - v < 0)
        if k < 0:
            candidates.update(range(k, 0))
        acc = Polynomial.zero()
        for n in sorted(candidates):
            acc = acc + _quadratic_term(k - n - 1, n, poly, q.bound)
        result = acc.scale(Fraction(1, 4))
    return FockPolynomial(result, q.bound, TBASIS).to_basis(p.basis)


def witt_v(k: int, p: FockPolynomial) -> FockPolynomial:
    """Apply the derivation v_k, k >= 0, in the t basis."""
    if k < 0:
        raise ValueError("witt field index must be nonnegative")
    q = p.to_basis(SMALL_T_BASIS)
    out = Polynomial.zero()
    for mono, coeff in q.poly.terms.items():
        for var, exp in mono:
            if var < k:
                continue
            d = dict(mono)
            if exp == 1:
                del d[var]
            else:
                d[var] = exp - 1
            d[var - k] = d.get(var - k, 0) + 1
            out = out + Polynomial({tuple(sorted(d.items())): coeff * exp * (var - k + 1)})
    return FockPolynomial(out, q.bound, SMALL_T_BASIS).to_basis(p.basis)


def basis_change(p: FockPolynomial, target: str) -> FockPolynomial:
    """Rescale variables through t_n = (2n+1)!! T_n (exact both ways)."""
    if target not in (TBASIS, SMALL_T_BASIS):
        raise ValueError(f"unknown basis {target!r}")
    if target == p.basis:
        return p
    out: dict = {}
    for mono, coeff in p.poly.terms.items():
        c = coeff
        for var, exp in mono:
            scale = Fraction(double_factorial_odd(var)) ** exp
            # t -> T multiplies by the double factorials, T -> t divides
            c = c * scale if p.basis == SMALL_T_BASIS else c / scale
        out[mono] = c
    return FockPolynomial(Polynomial(out), p.bound, target)


# ---------------------------------------------------------------------------
# Operator labels, commutators, central defect
# ---------------------------------------------------------------------------


def parse_operator_label(label: str):
    """Parse "L:k", "v:k", or "a:n" into an operator callable."""
    try:
        kind, num = label.split(":")
        num = int(num)
    except ValueError as exc:
        raise ValueError(f"malformed operator label {label!r}") from exc
    if kind == "L":
        return lambda p: virasoro_L(num, p)
    if kind == "v":
        return lambda p: witt_v(num, p)
    if kind == "a":
        return lambda p: apply_oscillator(num, p)
    raise ValueError(f"unknown operator kind {kind!r} in {label!r}")


def bracket(op_a, op_b, p: FockPolynomial) -> FockPolynomial:
    """[A, B] p = A(B p) - B(A p); labels or callables accepted."""
    if isinstance(op_a, str):
        op_a = parse_operator_label(op_a)
    if isinstance(op_b, str):
        op_b = parse_operator_label(op_b)
    return op_a(op_b(p)) - op_b(op_a(p))


def central_term(m: int, bound: int) -> Fraction:
    """The scalar lambda(m) with ([L_m, L_-m] - 2m L_0) p = lambda(m) p.

    Measured by direct expansion on the constant state and on every
    generator the truncation can hold; raises NonScalarDefectError if the
    defect fails to be scalar (which would signal an implementation bug).
    """
    if m <= 0:
        raise ValueError("central defect is probed at positive m")
    if bound < 2 * m - 1:
        raise TruncationError(
            f"bound {bound} too small to expand [L_{m}, L_{-m}] (need >= {2*m-1})"
        )

    def defect(p: FockPolynomial) -> FockPolynomial:
        com = bracket(lambda x: virasoro_L(m, x), lambda x: virasoro_L(-m, x), p)
        return com - (2 * m) * virasoro_L(0, p)

    one = FockPolynomial.constant(1, bound)
    base = defect(one)
    lam = base.poly.constant_term()
    if base != lam * one:
        raise NonScalarDefectError(f"defect on 1 is not scalar: {render(base)}")
    for j in range(0, bound - m + 1):
        state = FockPolynomial.generator(j, bound)
        got = defect(state)
        if got != lam * state:
            raise NonScalarDefectError(
                f"defect on T_{j} is {render(got)}, expected {lam} * T_{j}"
            )
    return lam
