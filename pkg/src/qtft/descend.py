"""Descendant variable algebra on the large phase space, and the ring of
Schur Q-functions.

A target profile lists the degrees |z_i| of a homology basis, z_0 being
the fundamental class.  The level-k descendant of z_i is an indeterminate
t_{k,i} of degree |z_i| - 2k; polynomials in these variables use the
generic sparse polynomials from ``exactalg`` with (k, i) pairs as
variable keys.  Setting every t_{k,i} with k, i both positive to zero is
the passage to the small phase space; for the one-point profile the
descendants of z_0 = 1 match the polynomial generators t_k (of degree 2k)
of the rational cobordism coalgebra, one per level.

Schur Q-functions are taken in their classical generating form

    prod_i (1 + x_i u) / (1 - x_i u)  =  sum_r  Q_r(x) u^r,

expanded exactly in any number of variables; stability in the number of
variables is a checked property.  The one-row coproduct is
Q_r |-> sum Q_i (x) Q_{r-i}, verified against the two-alphabet expansion
Q_r(x, y).  Graded dimensions of the ring (strict partitions per degree)
and of the large-phase Hopf algebra (free commutative on odd-degree
primitives tensor the profile) are computed by exact convolution.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .exactalg import Polynomial, format_rational, rational


class ProfileError(ValueError):
    """Malformed target profile or profile/operation mismatch."""


@dataclass(frozen=True)
class TargetProfile:
    """Degrees of a homology basis plus the lattice data of the target."""

    degrees: tuple          # |z_i| for each basis class, z_0 first
    rank: int = 0           # second-homology lattice rank
    c1: tuple = ()          # Chern pairing covector, length == rank
    dim: int = 0            # complex dimension d of the target

    def __post_init__(self):
        if not self.degrees:
            raise ProfileError("profile needs at least the class z_0")
        if any(int(d) < 0 for d in self.degrees):
            raise ProfileError("basis degrees must be nonnegative")
        if len(self.c1) != self.rank:
            raise ProfileError("c1 covector length must equal lattice rank")

    @classmethod
    def point(cls) -> "TargetProfile":
        return cls(degrees=(0,), rank=0, c1=(), dim=0)

    @property
    def is_point(self) -> bool:
        return len(self.degrees) == 1 and self.degrees[0] == 0

    def variable_degree(self, k: int, i: int) -> int:
        if not (0 <= i < len(self.degrees)):
            raise ProfileError(f"basis index {i} out of range")
        if k < 0:
            raise ProfileError("descendant level must be nonnegative")
        return self.degrees[i] - 2 * k

    def to_obj(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "rank": self.rank,
            "c1": list(self.c1),
            "dim": self.dim,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "TargetProfile":
        return cls(
            degrees=tuple(obj["degrees"]),
            rank=int(obj.get("rank", 0)),
            c1=tuple(obj.get("c1", ())),
            dim=int(obj.get("dim", 0)),
        )

    @classmethod
    def from_json(cls, text: str) -> "TargetProfile":
        return cls.from_obj(json.loads(text))


class DescendantVariable(NamedTuple):
    k: int  # descendant level
    i: int  # basis index

    def name(self) -> str:
        return f"t_{{{self.k},{self.i}}}"


def enumerate_descendants(profile: TargetProfile, degree_bound: int):
    """All t_{k,i} with |degree| <= bound, sorted by (level, index)."""
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    out = []
    for i, zdeg in enumerate(profile.degrees):
        # |zdeg - 2k| <= bound
        k_min = max(0, -((degree_bound - zdeg) // 2) if zdeg > degree_bound else 0)
        k_max = (zdeg + degree_bound) // 2
        for k in range(k_min, k_max + 1):
            if abs(zdeg - 2 * k) <= degree_bound:
                out.append(DescendantVariable(k, i))
    return sorted(out)


# ---------------------------------------------------------------------------
# The degree-zero class z and its bookkeeping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZTerm:
    k: int
    i: int
    t_degree: int  # declared degree of the coefficient t_{k,i}


@dataclass
class ZClass:
    """Formal sum  sum t_{k,i} c^k z_i  with c of degree 2."""

    terms: list

    def __iter__(self):
        return iter(self.terms)


def check_z_degree(z: ZClass, profile: TargetProfile) -> bool:
    """Every term must have deg(t_{k,i}) = |z_i| - 2k, making z degree zero."""
    for term in z:
        if term.k < 0 or not (0 <= term.i < len(profile.degrees)):
            raise ProfileError(f"malformed term (k={term.k}, i={term.i})")
        if term.t_degree != profile.variable_degree(term.k, term.i):
            return False
    return True


# ---------------------------------------------------------------------------
# Descendant polynomials
# ---------------------------------------------------------------------------


def descendant_variable(k: int, i: int) -> Polynomial:
    return Polynomial.variable((int(k), int(i)))


def small_phase_specialize(p: Polynomial) -> Polynomial:
    """Set t_{k,i} = 0 whenever both k > 0 and i > 0."""
    kill = [v for v in p.variables() if v[0] > 0 and v[1] > 0]
    return p.substitute_zero(kill)


def monomial_descendant_degree(profile: TargetProfile, mono) -> int:
    return sum(e * profile.variable_degree(k, i) for (k, i), e in mono)


class LNGenerator(NamedTuple):
    """Polynomial generator t_k of the rational cobordism coalgebra."""

    level: int

    @property
    def degree(self) -> int:
        return 2 * self.level

    def name(self) -> str:
        return f"t_{self.level}"


def ln_identify(profile: TargetProfile, k: int) -> LNGenerator:
    """Map the level-k descendant of z_0 to the degree-2k generator t_k.

    Only meaningful for the one-point profile, where z_0 = 1 is the unique
    primary field; t_0 is the unit-level generator.
    """
    if not profile.is_point:
        raise ProfileError("descendant identification needs the point profile")
    if k < 0:
        raise ValueError("descendant level must be nonnegative")
    return LNGenerator(k)


def ln_identify_monomial(profile: TargetProfile, mono) -> dict:
    """Multiplicative extension on monomials: prod t_{k,0}^e -> prod t_k^e."""
    if not profile.is_point:
        raise ProfileError("descendant identification needs the point profile")
    out: dict = {}
    for (k, i), e in mono:
        if i != 0:
            raise ProfileError("point profile has only the basis class z_0")
        out[LNGenerator(k)] = out.get(LNGenerator(k), 0) + e
    return out


def render_ln_monomial(mono: dict) -> str:
    if not mono:
        return "1"
    bits = []
    for gen in sorted(mono):
        e = mono[gen]
        bits.append(gen.name() + (f"^{e}" if e != 1 else ""))
    return "*".join(bits)


# ---------------------------------------------------------------------------
# Schur Q-functions
# ---------------------------------------------------------------------------


def schur_q(r: int, num_vars: int) -> Polynomial:
    """Expansion of Q_r in num_vars variables (keys 0..num_vars-1)."""
    if r < 0:
        raise ValueError("Q_r needs r >= 0")
    series = [Polynomial.const(1)] + [Polynomial.zero() for _ in range(r)]
    for i in range(num_vars):
        # (1 + x_i u)/(1 - x_i u) = 1 + 2 x_i u + 2 x_i^2 u^2 + ...
        new = [Polynomial.zero() for _ in range(r + 1)]
        for a in range(r + 1):
            if series[a].is_zero():
                continue
            new[a] = new[a] + series[a]
            for b in range(1, r + 1 - a):
                new[a + b] = new[a + b] + series[a].multiply_variable(i, b).scale(2)
        series = new
    return series[r]


def schur_q_two_alphabet(r: int, num_x: int, num_y: int) -> Polynomial:
    """Q_r on the union alphabet, variables ("x", i) and ("y", j)."""
    joint = schur_q(r, num_x + num_y)
    return joint.rename_variables(
        lambda v: ("x", v) if v < num_x else ("y", v - num_x)
    )


def schur_q_coproduct(r: int):
    """The one-row coproduct: list of (i, r - i) pairs, coefficients 1."""
    if r < 0:
        raise ValueError("coproduct needs r >= 0")
    return [(i, r - i) for i in range(r + 1)]


def strict_partitions(n: int):
    """Strict partitions of n as decreasing tuples."""

    def gen(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, max_part), 0, -1):
            for rest in gen(remaining - part, part - 1):
                yield (part,) + rest

    return list(gen(n, n))


def partitions(n: int):
    """All partitions of n as decreasing tuples."""

    def gen(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, max_part), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    return list(gen(n, n))


class SchurQElement:
    """Formal Q-linear combination of basis symbols Q_lambda, lambda strict."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None):
        canon: dict = {}
        for lam, c in (coeffs or {}).items():
            lam = tuple(int(p) for p in lam)
            if any(p <= 0 for p in lam) or list(lam) != sorted(lam, reverse=True) \
                    or len(set(lam)) != len(lam):
                raise ValueError(f"{lam} is not a strict partition")
            c = rational(c)
            if c != 0:
                canon[lam] = canon.get(lam, Fraction(0)) + c
        self.coeffs = {k: c for k, c in canon.items() if c != 0}

    @classmethod
    def basis(cls, lam) -> "SchurQElement":
        return cls({tuple(lam): 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return SchurQElement(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - c
        return SchurQElement(out)

    def scale(self, c):
        c = rational(c)
        return SchurQElement({k: c * x for k, x in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, SchurQElement) and self.coeffs == other.coeffs

    def degree(self) -> Optional[int]:
        """Common degree |lambda| of a homogeneous element."""
        if not self.coeffs:
            return None
        degs = {sum(lam) for lam in self.coeffs}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for lam in sorted(self.coeffs, reverse=True):
            c = self.coeffs[lam]
            sym = "Q[" + ",".join(map(str, lam)) + "]" if lam else "1"
            bits.append(sym if c == 1 else f"{format_rational(c)}*{sym}")
        return " + ".join(bits).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Graded dimensions of the large phase space
# ---------------------------------------------------------------------------


def large_phase_dims(profile: TargetProfile, degree_bound: int) -> dict:
    """Primitive and Hopf-algebra dimensions per degree up to the bound.

    The primitives of the Q-function ring sit one per odd degree (odd
    power sums); tensoring with the profile shifts each copy by |z_i|.
    The Hopf algebra is free commutative on the primitives, so its graded
    dimension is the product of partition generating series.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    primitive = {d: 0 for d in range(degree_bound + 1)}
    for zdeg in profile.degrees:
        o = 1
        while o + zdeg <= degree_bound:
            primitive[o + zdeg] += 1
            o += 2
    hopf = [0] * (degree_bound + 1)
    hopf[0] = 1
    for d in range(1, degree_bound + 1):
        for _ in range(primitive[d]):
            for j in range(d, degree_bound + 1):
                hopf[j] += hopf[j - d]
    return {
        "primitive": primitive,
        "hopf": {d: hopf[d] for d in range(degree_bound + 1)},
    }


# ---------------------------------------------------------------------------
# Text form for descendant polynomials: "3/2*t_{2,1}*t_{0,0}^2 + t_{3,0}"
# ---------------------------------------------------------------------------


def parse_descendant_poly(text: str) -> Polynomial:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty descendant expression")
    terms = []
    start = 0
    depth = 0
    for i, ch in enumerate(s):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and s[i - 1] not in "+-*/^_":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    poly = Polynomial.zero()
    for term in terms:
        sign = Fraction(1)
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        coeff = sign
        mono: dict = {}
        for factor in _split_factors(term):
            if factor.startswith("t_{") or factor.startswith("t_"):
                var, exp = _parse_descendant_factor(factor)
                mono[var] = mono.get(var, 0) + exp
            else:
                coeff *= rational(factor)
        poly = poly + Polynomial({tuple(sorted(mono.items())): coeff})
    return poly


def _split_factors(term: str):
    factors = []
    start = 0
    depth = 0
    for i, ch in enumerate(term):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == "*" and depth == 0:
            factors.append(term[start:i])
            start = i + 1
    factors.append(term[start:])
    return [f for f in factors if f]


def _parse_descendant_factor(factor: str):
    body = factor[2:]
    if not body.startswith("{"):
        raise ValueError(f"malformed descendant variable {factor!r}")
    close = body.index("}")
    k_s, i_s = body[1:close].split(",")
    rest = body[close + 1:]
    exp = 1
    if rest:
        if not rest.startswith("^"):
            raise ValueError(f"malformed descendant variable {factor!r}")
        exp = int(rest[1:])
        if exp <= 0:
            raise ValueError("variable exponents must be positive")
    var = (int(k_s), int(i_s))
    if var[0] < 0 or var[1] < 0:
        raise ValueError("descendant indices must be nonnegative")
    return var, exp


def render_descendant_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    bits = []
    for mono, coeff in sorted(p.terms.items()):
        factors = []
        if coeff == 1 and mono:
            lead = ""
        elif coeff == -1 and mono:
            lead = "-"
        else:
            lead = format_rational(coeff)
        if lead not in ("", "-"):
            factors.append(lead)
        for (k, i), e in mono:
            factors.append(f"t_{{{k},{i}}}" + (f"^{e}" if e != 1 else ""))
        text = "*".join(factors) if factors else "0"
        if lead == "-":
            text = "-" + text
        bits.append(text)
    return " + ".join(bits).replace("+ -", "- ")
