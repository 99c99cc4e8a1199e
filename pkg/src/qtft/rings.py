"""Coefficient rings for Frobenius-algebra data and amplitude evaluation.

Three exact rings are supported: Q itself, Laurent polynomials Q[q, q^-1]
in a formal coupling variable, and the Novikov ring from ``exactalg``.
Each is exposed through a small adapter object with uniform constructors,
parsing/rendering, and exact division; ``Frac`` builds the fraction field
on top (needed to invert Gram matrices, since nondegeneracy is decided
over the fraction field).  Equality of fractions is decided by
cross-multiplication, which is sound over an integral domain and never
requires normal forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .exactalg import NovikovElement, format_rational, rational


class LaurentPoly:
    """Univariate Laurent polynomial over Q in a named formal variable."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Optional[dict] = None, var: str = "q"):
        self.var = var
        canon: dict = {}
        for e, c in (coeffs or {}).items():
            c = rational(c)
            if c != 0:
                canon[int(e)] = canon.get(int(e), Fraction(0)) + c
        self.coeffs = {e: c for e, c in canon.items() if c != 0}

    @classmethod
    def const(cls, c, var: str = "q") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def gen(cls, var: str = "q", exp: int = 1, coeff=1) -> "LaurentPoly":
        return cls({exp: coeff}, var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "LaurentPoly"):
        if self.var != other.var:
            raise ValueError(f"mixed Laurent variables {self.var!r}, {other.var!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.var)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out, self.var)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.var)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = rational(other)
            return LaurentPoly({e: c * x for e, x in self.coeffs.items()}, self.var)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(out, self.var)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if self.is_zero():
            if n == 0:
                return LaurentPoly.const(1, self.var)
            if n < 0:
                raise ZeroDivisionError("inverse of zero Laurent polynomial")
            return self
        if len(self.coeffs) == 1:
            ((e, c),) = self.coeffs.items()
            return LaurentPoly({e * n: c ** n}, self.var)
        if n < 0:
            raise ValueError("only monomials have negative powers")
        out = LaurentPoly.const(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.var)
        return (
            isinstance(other, LaurentPoly)
            and self.var == other.var
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, frozenset(self.coeffs.items())))

    # -- division ------------------------------------------------------------

    def _split(self):
        """Return (valuation, dense ascending coefficient list)."""
        lo = min(self.coeffs)
        hi = max(self.coeffs)
        dense = [self.coeffs.get(e, Fraction(0)) for e in range(lo, hi + 1)]
        return lo, dense

    def exact_div(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """self / other when the quotient is again a Laurent polynomial."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly({}, self.var)
        lo_a, a = self._split()
        lo_b, b = other._split()
        # long division of dense ascending lists, monomial units absorbed
        q = [Fraction(0)] * (len(a) - len(b) + 1) if len(a) >= len(b) else []
        rem = list(a)
        lead = b[-1]
        for i in range(len(a) - len(b), -1, -1):
            c = rem[i + len(b) - 1] / lead
            if c != 0:
                q[i] = c
                for j, bc in enumerate(b):
                    rem[i + j] -= c * bc
        if any(rem):
            return None
        return LaurentPoly(
            {i + lo_a - lo_b: c for i, c in enumerate(q) if c != 0}, self.var
        )

    def gcd(self, other: "LaurentPoly") -> "LaurentPoly":
        """A gcd up to units (valuations stripped, result made monic)."""
        self._check(other)
        if self.is_zero():
            return other._unit_normal()
        if other.is_zero():
            return self._unit_normal()
        _, a = self._split()
        _, b = other._split()
        while any(b):
            a, b = b, _poly_mod(a, b)
        g = LaurentPoly({i: c for i, c in enumerate(a)}, self.var)
        return g._unit_normal()

    def _unit_normal(self) -> "LaurentPoly":
        """Divide out the unit part: valuation shifted to 0, leading coeff 1."""
        if self.is_zero():
            return self
        lo, dense = self._split()
        lead = dense[-1]
        return LaurentPoly({i: c / lead for i, c in enumerate(dense)}, self.var)

    # -- text ------------------------------------------------------------------

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                bits.append(format_rational(c))
                continue
            vpart = self.var if e == 1 else f"{self.var}^{e}"
            if c == 1:
                bits.append(vpart)
            elif c == -1:
                bits.append(f"-{vpart}")
            else:
                bits.append(f"{format_rational(c)}*{vpart}")
        return " + ".join(bits).replace("+ -", "- ")

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "LaurentPoly":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty Laurent expression")
        terms = []
        start = 0
        for i, ch in enumerate(s):
            if ch in "+-" and i > start and s[i - 1] not in "+-*/^":
                terms.append(s[start:i])
                start = i
        terms.append(s[start:])
        out = cls({}, var)
        for term in terms:
            sign = Fraction(1)
            while term and term[0] in "+-":
                if term[0] == "-":
                    sign = -sign
                term = term[1:]
            coeff, exp = sign, 0
            for factor in term.split("*"):
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if factor.startswith(var):
                    body = factor[len(var):]
                    exp += int(body[1:]) if body.startswith("^") else (1 if not body else int(body))
                    if body and not body.startswith("^"):
                        raise ValueError(f"malformed power in {factor!r}")
                else:
                    coeff *= rational(factor)
            out = out + cls({exp: coeff}, var)
        return out

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"


def _poly_mod(a, b):
    """Remainder of dense ascending coefficient lists (b nonzero)."""
    while b and b[-1] == 0:
        b = b[:-1]
    rem = list(a)
    lead = b[-1]
    for i in range(len(rem) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        if c != 0:
            for j, bc in enumerate(b):
                rem[i + j] -= c * bc
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


# ---------------------------------------------------------------------------
# Ring adapters
# ---------------------------------------------------------------------------


class RationalRing:
    """Q, with elements plain fractions."""

    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_fraction(self, c):
        return rational(c)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError
        return rational(a) / rational(b)

    def simplify_fraction(self, num, den):
        return rational(num) / rational(den), Fraction(1)

    def render(self, a) -> str:
        return format_rational(rational(a))

    def parse(self, obj):
        return rational(obj)

    def describe(self) -> dict:
        return {"type": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rational")


class LaurentRing:
    """Q[q, q^-1] for a named coupling variable."""

    name = "laurent"

    def __init__(self, var: str = "q"):
        self.var = var

    def zero(self):
        return LaurentPoly({}, self.var)

    def one(self):
        return LaurentPoly.const(1, self.var)

    def gen(self, exp: int = 1, coeff=1):
        return LaurentPoly.gen(self.var, exp, coeff)

    def from_fraction(self, c):
        return LaurentPoly.const(c, self.var)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def is_one(self, a) -> bool:
        return a.coeffs == {0: Fraction(1)}

    def exact_div(self, a, b):
        return a.exact_div(b)

    def simplify_fraction(self, num, den):
        if num.is_zero():
            return num, self.one()
        g = num.gcd(den)
        num2 = num.exact_div(g)
        den2 = den.exact_div(g)
        # absorb the unit part of the denominator (c * q^k is invertible)
        lo, dense = den2._split()
        unit = LaurentPoly({lo + len(dense) - 1: dense[-1]}, self.var)
        if len(den2.coeffs) == 1:
            return num2.exact_div(unit), self.one()
        inv_unit = LaurentPoly(
            {-(lo + len(dense) - 1): 1 / dense[-1]}, self.var
        )
        return num2 * inv_unit, den2 * inv_unit

    def render(self, a) -> str:
        return a.render()

    def parse(self, obj):
        if isinstance(obj, LaurentPoly):
            return obj
        if isinstance(obj, (int, Fraction)):
            return self.from_fraction(obj)
        return LaurentPoly.parse(str(obj), self.var)

    def describe(self) -> dict:
        return {"type": "laurent", "var": self.var}

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and self.var == other.var

    def __hash__(self):
        return hash(("laurent", self.var))


class NovikovRing:
    """The Novikov ring from ``exactalg`` as a coefficient ring."""

    name = "novikov"

    def __init__(self, rank: int = 0, truncation: Optional[int] = None):
        self.rank = rank
        self.truncation = truncation

    def zero(self):
        return NovikovElement.zero(self.rank, self.truncation)

    def one(self):
        return NovikovElement.one(self.rank, self.truncation)

    def v_power(self, k: int, coeff=1):
        return NovikovElement.v_power(k, self.rank, coeff, self.truncation)

    def from_fraction(self, c):
        return NovikovElement(
            self.rank, {((0,) * self.rank, 0): c}, self.truncation
        )

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def is_one(self, a) -> bool:
        return a.terms == {((0,) * self.rank, 0): Fraction(1)}

    def exact_div(self, a, b):
        if b.is_zero():
            raise ZeroDivisionError
        if len(b.terms) == 1:
            ((alpha, vpow), c) = next(iter(b.terms.items()))
            inv = NovikovElement(
                self.rank,
                {(tuple(-x for x in alpha), -vpow): Fraction(1) / c},
                self.truncation,
            )
            return a * inv
        return None  # general convolution division not attempted

    def simplify_fraction(self, num, den):
        if num.is_zero():
            return num, self.one()
        if len(den.terms) == 1:
            return self.exact_div(num, den), self.one()
        return num, den

    def render(self, a) -> str:
        return a.to_json()

    def parse(self, obj):
        if isinstance(obj, NovikovElement):
            if obj.rank != self.rank:
                raise ValueError("lattice rank mismatch in Novikov coefficient")
            return obj
        if isinstance(obj, dict):
            elem = NovikovElement.from_obj(obj)
            if elem.rank != self.rank:
                raise ValueError("lattice rank mismatch in Novikov coefficient")
            return elem
        if isinstance(obj, (int, Fraction)):
            return self.from_fraction(obj)
        # string shorthand with trivial lattice part, Laurent syntax in v
        lp = LaurentPoly.parse(str(obj), "v")
        return NovikovElement(
            self.rank,
            {((0,) * self.rank, e): c for e, c in lp.coeffs.items()},
            self.truncation,
        )

    def describe(self) -> dict:
        d = {"type": "novikov", "rank": self.rank}
        if self.truncation is not None:
            d["truncation"] = self.truncation
        return d

    def __eq__(self, other):
        return (
            isinstance(other, NovikovRing)
            and self.rank == other.rank
            and self.truncation == other.truncation
        )

    def __hash__(self):
        return hash(("novikov", self.rank, self.truncation))


def ring_from_description(desc: dict):
    kind = desc.get("type")
    if kind == "rational":
        return RationalRing()
    if kind == "laurent":
        return LaurentRing(desc.get("var", "q"))
    if kind == "novikov":
        return NovikovRing(int(desc.get("rank", 0)), desc.get("truncation"))
    raise ValueError(f"unknown coefficient ring {desc!r}")


# ---------------------------------------------------------------------------
# Fraction field
# ---------------------------------------------------------------------------


class Frac:
    """num/den over a coefficient ring; equality by cross-multiplication."""

    __slots__ = ("ring", "num", "den", "_unit_den")

    def __init__(self, ring, num, den=None):
        self.ring = ring
        if den is None or ring.is_one(den):
            self.num = num
            self.den = ring.one()
            self._unit_den = True
            return
        if ring.is_zero(den):
            raise ZeroDivisionError("zero denominator in ring fraction")
        num, den = ring.simplify_fraction(num, den)
        self.num = num
        self.den = den
        self._unit_den = ring.is_one(den)

    @classmethod
    def of(cls, ring, elem) -> "Frac":
        return cls(ring, elem)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.num)

    def __add__(self, other: "Frac") -> "Frac":
        if self._unit_den and other._unit_den:
            return Frac(self.ring, self.num + other.num)
        return Frac(
            self.ring,
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    def __sub__(self, other: "Frac") -> "Frac":
        if self._unit_den and other._unit_den:
            return Frac(self.ring, self.num - other.num)
        return Frac(
            self.ring,
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )

    def __neg__(self) -> "Frac":
        return Frac(self.ring, -self.num, self.den)

    def __mul__(self, other: "Frac") -> "Frac":
        if self._unit_den and other._unit_den:
            return Frac(self.ring, self.num * other.num)
        return Frac(self.ring, self.num * other.num, self.den * other.den)

    def invert(self) -> "Frac":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero fraction")
        return Frac(self.ring, self.den, self.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frac):
            return NotImplemented
        if self._unit_den and other._unit_den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("ring fractions are not hashable")

    def as_ring_element(self):
        """The underlying ring element when the denominator divides out."""
        q = self.ring.exact_div(self.num, self.den)
        if q is None:
            raise ValueError(
                f"fraction {self.render()} is not integral over the ring"
            )
        return q

    def is_integral(self) -> bool:
        try:
            return self.ring.exact_div(self.num, self.den) is not None
        except ZeroDivisionError:
            return False

    def render(self) -> str:
        num = self.ring.render(self.num)
        if self.ring.is_zero(self.den - self.ring.one()):
            return num
        return f"({num})/({self.ring.render(self.den)})"

    def __repr__(self):
        return f"Frac({self.render()})"
