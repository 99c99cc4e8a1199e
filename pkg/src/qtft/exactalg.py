"""Exact rational arithmetic, sparse multivariate polynomials, and the
graded Novikov coefficient ring.

Every coefficient in the engine is a `fractions.Fraction`; there is no
floating point anywhere.  Two value types live here:

* ``Polynomial`` -- a sparse multivariate polynomial over Q.  Variables are
  arbitrary hashable, mutually orderable keys (ints for the Fock space,
  ``(level, index)`` pairs for descendant algebras).  A monomial is stored
  as a sorted tuple ``((var, exp), ...)`` with positive exponents, mapped
  to its coefficient.  The zero polynomial has no terms.

* ``NovikovElement`` -- a finite Q-linear combination of monomials
  ``alpha (x) v^k`` where alpha ranges over a lattice Z^r and k over Z
  (Laurent powers of the degree-2 variable v).  The product is the group
  ring convolution ``(alpha (x) v^i) (beta (x) v^j) = (alpha+beta) (x)
  v^(i+j)``.  An optional truncation order keeps only terms with
  v-exponent <= order, the finitary stand-in for the v-adic completion.

Grading: deg(v) = 2 and deg(alpha) = 2<c1, alpha> for a configured integer
covector c1, so a monomial ``c * alpha (x) v^k`` has degree
``2k + 2<c1, alpha>``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional

Monomial = tuple  # sorted tuple of (var, positive exponent) pairs


class RankMismatchError(ValueError):
    """Lattice ranks (or covector ranks) of the operands disagree."""


def rational(value) -> Fraction:
    """Coerce ints, Fractions, and "p/q" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(c: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" with positive denominator."""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials over Q
# ---------------------------------------------------------------------------


class Polynomial:
    """Sparse polynomial with Fraction coefficients and hashable variables.

    Immutable by convention: no method mutates ``self.terms``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        canon = {}
        for mono, coeff in (terms or {}).items():
            c = rational(coeff)
            if c == 0:
                continue
            key = tuple(sorted((v, int(e)) for v, e in mono if int(e) != 0))
            for _, e in key:
                if e < 0:
                    raise ValueError("polynomial exponents must be positive")
            canon[key] = canon.get(key, Fraction(0)) + c
        self.terms = {m: c for m, c in canon.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({(): rational(c)})

    @classmethod
    def variable(cls, var, exp: int = 1, coeff=1) -> "Polynomial":
        return cls({((var, exp),): rational(coeff)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        out = set()
        for mono in self.terms:
            for v, _ in mono:
                out.add(v)
        return out

    def coefficient(self, mono) -> Fraction:
        key = tuple(sorted((v, e) for v, e in mono))
        return self.terms.get(key, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self.terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        p = Polynomial.zero()
        p.terms = out
        return p

    def __neg__(self) -> "Polynomial":
        p = Polynomial.zero()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        # integer-coefficient fast path: plain int arithmetic, wrap once
        int_mode = all(c.denominator == 1 for c in self.terms.values()) and all(
            c.denominator == 1 for c in other.terms.values()
        )
        out: dict = {}
        for m1, c1 in self.terms.items():
            if int_mode:
                c1 = c1.numerator
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                if int_mode:
                    c2 = c2.numerator
                merged = dict(d1)
                for v, e in m2:
                    merged[v] = merged.get(v, 0) + e
                key = tuple(sorted(merged.items()))
                s = out.get(key, 0) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        p = Polynomial.zero()
        if int_mode:
            p.terms = {m: Fraction(c) for m, c in out.items()}
        else:
            p.terms = {m: c for m, c in out.items()}
        return p

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = rational(c)
        p = Polynomial.zero()
        if c != 0:
            p.terms = {m: c * t for m, t in self.terms.items()}
        return p

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus & substitution -------------------------------------------

    def differentiate(self, var) -> "Polynomial":
        out: dict = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            e = d.get(var)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, Fraction(0)) + c * e
        p = Polynomial.zero()
        p.terms = {m: c for m, c in out.items() if c != 0}
        return p

    def multiply_variable(self, var, exp: int = 1) -> "Polynomial":
        out: dict = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            d[var] = d.get(var, 0) + exp
            out[tuple(sorted(d.items()))] = c
        p = Polynomial.zero()
        p.terms = out
        return p

    def substitute_zero(self, vars_to_kill) -> "Polynomial":
        """Set each listed variable to zero (drop monomials containing it)."""
        kill = set(vars_to_kill)
        p = Polynomial.zero()
        p.terms = {
            m: c for m, c in self.terms.items() if not any(v in kill for v, _ in m)
        }
        return p

    def rename_variables(self, mapping) -> "Polynomial":
        """Relabel variables through ``mapping`` (a dict or callable)."""
        fn = mapping.get if isinstance(mapping, dict) else mapping
        out: dict = {}
        for mono, c in self.terms.items():
            d: dict = {}
            for v, e in mono:
                w = fn(v) if not isinstance(mapping, dict) else mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, Fraction(0)) + c
        p = Polynomial.zero()
        p.terms = {m: c for m, c in out.items() if c != 0}
        return p

    def __repr__(self):
        return f"Polynomial({self.terms!r})"


# ---------------------------------------------------------------------------
# The Novikov ring Q[Z^r x Z]
# ---------------------------------------------------------------------------


def _as_lattice(alpha, rank: int) -> tuple:
    vec = tuple(int(a) for a in alpha)
    if len(vec) != rank:
        raise RankMismatchError(f"lattice vector {vec} does not have rank {rank}")
    return vec


class NovikovElement:
    """Finite sum of terms ``c * alpha (x) v^k`` over the lattice Z^rank.

    ``terms`` maps ``(alpha, vpow)`` keys to nonzero Fraction coefficients.
    ``truncation`` (when not None) discards every term with vpow larger
    than the given order; products inherit the smaller order of the two
    operands.
    """

    __slots__ = ("rank", "terms", "truncation")

    def __init__(self, rank: int, terms: Optional[dict] = None,
                 truncation: Optional[int] = None):
        if rank < 0:
            raise ValueError("lattice rank must be nonnegative")
        self.rank = rank
        self.truncation = truncation
        canon: dict = {}
        for (alpha, vpow), coeff in (terms or {}).items():
            c = rational(coeff)
            if c == 0:
                continue
            key = (_as_lattice(alpha, rank), int(vpow))
            if truncation is not None and key[1] > truncation:
                continue
            canon[key] = canon.get(key, Fraction(0)) + c
        self.terms = {k: c for k, c in canon.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rank: int = 0, truncation: Optional[int] = None):
        return cls(rank, {}, truncation)

    @classmethod
    def one(cls, rank: int = 0, truncation: Optional[int] = None):
        return cls(rank, {((0,) * rank, 0): 1}, truncation)

    @classmethod
    def monomial(cls, alpha, vpow: int, coeff=1, truncation: Optional[int] = None):
        alpha = tuple(int(a) for a in alpha)
        return cls(len(alpha), {(alpha, vpow): coeff}, truncation)

    @classmethod
    def v_power(cls, k: int, rank: int = 0, coeff=1,
                truncation: Optional[int] = None):
        return cls(rank, {((0,) * rank, k): coeff}, truncation)

    # -- structural helpers --------------------------------------------------

    def _join_truncation(self, other: "NovikovElement") -> Optional[int]:
        if self.truncation is None:
            return other.truncation
        if other.truncation is None:
            return self.truncation
        return min(self.truncation, other.truncation)

    def _check_rank(self, other: "NovikovElement"):
        if self.rank != other.rank:
            raise RankMismatchError(
                f"rank {self.rank} element combined with rank {other.rank} element"
            )

    def is_zero(self) -> bool:
        return not self.terms

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "NovikovElement") -> "NovikovElement":
        self._check_rank(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, Fraction(0)) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return NovikovElement(self.rank, out, self._join_truncation(other))

    def __neg__(self) -> "NovikovElement":
        return NovikovElement(
            self.rank, {k: -c for k, c in self.terms.items()}, self.truncation
        )

    def __sub__(self, other: "NovikovElement") -> "NovikovElement":
        return self + (-other)

    def __mul__(self, other) -> "NovikovElement":
        if not isinstance(other, NovikovElement):
            c = rational(other)
            return NovikovElement(
                self.rank, {k: c * t for k, t in self.terms.items()}, self.truncation
            )
        self._check_rank(other)
        trunc = self._join_truncation(other)
        out: dict = {}
        for (a1, k1), c1 in self.terms.items():
            for (a2, k2), c2 in other.terms.items():
                k = k1 + k2
                if trunc is not None and k > trunc:
                    continue
                key = (tuple(x + y for x, y in zip(a1, a2)), k)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return NovikovElement(self.rank, out, trunc)

    def __rmul__(self, other) -> "NovikovElement":
        return self * other

    def __pow__(self, n: int) -> "NovikovElement":
        if n < 0:
            raise ValueError("use v_power for Laurent inverses of monomials")
        result = NovikovElement.one(self.rank, self.truncation)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NovikovElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    # -- serialization -------------------------------------------------------

    def to_obj(self) -> dict:
        terms = [
            {"alpha": list(alpha), "v": vpow, "c": format_rational(c)}
            for (alpha, vpow), c in sorted(self.terms.items())
        ]
        obj = {"rank": self.rank, "terms": terms}
        if self.truncation is not None:
            obj["truncation"] = self.truncation
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True)

    @classmethod
    def from_obj(cls, obj: dict) -> "NovikovElement":
        terms = {
            (tuple(t["alpha"]), int(t["v"])): rational(t["c"])
            for t in obj.get("terms", [])
        }
        return cls(int(obj["rank"]), terms, obj.get("truncation"))

    @classmethod
    def from_json(cls, text: str) -> "NovikovElement":
        return cls.from_obj(json.loads(text))

    def __repr__(self):
        if not self.terms:
            return "NovikovElement(0)"
        bits = []
        for (alpha, vpow), c in sorted(self.terms.items()):
            parts = [format_rational(c)]
            if any(alpha):
                parts.append(f"e{list(alpha)}")
            if vpow:
                parts.append(f"v^{vpow}" if vpow != 1 else "v")
            bits.append("*".join(parts))
        return " + ".join(bits)


# -- module-level operations matching the engine's public surface -----------


def nov_add(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    return a + b


def nov_mul(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    return a * b


def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def divided_power(k: int, rank: int = 0,
                  truncation: Optional[int] = None) -> NovikovElement:
    """v^k / k! with trivial lattice part."""
    if k < 0:
        raise ValueError("divided power index must be nonnegative")
    return NovikovElement.v_power(k, rank, Fraction(1, factorial(k)), truncation)


def monomial_degree(alpha: tuple, vpow: int, c1_pairing) -> int:
    """Cohomological degree 2*vpow + 2*<c1, alpha>."""
    c1 = tuple(int(x) for x in c1_pairing)
    if len(c1) != len(alpha):
        raise RankMismatchError(
            f"covector of rank {len(c1)} paired with vector of rank {len(alpha)}"
        )
    return 2 * vpow + 2 * sum(x * a for x, a in zip(c1, alpha))


def degree(element: NovikovElement, c1_pairing) -> Optional[int]:
    """Common degree of a homogeneous element, None for 0, error if mixed."""
    if element.is_zero():
        return None
    degs = {monomial_degree(alpha, vpow, c1_pairing)
            for (alpha, vpow) in element.terms}
    if len(degs) != 1:
        raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def is_homogeneous(element: NovikovElement, c1_pairing) -> bool:
    if element.is_zero():
        return True
    degs = {monomial_degree(alpha, vpow, c1_pairing)
            for (alpha, vpow) in element.terms}
    return len(degs) == 1


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


# ---------------------------------------------------------------------------
# Small exact linear algebra over Q (used by the symmetric-function rank
# oracle and by validation code elsewhere in the engine)
# ---------------------------------------------------------------------------


def rational_rank(rows: Iterable[Iterable[Fraction]]) -> int:
    """Rank of a matrix over Q by fraction-free-ish Gaussian elimination."""
    mat = [[rational(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        for r in range(row + 1, len(mat)):
            if mat[r][col] != 0:
                factor = mat[r][col] / pv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def rational_det(matrix) -> Fraction:
    """Determinant over Q by elimination (exact)."""
    mat = [[rational(x) for x in row] for row in matrix]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        pv = mat[col][col]
        det *= pv
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                factor = mat[r][col] / pv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det
