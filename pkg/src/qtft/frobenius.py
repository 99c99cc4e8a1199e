"""Finite-rank commutative Frobenius-algebra data over an exact coefficient
ring, together with the quantum point theory.

A ``FrobeniusData`` carries two products: the quantum product (structure
constants ``c[i][j][k]``, used in vertex tensors) and the bilinear form
``b`` derived from the ordinary product composed with the trace.  The two
are deliberately kept separate -- for the point theory the quantum product
is ``x*y = q x y`` while ``b(x, y) = xy``, and conflating them would put
spurious powers of the coupling constant into edge contractions.

``validate`` checks, with explicit witnesses on failure:

* commutativity and associativity of the quantum product,
* symmetry and nondegeneracy (over the fraction field) of ``b``,
* compatibility ``b(x*y, z) = b(x, y*z)``,
* optionally that a declared unit vector really is a unit for ``*``.

The compatibility axiom is what makes the four-point contractions below
independent of the pairing partition; commutativity + associativity alone
do not suffice when ``b`` is supplied independently of the product.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactalg import rational
from .rings import Frac, LaurentRing, RationalRing, ring_from_description


class InvalidFrobeniusData(ValueError):
    """Operation requires data passing the core validation axioms."""


class DegeneratePairingError(ValueError):
    """The Gram matrix of b is singular over the fraction field."""


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            line = f"[{status}] {c.name}"
            if c.witness:
                line += f"  ({c.witness})"
            lines.append(line)
        return "\n".join(lines)


class FrobeniusData:
    """rank, basis labels, quantum structure constants, trace, bilinear form."""

    def __init__(self, ring, labels, quantum, trace, bilinear=None,
                 ordinary=None, unit=None):
        self.ring = ring
        self.labels = list(labels)
        self.rank = len(self.labels)
        r = self.rank
        if r == 0:
            raise ValueError("rank must be positive")
        self.quantum = [
            [[ring.parse(quantum[i][j][k]) for k in range(r)] for j in range(r)]
            for i in range(r)
        ]
        self.trace = [ring.parse(trace[i]) for i in range(r)]
        if (bilinear is None) == (ordinary is None):
            raise ValueError("supply exactly one of bilinear= or ordinary=")
        if ordinary is not None:
            oc = [
                [[ring.parse(ordinary[i][j][k]) for k in range(r)] for j in range(r)]
                for i in range(r)
            ]
            self.bilinear = [
                [
                    _dot(ring, oc[i][j], self.trace)
                    for j in range(r)
                ]
                for i in range(r)
            ]
        else:
            self.bilinear = [
                [ring.parse(bilinear[i][j]) for j in range(r)] for i in range(r)
            ]
        self.unit = None if unit is None else [ring.parse(u) for u in unit]
        self._copairing = None
        self._validated = None

    # -- products -------------------------------------------------------------

    def quantum_product(self, x, y):
        """Coordinates of x * y for coordinate vectors x, y."""
        r = self.rank
        out = [self.ring.zero() for _ in range(r)]
        for i in range(r):
            if self.ring.is_zero(x[i]):
                continue
            for j in range(r):
                if self.ring.is_zero(y[j]):
                    continue
                xy = x[i] * y[j]
                for k in range(r):
                    c = self.quantum[i][j][k]
                    if not self.ring.is_zero(c):
                        out[k] = out[k] + xy * c
        return out

    def b_pairing(self, x, y):
        total = self.ring.zero()
        for i in range(self.rank):
            for j in range(self.rank):
                total = total + x[i] * y[j] * self.bilinear[i][j]
        return total

    def trace_of(self, x):
        return _dot(self.ring, x, self.trace)

    def basis_vector(self, i):
        return [
            self.ring.one() if j == i else self.ring.zero()
            for j in range(self.rank)
        ]

    def vertex3(self, i, j, k):
        """The 3-point tensor entry: b(z_i * z_j, z_k)."""
        total = self.ring.zero()
        for m in range(self.rank):
            c = self.quantum[i][j][m]
            if not self.ring.is_zero(c):
                total = total + c * self.bilinear[m][k]
        return total

    # -- pairing inversion ------------------------------------------------------

    def gram_determinant(self):
        return _det(self.ring, self.bilinear)

    def copairing(self):
        """Inverse Gram matrix over the fraction field, cached."""
        if self._copairing is None:
            det = self.gram_determinant()
            if self.ring.is_zero(det):
                raise DegeneratePairingError(
                    "bilinear form is degenerate (zero Gram determinant)"
                )
            r = self.rank
            adj = _adjugate(self.ring, self.bilinear)
            self._copairing = [
                [Frac(self.ring, adj[i][j], det) for j in range(r)] for i in range(r)
            ]
        return self._copairing

    # -- validation ---------------------------------------------------------------

    def validate(self, check_unit: Optional[bool] = None) -> ValidationReport:
        ring = self.ring
        r = self.rank
        report = ValidationReport()

        witness = None
        for i, j, k in itertools.product(range(r), repeat=3):
            if self.quantum[i][j][k] != self.quantum[j][i][k]:
                witness = f"c[{i}][{j}][{k}] != c[{j}][{i}][{k}]"
                break
        report.checks.append(AxiomCheck("commutativity", witness is None, witness))

        witness = None
        for i, j, k in itertools.product(range(r), repeat=3):
            lhs = self.quantum_product(
                self.quantum_product(self.basis_vector(i), self.basis_vector(j)),
                self.basis_vector(k),
            )
            rhs = self.quantum_product(
                self.basis_vector(i),
                self.quantum_product(self.basis_vector(j), self.basis_vector(k)),
            )
            if any(lhs[m] != rhs[m] for m in range(r)):
                witness = (
                    f"(z{i}*z{j})*z{k} = {[ring.render(v) for v in lhs]} but "
                    f"z{i}*(z{j}*z{k}) = {[ring.render(v) for v in rhs]}"
                )
                break
        report.checks.append(AxiomCheck("associativity", witness is None, witness))

        witness = None
        for i in range(r):
            for j in range(i):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    witness = f"b[{i}][{j}] != b[{j}][{i}]"
                    break
            if witness:
                break
        report.checks.append(AxiomCheck("bilinear-symmetry", witness is None, witness))

        det = self.gram_determinant()
        nondeg = not ring.is_zero(det)
        report.checks.append(
            AxiomCheck(
                "nondegeneracy",
                nondeg,
                None if nondeg else "Gram determinant is zero",
            )
        )

        witness = None
        for i, j, k in itertools.product(range(r), repeat=3):
            lhs = self.vertex3(i, j, k)
            rhs = self.ring.zero()
            for m in range(r):
                c = self.quantum[j][k][m]
                if not ring.is_zero(c):
                    rhs = rhs + self.bilinear[i][m] * c
            if lhs != rhs:
                witness = f"b(z{i}*z{j}, z{k}) != b(z{i}, z{j}*z{k})"
                break
        report.checks.append(
            AxiomCheck("pairing-compatibility", witness is None, witness)
        )

        if check_unit is None:
            check_unit = self.unit is not None
        if check_unit:
            if self.unit is None:
                report.checks.append(
                    AxiomCheck("unit", False, "no unit vector declared")
                )
            else:
                witness = None
                for i in range(r):
                    got = self.quantum_product(self.unit, self.basis_vector(i))
                    want = self.basis_vector(i)
                    if any(got[m] != want[m] for m in range(r)):
                        witness = f"unit * z{i} != z{i}"
                        break
                report.checks.append(AxiomCheck("unit", witness is None, witness))
        return report

    def require_valid(self):
        if self._validated is None:
            self._validated = self.validate(check_unit=False)
        if not self._validated.passed:
            names = ", ".join(c.name for c in self._validated.failures())
            raise InvalidFrobeniusData(f"axioms failed: {names}")

    # -- serialization --------------------------------------------------------------

    def to_obj(self) -> dict:
        r = self.rank
        obj = {
            "ring": self.ring.describe(),
            "basis": self.labels,
            "quantum": [
                [[self.ring.render(self.quantum[i][j][k]) for k in range(r)]
                 for j in range(r)]
                for i in range(r)
            ],
            "bilinear": [
                [self.ring.render(self.bilinear[i][j]) for j in range(r)]
                for i in range(r)
            ],
            "trace": [self.ring.render(t) for t in self.trace],
        }
        if self.unit is not None:
            obj["unit"] = [self.ring.render(u) for u in self.unit]
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True)

    @classmethod
    def from_obj(cls, obj: dict) -> "FrobeniusData":
        ring = ring_from_description(obj["ring"])
        return cls(
            ring,
            obj["basis"],
            obj["quantum"],
            obj["trace"],
            bilinear=obj.get("bilinear"),
            ordinary=obj.get("ordinary"),
            unit=obj.get("unit"),
        )

    @classmethod
    def from_json(cls, text: str) -> "FrobeniusData":
        return cls.from_obj(json.loads(text))


def _dot(ring, xs, ys):
    total = ring.zero()
    for x, y in zip(xs, ys):
        total = total + x * y
    return total


def _det(ring, matrix):
    n = len(matrix)
    total = ring.zero()
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = ring.one()
        for i in range(n):
            prod = prod * matrix[i][perm[i]]
        total = total + prod if sign > 0 else total - prod
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _adjugate(ring, matrix):
    n = len(matrix)
    if n == 1:
        return [[ring.one()]]
    adj = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = _det(ring, minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


# ---------------------------------------------------------------------------
# The point theory and the operations on top of it
# ---------------------------------------------------------------------------


def quantum_point(var: str = "q") -> FrobeniusData:
    """Rank-1 theory of a point: 1*1 = q, trace = id, b(x,y) = xy."""
    ring = LaurentRing(var)
    q = ring.gen()
    return FrobeniusData(
        ring,
        labels=["1"],
        quantum=[[[q]]],
        trace=[ring.one()],
        bilinear=[[ring.one()]],
        unit=[ring.gen(-1)],
    )


def star_power(data: FrobeniusData, x, k: int):
    """k-fold quantum power x * x * ... * x (left associated)."""
    if k < 1:
        raise ValueError("star power needs k >= 1")
    data.require_valid()
    vec = [data.ring.parse(c) for c in x]
    out = vec
    for _ in range(k - 1):
        out = data.quantum_product(out, vec)
    return out


def rescale_iso(data: FrobeniusData, x):
    """phi(x) = q x on a rank-1 theory with invertible coupling q = 1*1.

    phi intertwines the quantum product with the ordinary one:
    phi(x*y) = q(qxy) = (qx)(qy) = phi(x) phi(y).
    """
    if data.rank != 1:
        raise ValueError("rescaling isomorphism is defined for rank-1 data")
    coupling = data.quantum[0][0][0]
    if data.ring.exact_div(data.ring.one(), coupling) is None:
        raise ValueError("coupling constant is not invertible in the ring")
    vec = [data.ring.parse(c) for c in x]
    return [coupling * vec[0]]


PARTITIONS_2_2 = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def associator_partitions(data: FrobeniusData, x1, x2, x3, x4):
    """Contract two 3-point vertices over one edge, for all three pairings.

    Returns the three scalars (as ring fractions) for the partitions
    {12|34}, {13|24}, {14|23}.  For associative, compatible data the three
    agree; the contraction factors through the four-point amplitude.
    """
    ring = data.ring
    copair = data.copairing()
    vecs = [[ring.parse(c) for c in x] for x in (x1, x2, x3, x4)]
    r = data.rank

    def half_vertex(u, v):
        # covector index a |-> b(u * v, z_a)
        prod = data.quantum_product(u, v)
        return [
            _dot(ring, prod, [data.bilinear[m][a] for m in range(r)])
            for a in range(r)
        ]

    results = []
    for (p1, p2), (p3, p4) in PARTITIONS_2_2:
        left = half_vertex(vecs[p1], vecs[p2])
        right = half_vertex(vecs[p3], vecs[p4])
        total = Frac(ring, ring.zero())
        for a in range(r):
            if ring.is_zero(left[a]):
                continue
            for b in range(r):
                if ring.is_zero(right[b]):
                    continue
                total = total + copair[a][b] * Frac(ring, left[a] * right[b])
        results.append(total)
    return tuple(results)


# ---------------------------------------------------------------------------
# Example and randomized instances (used heavily by the verification suites)
# ---------------------------------------------------------------------------


def group_algebra_z2() -> FrobeniusData:
    """Q[Z/2] with trace = coefficient of the identity."""
    ring = RationalRing()
    one, zero = Fraction(1), Fraction(0)
    # basis (1, g), g^2 = 1
    prod = [
        [[one, zero], [zero, one]],
        [[zero, one], [one, zero]],
    ]
    return FrobeniusData(
        ring,
        labels=["1", "g"],
        quantum=prod,
        ordinary=prod,
        trace=[one, zero],
        unit=[one, zero],
    )


def dual_numbers(beta=1) -> FrobeniusData:
    """Q[x]/(x^2) with trace picking the x-coefficient (scaled by beta)."""
    ring = RationalRing()
    one, zero = Fraction(1), Fraction(0)
    prod = [
        [[one, zero], [zero, one]],
        [[zero, one], [zero, zero]],
    ]
    return FrobeniusData(
        ring,
        labels=["1", "x"],
        quantum=prod,
        ordinary=prod,
        trace=[zero, rational(beta)],
        unit=[one, zero],
    )


def random_frobenius(rng, rank: int, scaled: bool = False) -> FrobeniusData:
    """A random valid Frobenius algebra over Q of the given rank.

    Construction: the split semisimple algebra Q^rank with random nonzero
    trace weights, pushed through a random invertible change of basis.
    With ``scaled`` the quantum product is a global nonzero multiple of
    the ordinary one (still compatible with b).
    """
    ring = RationalRing()
    while True:
        weights = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]),
                            rng.choice([1, 1, 2])) for _ in range(rank)]
        basis_change = [
            [Fraction(rng.randint(-2, 2)) for _ in range(rank)] for _ in range(rank)
        ]
        from .exactalg import rational_det

        if rational_det(basis_change) != 0:
            break
    inv = _rational_inverse(basis_change)
    # ordinary structure constants in the new basis z_a = sum_i P[i][a] e_i
    P = basis_change
    oc = [[[Fraction(0)] * rank for _ in range(rank)] for _ in range(rank)]
    for a in range(rank):
        for b in range(rank):
            for c in range(rank):
                oc[a][b][c] = sum(
                    (P[i][a] * P[i][b] * inv[c][i] for i in range(rank)),
                    Fraction(0),
                )
    trace = [
        sum((P[i][a] * weights[i] for i in range(rank)), Fraction(0))
        for a in range(rank)
    ]
    if scaled:
        s = Fraction(rng.choice([2, 3, -1, -2]))
        qc = [[[s * oc[a][b][c] for c in range(rank)] for b in range(rank)]
              for a in range(rank)]
    else:
        qc = oc
    labels = [f"z{i}" for i in range(rank)]
    return FrobeniusData(ring, labels, qc, trace, ordinary=oc)


def perturbed_nonassociative(base: Optional[FrobeniusData] = None) -> FrobeniusData:
    """A rank-2 instance with one structure constant knocked off."""
    if base is None:
        base = group_algebra_z2()
    ring = base.ring
    r = base.rank
    quantum = [
        [[base.quantum[i][j][k] for k in range(r)] for j in range(r)]
        for i in range(r)
    ]
    # keep commutativity so only associativity (and compatibility) break
    bump = ring.from_fraction(1)
    quantum[0][1][0] = quantum[0][1][0] + bump
    quantum[1][0][0] = quantum[1][0][0] + bump
    data = FrobeniusData(
        ring,
        base.labels,
        quantum,
        base.trace,
        bilinear=base.bilinear,
    )
    report = data.validate(check_unit=False)
    assoc = next(c for c in report.checks if c.name == "associativity")
    if assoc.passed:
        raise RuntimeError("perturbation failed to break associativity")
    return data


def _rational_inverse(matrix):
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
