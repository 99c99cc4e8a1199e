"""Stable graphs, gluing arithmetic, and the Frobenius-algebra amplitude
evaluator for two-dimensional topological field theories.

A stable graph is the dual graph of a nodal marked curve: vertices carry a
genus and a list of incident half-edges, edges pair two half-edges
(nodes), and the remaining half-edges are the ordered legs (marked
points).  Every vertex must satisfy 2g - 2 + valence > 0, and the total
genus is the sum of vertex genera plus the first Betti number of the
graph.

Evaluation places at each vertex of type (g, n) the tensor obtained from
a pair-of-pants decomposition with 2g - 2 + n three-valent genus-zero
vertices -- the three-point tensor is b(x * y, z) with the quantum
product -- and contracts along edges with the inverse Gram matrix.  The
canonical decomposition is a deterministic left comb; invariance under
random re-decompositions is a checked property, not an assumption.

When the coefficient ring is the Novikov ring and a target dimension d is
supplied, every edge contraction carries a factor v^d, so a one-vertex
tensor of type (g, n) is weighted by v^(d * (3g - 3 + n)) and evaluation
of a connected graph of total type (g, n) by the same total weight.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .frobenius import FrobeniusData
from .rings import Frac, NovikovRing


class InstabilityError(ValueError):
    """A curve type or graph vertex violates 2g - 2 + n > 0."""


class GraphError(ValueError):
    """Malformed stable graph data."""


# ---------------------------------------------------------------------------
# Curve types and Knudsen gluing arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveType:
    g: int
    n: int

    def is_stable(self) -> bool:
        return 2 * self.g - 2 + self.n > 0


def dimension(t: CurveType) -> int:
    """Complex dimension 3(g-1) + n of the moduli of type-t curves."""
    return 3 * (t.g - 1) + t.n


def glue(t1: CurveType, t2: CurveType, s: int) -> CurveType:
    """Glue along s pairs of points: (g, r+s), (h, s+t) -> (g+h+s-1, r+t)."""
    if s < 1:
        raise ValueError("gluing needs at least one pair of points")
    if t1.n < s or t2.n < s:
        raise ValueError("curve types lack enough marked points to glue")
    result = CurveType(t1.g + t2.g + s - 1, t1.n + t2.n - 2 * s)
    if not result.is_stable():
        raise InstabilityError(f"glued type {result} is unstable")
    return result


def self_glue(t: CurveType) -> CurveType:
    """Glue two marked points of one curve: (g, n) -> (g+1, n-2)."""
    if t.n < 2:
        raise ValueError("self-gluing needs two marked points")
    result = CurveType(t.g + 1, t.n - 2)
    if not result.is_stable():
        raise InstabilityError(f"self-glued type {result} is unstable")
    return result


# ---------------------------------------------------------------------------
# Stable graphs
# ---------------------------------------------------------------------------


class StableGraph:
    """vertices: list of (genus, [half-edge names]); edges pair half-edges;
    legs are the ordered unpaired half-edges."""

    def __init__(self, vertices, edges, legs):
        self.vertices = [(int(g), list(hes)) for g, hes in vertices]
        self.edges = [tuple(e) for e in edges]
        self.legs = list(legs)
        self.validate()

    def validate(self):
        owner = {}
        for vi, (g, hes) in enumerate(self.vertices):
            if g < 0:
                raise GraphError(f"vertex {vi} has negative genus")
            for h in hes:
                if h in owner:
                    raise GraphError(f"half-edge {h!r} appears on two vertices")
                owner[h] = vi
        used = set()
        for a, b in self.edges:
            if a == b:
                raise GraphError(f"edge pairs a half-edge {a!r} with itself")
            for h in (a, b):
                if h not in owner:
                    raise GraphError(f"edge endpoint {h!r} is not a half-edge")
                if h in used:
                    raise GraphError(f"half-edge {h!r} lies on two edges")
                used.add(h)
        unpaired = [h for h in owner if h not in used]
        if set(self.legs) != set(unpaired) or len(self.legs) != len(unpaired):
            raise GraphError(
                f"legs {self.legs!r} do not match unpaired half-edges {sorted(map(str, unpaired))!r}"
            )
        for vi, (g, hes) in enumerate(self.vertices):
            if 2 * g - 2 + len(hes) <= 0:
                raise GraphError(
                    f"vertex {vi} of genus {g} and valence {len(hes)} is unstable"
                )
        self._owner = owner

    def vertex_of(self, half_edge):
        return self._owner[half_edge]

    def num_components(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(self.vertex_of(a)), find(self.vertex_of(b))
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for v in range(len(self.vertices))})

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + self.num_components()

    def total_genus(self) -> int:
        return sum(g for g, _ in self.vertices) + self.betti()

    def curve_type(self) -> CurveType:
        return CurveType(self.total_genus(), len(self.legs))

    def to_obj(self) -> dict:
        return {
            "vertices": [{"g": g, "halfedges": list(hes)} for g, hes in self.vertices],
            "edges": [list(e) for e in self.edges],
            "legs": list(self.legs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2)

    @classmethod
    def from_obj(cls, obj: dict) -> "StableGraph":
        return cls(
            [(v["g"], v["halfedges"]) for v in obj["vertices"]],
            obj.get("edges", []),
            obj.get("legs", []),
        )

    @classmethod
    def from_json(cls, text: str) -> "StableGraph":
        return cls.from_obj(json.loads(text))

    def __repr__(self):
        vt = ", ".join(f"({g};{','.join(map(str, hes))})" for g, hes in self.vertices)
        return f"StableGraph[{vt} | edges={self.edges} | legs={self.legs}]"


# ---------------------------------------------------------------------------
# Amplitudes
# ---------------------------------------------------------------------------


class Amplitude:
    """Element of the legs-indexed tensor power of the Frobenius module.

    ``values`` maps index tuples (one slot per leg, each in range(rank))
    to ring fractions; missing keys are zero.
    """

    __slots__ = ("ring", "rank", "legs", "values")

    def __init__(self, ring, rank, legs, values):
        self.ring = ring
        self.rank = rank
        self.legs = tuple(legs)
        self.values = {k: v for k, v in values.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, ring, rank, value: Frac) -> "Amplitude":
        return cls(ring, rank, (), {(): value})

    def scalar_value(self) -> Frac:
        if self.legs:
            raise ValueError("amplitude has open legs")
        return self.values.get((), Frac(self.ring, self.ring.zero()))

    def scale(self, element) -> "Amplitude":
        w = Frac(self.ring, element)
        return Amplitude(
            self.ring, self.rank, self.legs,
            {k: v * w for k, v in self.values.items()},
        )

    def entry(self, key) -> Frac:
        return self.values.get(tuple(key), Frac(self.ring, self.ring.zero()))

    def tensor(self, other: "Amplitude") -> "Amplitude":
        out = {}
        for k1, v1 in self.values.items():
            for k2, v2 in other.values.items():
                out[k1 + k2] = v1 * v2
        return Amplitude(self.ring, self.rank, self.legs + other.legs, out)

    def with_legs(self, leg_names) -> "Amplitude":
        """Rename legs positionally (values are shared, not copied)."""
        leg_names = tuple(leg_names)
        if len(leg_names) != len(self.legs):
            raise ValueError("leg renaming must preserve arity")
        return Amplitude(self.ring, self.rank, leg_names, self.values)

    def permute_to(self, leg_order) -> "Amplitude":
        leg_order = tuple(leg_order)
        if leg_order == self.legs:
            return self
        pos = {leg: i for i, leg in enumerate(self.legs)}
        if set(leg_order) != set(self.legs) or len(leg_order) != len(self.legs):
            raise ValueError("leg permutation must use exactly the same labels")
        perm = [pos[leg] for leg in leg_order]
        out = {}
        for k, v in self.values.items():
            out[tuple(k[p] for p in perm)] = v
        return Amplitude(self.ring, self.rank, leg_order, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Amplitude) or self.legs != other.legs:
            return NotImplemented if not isinstance(other, Amplitude) else False
        zero = Frac(self.ring, self.ring.zero())
        keys = set(self.values) | set(other.values)
        return all(
            self.values.get(k, zero) == other.values.get(k, zero) for k in keys
        )

    def render(self) -> str:
        if not self.values:
            return "0"
        bits = []
        for k in sorted(self.values):
            label = "".join(str(i) for i in k)
            val = self.values[k].render()
            bits.append(f"[{label}] {val}" if k else val)
        return "; ".join(bits)

    def __repr__(self):
        return f"Amplitude(legs={self.legs}, {self.render()})"


def _join(amp_a: Amplitude, leg_a, amp_b: Amplitude, leg_b, copair) -> Amplitude:
    """Contract leg_a of amp_a against leg_b of amp_b through the copairing."""
    ia = amp_a.legs.index(leg_a)
    ib = amp_b.legs.index(leg_b)
    rank = amp_a.rank
    slices_b = defaultdict(list)
    for key, val in amp_b.values.items():
        slices_b[key[ib]].append((key[:ib] + key[ib + 1:], val))
    out = {}
    for key_a, val_a in amp_a.values.items():
        a = key_a[ia]
        rest_a = key_a[:ia] + key_a[ia + 1:]
        for b in range(rank):
            w = copair[a][b]
            if w.is_zero():
                continue
            for rest_b, val_b in slices_b.get(b, ()):
                k = rest_a + rest_b
                term = val_a * w * val_b
                acc = out.get(k)
                out[k] = term if acc is None else acc + term
    legs = tuple(l for l in amp_a.legs if l != leg_a) + tuple(
        l for l in amp_b.legs if l != leg_b
    )
    return Amplitude(amp_a.ring, rank, legs, out)


def _self_join(amp: Amplitude, leg_a, leg_b, copair) -> Amplitude:
    """Contract two legs of the same amplitude through the copairing."""
    ia = amp.legs.index(leg_a)
    ib = amp.legs.index(leg_b)
    out = {}
    for key, val in amp.values.items():
        w = copair[key[ia]][key[ib]]
        if w.is_zero():
            continue
        k = tuple(x for i, x in enumerate(key) if i not in (ia, ib))
        term = val * w
        acc = out.get(k)
        out[k] = term if acc is None else acc + term
    legs = tuple(l for i, l in enumerate(amp.legs) if i not in (ia, ib))
    return Amplitude(amp.ring, amp.rank, legs, out)


# ---------------------------------------------------------------------------
# Vertex tensors via pair-of-pants decompositions
# ---------------------------------------------------------------------------


def _pants(frob: FrobeniusData, legs) -> Amplitude:
    ring = frob.ring
    r = frob.rank
    values = {}
    for i, j, k in itertools.product(range(r), repeat=3):
        v = frob.vertex3(i, j, k)
        if not ring.is_zero(v):
            values[(i, j, k)] = Frac(ring, v)
    return Amplitude(ring, r, tuple(legs), values)


def _edge_weight(frob: FrobeniusData, novikov_dim: int):
    if novikov_dim:
        if not isinstance(frob.ring, NovikovRing):
            raise ValueError(
                "per-edge v-weights require a Novikov coefficient ring"
            )
        return frob.ring.v_power(novikov_dim)
    return None


def _sphere_amplitude_comb(frob: FrobeniusData, legs, copair) -> Amplitude:
    """Genus-zero tensor on the given legs, deterministic left comb."""
    m = len(legs)
    if m == 3:
        return _pants(frob, legs)
    amp = _pants(frob, (legs[0], legs[1], ("_comb", 0)))
    for t in range(1, m - 2):
        last = m - 3 == t  # next pants closes the comb
        if last:
            nxt = _pants(frob, (("_comb*", t), legs[t + 1], legs[t + 2]))
        else:
            nxt = _pants(frob, (("_comb*", t), legs[t + 1], ("_comb", t)))
        amp = _join(amp, ("_comb", t - 1), nxt, ("_comb*", t), copair)
    return amp


def _sphere_amplitude_random(frob: FrobeniusData, legs, copair, rng) -> Amplitude:
    """Genus-zero tensor built from a random trivalent tree on the legs."""
    legs = list(legs)
    counter = itertools.count()

    def build(leaf_legs):
        if len(leaf_legs) == 3:
            return _pants(frob, leaf_legs)
        k = len(leaf_legs)
        size = rng.randint(2, k - 2)
        chosen = rng.sample(range(k), size)
        left = [leaf_legs[i] for i in chosen]
        right = [leaf_legs[i] for i in range(k) if i not in set(chosen)]
        eid = next(counter)
        amp_l = build(left + [("_tree", eid, 0)])
        amp_r = build(right + [("_tree", eid, 1)])
        return _join(amp_l, ("_tree", eid, 0), amp_r, ("_tree", eid, 1), copair)

    return build(legs)


def vertex_tensor(frob: FrobeniusData, g: int, n: int, leg_names=None,
                  novikov_dim: int = 0, rng=None) -> Amplitude:
    """Amplitude of a single vertex of type (g, n).

    Built from 2g - 2 + n pants: a genus-zero tensor on n + 2g legs with g
    handle pairs contracted.  Deterministic left comb unless ``rng`` is
    given, in which case the pants tree, the handle pairing, and the
    contraction order are randomized.
    """
    t = CurveType(g, n)
    if not t.is_stable():
        raise InstabilityError(f"vertex type ({g}, {n}) is unstable")
    if leg_names is None:
        leg_names = tuple(range(n))
    leg_names = tuple(leg_names)
    if len(leg_names) != n:
        raise ValueError("leg name count does not match valence")
    if rng is None:
        # the canonical tensor depends only on (g, n); cache it per frob
        cache = getattr(frob, "_vertex_cache", None)
        if cache is None:
            cache = frob._vertex_cache = {}
        cached = cache.get((g, n, novikov_dim))
        if cached is not None:
            return cached.with_legs(leg_names)
        built = _vertex_tensor_uncached(frob, g, n, novikov_dim, None)
        cache[(g, n, novikov_dim)] = built
        return built.with_legs(leg_names)
    return _vertex_tensor_uncached(frob, g, n, novikov_dim, rng).with_legs(leg_names)


def _vertex_tensor_uncached(frob: FrobeniusData, g: int, n: int,
                            novikov_dim: int, rng) -> Amplitude:
    leg_names = tuple(range(n))
    copair = frob.copairing()
    aux = [("_handle", i) for i in range(2 * g)]
    all_legs = list(leg_names) + aux
    if rng is None:
        amp = _sphere_amplitude_comb(frob, all_legs, copair)
        pairing = [(aux[2 * i], aux[2 * i + 1]) for i in range(g)]
    else:
        amp = _sphere_amplitude_random(frob, all_legs, copair, rng)
        shuffled = aux[:]
        rng.shuffle(shuffled)
        pairing = [(shuffled[2 * i], shuffled[2 * i + 1]) for i in range(g)]
        rng.shuffle(pairing)
    for a, b in pairing:
        amp = _self_join(amp, a, b, copair)
    weight = _edge_weight(frob, novikov_dim)
    if weight is not None:
        internal_edges = 3 * g - 3 + n
        if internal_edges > 0:
            amp = amp.scale(weight ** internal_edges)
    return amp.permute_to(leg_names)


# ---------------------------------------------------------------------------
# Graph evaluation
# ---------------------------------------------------------------------------


def evaluate(graph: StableGraph, frob: FrobeniusData, novikov_dim: int = 0,
             rng=None, edge_order=None, require_valid: bool = True) -> Amplitude:
    """Contract vertex tensors along all edges; result indexed by the legs.

    The result does not depend on the contraction order, and for valid
    Frobenius data not on the vertex decompositions either; ``rng``
    randomizes the decompositions (used by the invariance check).
    ``require_valid=False`` lets the invariance check run on deliberately
    broken data to exhibit a discrepancy.
    """
    if require_valid:
        frob.require_valid()
    copair = frob.copairing()
    amps = []
    for g, hes in graph.vertices:
        amps.append(
            vertex_tensor(frob, g, len(hes), tuple(hes),
                          novikov_dim=novikov_dim, rng=rng)
        )
    edges = list(graph.edges)
    if edge_order is not None:
        edges = [edges[i] for i in edge_order]
    elif rng is not None:
        rng.shuffle(edges)
    weight = _edge_weight(frob, novikov_dim)
    for a, b in edges:
        pos_a = next(i for i, amp in enumerate(amps) if a in amp.legs)
        pos_b = next(i for i, amp in enumerate(amps) if b in amp.legs)
        if pos_a == pos_b:
            amps[pos_a] = _self_join(amps[pos_a], a, b, copair)
        else:
            joined = _join(amps[pos_a], a, amps[pos_b], b, copair)
            amps = [amp for i, amp in enumerate(amps) if i not in (pos_a, pos_b)]
            amps.append(joined)
        if weight is not None:
            amps[-1] = amps[-1].scale(weight)
    total = amps[0]
    for amp in amps[1:]:
        total = total.tensor(amp)
    return total.permute_to(graph.legs)


@dataclass
class InvarianceReport:
    graph: StableGraph
    trials: int
    equal: bool
    witness: Optional[str] = None

    def render(self) -> str:
        head = f"gluing invariance on {self.graph!r}: "
        if self.equal:
            return head + f"all {self.trials} re-decompositions agree"
        return head + f"DISCREPANCY ({self.witness})"


def check_gluing_invariance(graph: StableGraph, frob: FrobeniusData,
                            trials: int, rng, novikov_dim: int = 0,
                            require_valid: bool = True) -> InvarianceReport:
    """Re-evaluate under random re-decompositions and compare exactly.

    A discrepancy is reported as data, not raised; run with
    ``require_valid=False`` to probe deliberately broken inputs.
    """
    baseline = evaluate(graph, frob, novikov_dim=novikov_dim,
                        require_valid=require_valid)
    for t in range(trials):
        alt = evaluate(graph, frob, novikov_dim=novikov_dim, rng=rng,
                       require_valid=require_valid)
        if alt != baseline:
            return InvarianceReport(
                graph, trials, False,
                witness=f"trial {t}: {alt.render()} != {baseline.render()}",
            )
    return InvarianceReport(graph, trials, True)


@dataclass
class PantsProductReport:
    g: int
    h: int
    equal: bool
    lhs: Amplitude
    rhs: Amplitude

    def render(self) -> str:
        rel = "==" if self.equal else "!="
        return (
            f"pants product g={self.g}, h={self.h}: "
            f"{self.lhs.render()} {rel} {self.rhs.render()}"
        )


def pants_product_check(frob: FrobeniusData, g: int, h: int) -> PantsProductReport:
    """Check that one-leg amplitudes multiply through a pair of pants.

    Builds the graph [(g,1)]--pants--[(h,1)] with one free leg and
    compares its amplitude with the one-vertex (g+h, 1) tensor.
    """
    if g < 1 or h < 1:
        raise ValueError("pants product needs g, h >= 1 for stability")
    graph = StableGraph(
        vertices=[(g, ["a"]), (0, ["b", "c", "out"]), (h, ["d"])],
        edges=[("a", "b"), ("d", "c")],
        legs=["out"],
    )
    lhs = evaluate(graph, frob)
    rhs = vertex_tensor(frob, g + h, 1, ("out",))
    return PantsProductReport(g, h, lhs == rhs, lhs, rhs)


# ---------------------------------------------------------------------------
# Graph catalogs: exhaustive enumeration up to isomorphism, and random
# degeneration walks.  The enumeration representation is
# (genera, edges, legs) with vertices integer-indexed, edges a sorted
# tuple of sorted index pairs (self-loops allowed), and legs[i] the vertex
# carrying the i-th (labelled) leg.
# ---------------------------------------------------------------------------


def _enum_canonical(genera, edges, legs):
    nv = len(genera)
    legs_at = [[] for _ in range(nv)]
    for label, v in enumerate(legs):
        legs_at[v].append(label)
    valence = [0] * nv
    selfloops = [0] * nv
    neighbors = [[] for _ in range(nv)]
    for a, b in edges:
        valence[a] += 1
        valence[b] += 1
        if a == b:
            selfloops[a] += 1
        neighbors[a].append(b)
        neighbors[b].append(a)
    inv = [
        (genera[v], tuple(legs_at[v]), valence[v], selfloops[v])
        for v in range(nv)
    ]
    # one neighbor-refinement round
    inv2 = [
        (inv[v], tuple(sorted(inv[u] for u in neighbors[v])))
        for v in range(nv)
    ]
    order0 = sorted(range(nv), key=inv2.__getitem__)
    classes = []
    for v in order0:
        if classes and inv2[classes[-1][-1]] == inv2[v]:
            classes[-1].append(v)
        else:
            classes.append([v])

    def build_key(order):
        relabel = [0] * nv
        for i, v in enumerate(order):
            relabel[v] = i
        e2 = sorted(
            (relabel[a], relabel[b]) if relabel[a] <= relabel[b]
            else (relabel[b], relabel[a])
            for a, b in edges
        )
        return (
            tuple(genera[v] for v in order),
            tuple(e2),
            tuple(relabel[v] for v in legs),
        )

    if all(len(c) == 1 for c in classes):
        return build_key([c[0] for c in classes])
    best = None
    for perm_parts in itertools.product(
        *(itertools.permutations(c) for c in classes)
    ):
        key = build_key([v for part in perm_parts for v in part])
        if best is None or key < best:
            best = key
    return best


def _enum_stable(genus, degree) -> bool:
    return 2 * genus - 2 + degree > 0


def _enum_children(genera, edges, legs):
    """All one-step degenerations (vertex splits and genus reductions)."""
    nv = len(genera)
    for v in range(nv):
        # genus reduction: g_v -> g_v - 1 plus a self-loop
        if genera[v] >= 1:
            g2 = list(genera)
            g2[v] -= 1
            e2 = tuple(sorted(edges + ((v, v),)))
            yield tuple(g2), e2, tuple(legs)
        # splits: distribute genus, legs, and edge endpoints over two parts
        slots = []
        for li, lv in enumerate(legs):
            if lv == v:
                slots.append(("leg", li))
        for ei, (a, b) in enumerate(edges):
            if a == v:
                slots.append(("end", ei, 0))
            if b == v:
                slots.append(("end", ei, 1))
        new_index = nv
        full = (1 << len(slots)) - 1
        for gsplit in range(genera[v] // 2 + 1):
            g1, gg2 = gsplit, genera[v] - gsplit
            for mask in range(1 << len(slots)):
                # for an even genus split, mask and its complement give
                # isomorphic children; keep one representative
                if g1 == gg2 and mask > (full ^ mask):
                    continue
                deg1 = 1 + bin(mask).count("1")
                deg2 = 1 + len(slots) - (deg1 - 1)
                if not (_enum_stable(g1, deg1) and _enum_stable(gg2, deg2)):
                    continue
                genera2 = list(genera) + [gg2]
                genera2[v] = g1
                legs2 = list(legs)
                new_edges = [list(e) for e in edges]
                for si, slot in enumerate(slots):
                    to_second = not (mask >> si) & 1
                    if not to_second:
                        continue
                    if slot[0] == "leg":
                        legs2[slot[1]] = new_index
                    else:
                        new_edges[slot[1]][slot[2]] = new_index
                new_edges.append([v, new_index])
                e2 = tuple(
                    sorted(tuple(sorted((a, b))) for a, b in new_edges)
                )
                yield tuple(genera2), e2, tuple(legs2)


def enumerate_stable_graphs(g: int, n: int):
    """All isomorphism classes of connected stable graphs of type (g, n).

    Breadth-first iterated degeneration from the smooth one-vertex graph,
    deduplicated by canonical form.  Legs are labelled, so graphs that
    differ only by which marked points sit on which component count as
    distinct (as they should).
    """
    if not _enum_stable(g, n):
        raise InstabilityError(f"type ({g}, {n}) is unstable")
    start = ((g,), (), (0,) * n)
    seen = {_enum_canonical(*start): start}
    raw_seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for item in frontier:
            for child in _enum_children(*item):
                if child in raw_seen:
                    continue
                raw_seen.add(child)
                key = _enum_canonical(*child)
                if key not in seen:
                    seen[key] = child
                    nxt.append(child)
        frontier = nxt
    return [_materialize(*seen[k]) for k in sorted(seen)]


def _materialize(genera, edges, legs) -> StableGraph:
    """Turn an enumeration triple into a StableGraph with named half-edges."""
    half_edges = defaultdict(list)
    for li, v in enumerate(legs):
        half_edges[v].append(f"p{li}")
    edge_pairs = []
    for ei, (a, b) in enumerate(edges):
        ha, hb = f"e{ei}a", f"e{ei}b"
        half_edges[a].append(ha)
        half_edges[b].append(hb)
        edge_pairs.append((ha, hb))
    vertices = [(genera[v], half_edges[v]) for v in range(len(genera))]
    return StableGraph(vertices, edge_pairs, [f"p{i}" for i in range(len(legs))])


def random_stable_graph(rng, max_vertices: int = 6, max_genus: int = 3,
                        max_legs: int = 4) -> StableGraph:
    """A random connected stable graph built by a random degeneration walk."""
    while True:
        g = rng.randint(0, max_genus)
        n = rng.randint(0, max_legs)
        if _enum_stable(g, n):
            break
    state = ((g,), (), (0,) * n)
    steps = rng.randint(0, 2 * max_vertices)
    for _ in range(steps):
        children = [
            c for c in _enum_children(*state) if len(c[0]) <= max_vertices
        ]
        if not children:
            break
        state = children[rng.randrange(len(children))]
    return _materialize(*state)
