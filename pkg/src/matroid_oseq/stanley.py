"""Matroid h-vector checks, explicit pure order ideals and rank-3 certificates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb
from typing import Any, Iterable, Sequence

from .bits import elements_of, popcount
from .complexes import (
    ComplexError,
    SimplicialComplex,
    ci_degrees,
    circuits,
    coloop_mask,
    deletion,
    h_vector,
    init_degree,
    is_complete_intersection,
    is_cone,
    is_matroid,
    link,
    nonzero_part,
    series_classes,
)
from .orderideals import OrderIdeal, downward_closure, monomials_of_degree
from .osequences import (
    first_difference,
    is_O_sequence,
    is_pure_O_sequence,
    nondecreasing_prefix,
    shifted_sum,
)
from .search import DEFAULT_CAP, SearchCapExceeded
from .verdict import Verdict

DEFAULT_ALPHAS = (Fraction(1), Fraction(3, 2), Fraction(2))


def brown_colbourn_values(h: Sequence[int], alpha: Fraction) -> list[Fraction]:
    """(-1)^j * sum_{i<=j} (-alpha)^i h_i for j = 0..len(h)-1."""
    out = []
    acc = Fraction(0)
    for j, hj in enumerate(h):
        acc += (-alpha) ** j * hj
        out.append(acc if j % 2 == 0 else -acc)
    return out


def brown_colbourn_check(h: Sequence[int], alphas: Iterable[Any] = DEFAULT_ALPHAS) -> Verdict:
    """Alternating partial-sum inequalities, strict for alpha > 1.

    Applied to the nonzero part of ``h``: for a cone the trailing zeros only
    repeat the inequalities of the complex it is a cone over.
    """
    h = nonzero_part(h)
    checked = 0
    for a in alphas:
        alpha = Fraction(a)
        if alpha < 1:
            raise ValueError("alpha must be at least 1")
        for j, value in enumerate(brown_colbourn_values(h, alpha)):
            checked += 1
            if value < 0 or (alpha > 1 and value == 0):
                return Verdict(
                    False,
                    "brown_colbourn",
                    counterexample={"h": list(h), "j": j, "alpha": str(alpha), "value": str(value)},
                )
    return Verdict(True, "brown_colbourn", details={"checked": checked})


def _padded(seq: Sequence[int], length: int) -> list[int]:
    return list(seq) + [0] * (length - len(seq))


def _check_pair(h: Sequence[int], h2: Sequence[int]) -> None:
    if len(h2) != len(h) - 1 or not h2:
        raise ValueError(f"need socle degrees e and e-1, got {list(h)} and {list(h2)}")
    if h[-1] <= 0 or h2[-1] <= 0:
        raise ValueError("sequences must end in a nonzero entry")


def ccc_inequalities(h: Sequence[int], h2: Sequence[int]) -> bool:
    """The two inequality families, without the purity requirement."""
    _check_pair(h, h2)
    e = len(h) - 1
    dh, dh2 = first_difference(h), _padded(first_difference(h2), e + 1)
    if any(dh2[i] > dh[i] for i in range(ceil(e / 2) + 1)):
        return False
    return all(h2[i] <= h[i] for i in range(e))


def ccc_hypotheses(h: Sequence[int], h2: Sequence[int], cap: int = DEFAULT_CAP) -> bool:
    """Inequalities plus purity of both inputs (an undecided purity counts as False)."""
    if not ccc_inequalities(h, h2):
        return False
    return is_pure_O_sequence(h, cap).passed and is_pure_O_sequence(h2, cap).passed


def ccc_test(h: Sequence[int], h2: Sequence[int], cap: int = DEFAULT_CAP) -> Verdict:
    """Purity of the shifted sum of a pair satisfying the hypotheses."""
    if not ccc_hypotheses(h, h2, cap):
        raise ValueError(f"hypotheses fail for {list(h)} and {list(h2)}")
    total = shifted_sum(h, h2)
    v = is_pure_O_sequence(total, cap)
    details = {"shifted_sum": total}
    if v.outcome is False:
        return Verdict(
            False,
            v.decided_by,
            counterexample={"h": list(h), "h2": list(h2), "shifted_sum": total, "e": len(h) - 1},
            details=details,
        )
    return Verdict(v.outcome, v.decided_by, witness=v.witness, details=details)


def _lift(m: Sequence[int], r: int, last: int = 0) -> tuple[int, ...]:
    """Embed ``m`` into ``r`` variables, putting ``last`` on y_r."""
    return tuple(m) + (0,) * (r - 1 - len(m)) + (last,)


def w2_construction(W: OrderIdeal, W2: OrderIdeal) -> OrderIdeal:
    """Maxima of ``W`` together with y_r times the maxima of ``W2`` (y_r fresh).

    ``W`` is pure of socle degree 3 using all of its r-1 variables, ``W2`` is
    pure of socle degree 2 in r' <= r-1 variables.  The rank vector of the
    result is (1, r, a_1, b+c) with a_1 >= a + r'.
    """
    if not (W.is_pure and W.socle_degree == 3):
        raise ValueError("W must be pure of socle degree 3")
    if not (W2.is_pure and W2.socle_degree == 2):
        raise ValueError("W2 must be pure of socle degree 2")
    hw, hw2 = W.rank_vector(), W2.rank_vector()
    if hw[1] != W.r:
        raise ValueError("W must use every one of its variables")
    if W2.r > W.r:
        raise ValueError(f"W2 has {W2.r} variables, more than the {W.r} of W")
    r = W.r + 1
    maxima = [_lift(m, r) for m in W.maxima] + [_lift(n, r, 1) for n in W2.maxima]
    out = downward_closure(r, maxima)
    h = out.rank_vector()
    b, c = hw[3], hw2[2]
    assert h[1] == r and h[3] == b + c and h[2] >= hw[2] + hw2[1], h
    return out


def ci_witness(degrees: Sequence[int]) -> OrderIdeal:
    """Order ideal with the single maximal monomial prod y_i^(d_i - 1)."""
    if any(d < 2 for d in degrees):
        raise ValueError("complete intersection degrees must be at least 2")
    return downward_closure(len(degrees), [tuple(d - 1 for d in degrees)])


def bcbc_maxima(r: int) -> list[tuple[int, ...]]:
    if r < 2:
        raise ValueError("need r >= 2")
    top = _lift((), r, 3)
    return [top] + [_lift(m, r, 1) for m in monomials_of_degree(r - 1, 2)]


def bcbc_witness(r: int) -> OrderIdeal:
    """y_r^3 and y_r * M for every degree-2 monomial M in y_1..y_{r-1}.

    Rank vector (1, r, C(r+1, 2), C(r, 2) + 1).
    """
    return downward_closure(r, bcbc_maxima(r))


def init_ge_3_witness(r: int, top: int) -> OrderIdeal:
    """Pure order ideal with rank vector (1, r, C(r+1, 2), top).

    Starts from the bcbc maxima, which already cover every monomial of degree
    at most 2, and adds further cubes in lex order.
    """
    base = bcbc_maxima(r)
    if not len(base) <= top <= comb(r + 2, 3):
        raise ValueError(f"top entry {top} outside [{len(base)}, {comb(r + 2, 3)}]")
    chosen = set(base)
    for m in monomials_of_degree(r, 3):
        if len(chosen) == top:
            break
        chosen.add(m)
    return downward_closure(r, chosen)


def exceptional_witness(r: int) -> OrderIdeal:
    """Maxima y_i^2 y_j for i < j; rank vector (1, r, C(r,2) + r - 1, C(r,2))."""
    if r < 3:
        raise ValueError("need r >= 3")
    maxima = []
    for i, j in itertools.combinations(range(r), 2):
        m = [0] * r
        m[i], m[j] = 2, 1
        maxima.append(tuple(m))
    return downward_closure(r, maxima)


def _require_matroid(c: SimplicialComplex) -> None:
    if not is_matroid(c):
        raise ComplexError("input is not a matroid")


def _two_circuits(c: SimplicialComplex) -> list[int]:
    return [m for m in circuits(c) if popcount(m) == 2]


def link_deletion_inequalities(c: SimplicialComplex, v: int) -> Verdict:
    """h and its first difference of the link at ``v`` stay below the deletion's, i <= 2."""
    _require_matroid(c)
    if c.rank != 3:
        raise ComplexError(f"needs a 2-dimensional matroid, got rank {c.rank}")
    if is_cone(c):
        # for a cone the first-difference inequality can fail (the link may
        # have h_1 = 0); the lemma is only ever used on non-cones
        raise ComplexError("input is a cone")
    if init_degree(c) != 2:
        raise ComplexError("needs a circuit of size 2")
    bit = 1 << (v - 1)
    if not any(m & bit for m in _two_circuits(c)):
        raise ComplexError(f"vertex {v} lies on no circuit of size 2")
    hl = _padded(h_vector(link(c, v)), 3)[:3]
    hd = _padded(h_vector(deletion(c, v)), 3)[:3]
    dl, dd = first_difference(hl), first_difference(hd)
    details = {"h_link": hl, "h_deletion": hd}
    for i in range(3):
        if hl[i] > hd[i] or dl[i] > dd[i]:
            return Verdict(
                False,
                "link_deletion_inequalities",
                counterexample={"facets": c.facet_lists(), "n": c.n, "vertex": v, "index": i, **details},
            )
    return Verdict(True, "link_deletion_inequalities", details=details)


def stanley_check(c: SimplicialComplex, cap: int = DEFAULT_CAP) -> Verdict:
    """Is the nonzero part of h(c) a pure O-sequence?"""
    _require_matroid(c)
    h = nonzero_part(h_vector(c))
    if is_complete_intersection(c):
        return Verdict(True, "ci_witness", witness=ci_witness(ci_degrees(c)), details={"h": h})
    v = is_pure_O_sequence(h, cap)
    if v.outcome is False:
        return Verdict(
            False,
            v.decided_by,
            counterexample={"n": c.n, "facets": c.facet_lists(), "h": h},
        )
    return Verdict(v.outcome, v.decided_by, witness=v.witness, details={"h": h})


CASES = (
    "cone_reduction",
    "complete_intersection",
    "dim_le_1",
    "init_ge_3",
    "exceptional_join",
    "inductive_vertex",
)


@dataclass(frozen=True)
class StanleyCertificate:
    """One node of the rank-3 case analysis.

    ``h`` is the nonzero part of the node's h-vector.  Inductive nodes have
    the deletion and the link (in that order) as children; a cone node has
    the complex with its coloops deleted as its only child.
    """

    case: str
    h: tuple[int, ...]
    witness: OrderIdeal
    vertex: int | None = None
    children: tuple[StanleyCertificate, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    def verify(self) -> bool:
        """Recheck every witness and every inductive identity in the tree."""
        if self.case not in CASES:
            return False
        w = self.witness
        if not w.is_pure or w.rank_vector() != list(self.h):
            return False
        if self.case == "cone_reduction":
            if len(self.children) != 1 or self.children[0].h != self.h:
                return False
        elif self.case == "inductive_vertex":
            if len(self.children) != 2:
                return False
            hd, hl = self.children[0].h, self.children[1].h
            if len(hl) != len(hd) - 1 or shifted_sum(hd, hl) != list(self.h):
                return False
            if not ccc_inequalities(hd, hl):
                return False
        elif self.children:
            return False
        return all(child.verify() for child in self.children)

    def nodes(self) -> int:
        return 1 + sum(child.nodes() for child in self.children)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"case": self.case}
        if self.vertex is not None:
            out["vertex"] = self.vertex
        out["h"] = list(self.h)
        out["witness"] = self.witness.to_json()
        out.update(self.extra)
        out["children"] = [child.to_json() for child in self.children]
        return out


def _search_witness(h: Sequence[int], cap: int) -> OrderIdeal:
    v = is_pure_O_sequence(h, cap)
    if v.outcome is False:
        raise ComplexError(f"case analysis violated: {list(h)} has no pure witness")
    if v.witness is None:
        # undecided, or decided pure by a closed form whose witness search ran out
        raise SearchCapExceeded(f"search cap {cap} hit while certifying {list(h)}")
    return v.witness


def _exceptional_structure(c: SimplicialComplex) -> int | None:
    """r when the circuits are one pair plus every 3-subset of the rest."""
    cs = [m for m in circuits(c) if popcount(m) > 1]
    pairs = [m for m in cs if popcount(m) == 2]
    if len(pairs) != 1:
        return None
    rest = elements_of(c.vertices & ~pairs[0])
    if len(rest) < 4:
        return None
    triples = {sum(1 << (x - 1) for x in t) for t in itertools.combinations(rest, 3)}
    if set(cs) != triples | {pairs[0]}:
        return None
    return popcount(c.vertices) - 3


def inductive_vertex(c: SimplicialComplex) -> int | None:
    """Smallest vertex on a 2-circuit whose deletion and link are not cones."""
    on_pairs = 0
    for m in _two_circuits(c):
        on_pairs |= m
    for v in elements_of(on_pairs):
        if not is_cone(deletion(c, v)) and not is_cone(link(c, v)):
            return v
    return None


def rank3_certificate(c: SimplicialComplex, cap: int = DEFAULT_CAP) -> StanleyCertificate:
    """Build the case tree of the rank-3 argument, with a witness at every node.

    Loops are ignored throughout; they do not change h-vectors.
    """
    if c.rank > 3:
        raise ComplexError("out of theorem scope: rank above 3")
    _require_matroid(c)
    return _certify(c, cap)


@lru_cache(maxsize=4096)
def _certify(c: SimplicialComplex, cap: int) -> StanleyCertificate:
    h = tuple(nonzero_part(h_vector(c)))
    cmask = coloop_mask(c)
    if cmask:
        stripped = c
        for v in elements_of(cmask):
            stripped = deletion(stripped, v)
        child = _certify(stripped, cap)
        return StanleyCertificate(
            "cone_reduction", h, child.witness, children=(child,), extra={"coloops": elements_of(cmask)}
        )
    if is_complete_intersection(c):
        return StanleyCertificate("complete_intersection", h, ci_witness(ci_degrees(c)))
    if c.rank <= 2:
        return StanleyCertificate("dim_le_1", h, _search_witness(h, cap))
    r = h[1]
    if init_degree(c) >= 3:
        if h[2] != comb(r + 1, 2) or h[3] < comb(r, 2) + 1:
            raise ComplexError(f"case analysis violated: init >= 3 with h={list(h)}")
        return StanleyCertificate("init_ge_3", h, init_ge_3_witness(r, h[3]))
    er = _exceptional_structure(c)
    if er is not None:
        w = exceptional_witness(er)
        if w.rank_vector() != list(h):
            raise ComplexError(f"case analysis violated: exceptional h={list(h)}")
        return StanleyCertificate("exceptional_join", h, w)
    v = inductive_vertex(c)
    if v is None:
        raise ComplexError("case analysis violated: no inductive vertex")
    dele, lk = _certify(deletion(c, v), cap), _certify(link(c, v), cap)
    if shifted_sum(dele.h, lk.h) != list(h):
        raise ComplexError(f"case analysis violated: shifted-sum identity at vertex {v}")
    if not ccc_inequalities(dele.h, lk.h):
        raise ComplexError(f"case analysis violated: hypotheses fail at vertex {v}")
    return StanleyCertificate("inductive_vertex", h, _search_witness(h, cap), vertex=v, children=(dele, lk))


SHAPES = {
    (1, (2,)): "two_points",
    (2, (3,)): "triangle_boundary",
    (2, (2, 2)): "four_cycle",
    (3, (4,)): "tetrahedron_boundary",
    (3, (2, 3)): "bipyramid",
    (3, (2, 2, 2)): "octahedron",
}


def deletion_all_cones_implies_ci(c: SimplicialComplex) -> Verdict:
    """If every single-vertex deletion is a cone, the complex is a complete intersection."""
    _require_matroid(c)
    if c.dim > 2:
        raise ComplexError(f"needs dimension at most 2, got {c.dim}")
    if is_cone(c):
        raise ComplexError("input is a cone")
    if not all(is_cone(deletion(c, v)) for v in elements_of(c.vertices)):
        return Verdict(True, "hypothesis_not_met", details={"all_deletions_cones": False})
    if not is_complete_intersection(c):
        return Verdict(
            False,
            "series_classes",
            counterexample={"n": c.n, "facets": c.facet_lists()},
        )
    degrees = tuple(sorted(ci_degrees(c)))
    shape = SHAPES.get((c.rank, degrees), "other" if degrees else "empty")
    return Verdict(
        True,
        "series_classes",
        details={"shape": shape, "ci_degrees": list(degrees), "series_classes": series_classes(c)},
    )


def link_not_cone(c: SimplicialComplex, v: int) -> Verdict:
    _require_matroid(c)
    if is_cone(c):
        raise ComplexError("input is a cone")
    if not 1 <= v <= c.n or not c.vertices >> (v - 1) & 1:
        raise ComplexError(f"{v} is not a vertex")
    lk = link(c, v)
    if is_cone(lk):
        return Verdict(
            False,
            "coloops",
            counterexample={"n": c.n, "facets": c.facet_lists(), "vertex": v, "coloops": elements_of(coloop_mask(lk))},
        )
    return Verdict(True, "coloops")


def differentiable_while_nondecreasing(h: Sequence[int]) -> bool:
    return is_O_sequence(first_difference(nondecreasing_prefix(h)))


def assumption_a_check(c: SimplicialComplex) -> Verdict:
    """The h-vector is differentiable along its nondecreasing prefix."""
    _require_matroid(c)
    h = nonzero_part(h_vector(c))
    prefix = nondecreasing_prefix(h)
    if differentiable_while_nondecreasing(h):
        return Verdict(True, "assumption_a", details={"h": h, "prefix": prefix})
    return Verdict(
        False,
        "assumption_a",
        counterexample={"n": c.n, "facets": c.facet_lists(), "h": h, "prefix": prefix},
    )


def assumption_b_check(h: Sequence[int], h2: Sequence[int], cap: int = DEFAULT_CAP) -> Verdict:
    """A shifted sum differentiable along its nondecreasing prefix should be pure."""
    for seq in (h, h2):
        if not is_pure_O_sequence(seq, cap).passed:
            raise ValueError(f"{list(seq)} is not certified pure")
    total = shifted_sum(h, h2)
    details = {"shifted_sum": total}
    if not differentiable_while_nondecreasing(total):
        return Verdict(True, "precondition_unmet", details=details)
    v = is_pure_O_sequence(total, cap)
    if v.outcome is False:
        return Verdict(
            False,
            v.decided_by,
            counterexample={"h": list(h), "h2": list(h2), "shifted_sum": total},
            details=details,
        )
    return Verdict(v.outcome, v.decided_by, witness=v.witness, details=details)


def aleph_membership(c: SimplicialComplex, cap: int = DEFAULT_CAP) -> Verdict:
    """Membership in the inductively defined class of matroids used for rank 4.

    A non-cone complete intersection is a member; otherwise some vertex must
    have link and deletion both members with h-vectors satisfying the
    shifted-sum hypotheses.  ``details['vertex']`` is the smallest such vertex.
    """
    _require_matroid(c)
    return _aleph(c, cap)


@lru_cache(maxsize=4096)
def _aleph(c: SimplicialComplex, cap: int) -> Verdict:
    if is_cone(c):
        return Verdict(False, "cone")
    if is_complete_intersection(c):
        return Verdict(True, "complete_intersection")
    for v in elements_of(c.vertices):
        dele, lk = deletion(c, v), link(c, v)
        if is_cone(dele) or is_cone(lk):
            continue
        hd, hl = nonzero_part(h_vector(dele)), nonzero_part(h_vector(lk))
        if not ccc_hypotheses(hd, hl, cap):
            continue
        if _aleph(dele, cap).passed and _aleph(lk, cap).passed:
            return Verdict(True, "vertex", details={"vertex": v})
    return Verdict(False, "no_vertex")
