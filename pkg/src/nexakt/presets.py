"""Desk-scale example families and the brute-force uniqueness oracle.

Families: linearly oriented A_{nm+1} with radical square zero, small
preprojective algebras of type A, and Auslander algebras of linear A_m.
Orientation of A_{nm+1} is fixed sink-first so that P_0 = S_0; pass
reverse=True to flip it.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Sequence, Tuple

from .addcat import add_category
from .fp import FieldSpec
from .quivers import AlgebraBasis, PathWord, Quiver, Relation, build_algebra
from .reps import (Module, all_projectives, are_isomorphic,
                   projective_module, quotient_by_submodule)
from .tilting import check_n_cluster_tilting


def gen_linear_An_J2(n: int, m: int, p: int = 101,
                     reverse: bool = False) -> Tuple[AlgebraBasis, List[Module]]:
    """K A_{nm+1} / J^2 with its expected n-cluster-tilting generators
    Lambda + S_n + S_{2n} + ... + S_{nm}."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    count = n * m + 1
    if count > 12:
        raise ValueError("supported range is nm + 1 <= 12")
    vertices = [str(i) for i in range(count)]
    if reverse:
        arrows = [(f"a{i}", str(i - 1), str(i)) for i in range(1, count)]
    else:
        arrows = [(f"a{i}", str(i), str(i - 1)) for i in range(1, count)]
    q = Quiver.build(vertices, arrows)
    rels = []
    for i in range(2, count):
        if reverse:
            word = PathWord((f"a{i - 1}", f"a{i}"))
        else:
            word = PathWord((f"a{i}", f"a{i - 1}"))
        rels.append(Relation(((1, word),)))
    alg = build_algebra(q, rels, 2, FieldSpec(p))
    expected = [projective_module(alg, v) for v in vertices]
    for j in range(1, m + 1):
        expected.append(_uniserial(alg, str(j * n), 1))
    return alg, expected


def _uniserial(alg: AlgebraBasis, v: str, loewy: int) -> Module:
    """P_v / rad^loewy P_v."""
    pv = projective_module(alg, v)
    layer = pv
    span = {w: _radical_power_span(pv, loewy)[w] for w in alg.quiver.vertices}
    return quotient_by_submodule(pv, span)[0]


def _radical_power_span(m: Module, k: int):
    """Vertex-wise spanning matrix of rad^k m."""
    from .fp import Mat
    alg = m.algebra
    p = alg.p
    current = {v: Mat.identity(m.dims[v], p) for v in alg.quiver.vertices}
    for _ in range(k):
        nxt = {}
        for v in alg.quiver.vertices:
            cols = [Mat.zero(m.dims[v], 0, p)]
            for a in alg.quiver.arrows:
                if a.target == v:
                    cols.append(m.action[a.name].mul(current[a.source]))
            nxt[v] = Mat.hstack(cols)
        current = nxt
    return current


def gen_preprojective_A(n: int, p: int = 101) -> AlgebraBasis:
    """Preprojective algebra of type A_n by doubled-quiver presentation."""
    if not 2 <= n <= 3:
        raise ValueError("supported range is 2 <= n <= 3")
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = []
    for i in range(1, n):
        arrows.append((f"a{i}", str(i), str(i + 1)))
        arrows.append((f"b{i}", str(i + 1), str(i)))
    q = Quiver.build(vertices, arrows)
    rels = []
    # mesh relation at each vertex: compositions through adjacent vertices
    # sum to zero (sign conventions differ in the literature; for this
    # range either choice presents the same algebra)
    for i in range(1, n + 1):
        terms = []
        if i < n:
            terms.append((1, PathWord((f"a{i}", f"b{i}"))))     # i -> i+1 -> i
        if i > 1:
            terms.append((p - 1, PathWord((f"b{i-1}", f"a{i-1}"))))  # i -> i-1 -> i
        rels.append(Relation(tuple(terms)))
    bound = 2 if n == 2 else 3
    return build_algebra(q, rels, bound, FieldSpec(p))


def nakayama_indecomposables(alg: AlgebraBasis) -> List[Module]:
    """All uniserial modules P_v / rad^l P_v; provably complete when the
    quiver is linear A_k or a single oriented cycle (verified)."""
    _require_nakayama(alg.quiver)
    out = []
    for v in alg.quiver.vertices:
        pv = projective_module(alg, v)
        loewy = _loewy_length(pv)
        for level in range(1, loewy + 1):
            span = _radical_power_span(pv, level)
            out.append(quotient_by_submodule(pv, span)[0])
    return out


def _require_nakayama(q: Quiver):
    out_deg = {v: 0 for v in q.vertices}
    in_deg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        out_deg[a.source] += 1
        in_deg[a.target] += 1
    if any(d > 1 for d in out_deg.values()) or any(d > 1 for d in in_deg.values()):
        raise ValueError("not a Nakayama quiver (degree > 1 somewhere)")
    n_arrows = len(q.arrows)
    if n_arrows == len(q.vertices):
        return  # single oriented cycle
    if n_arrows == len(q.vertices) - 1:
        return  # linear A_k
    raise ValueError("not a Nakayama quiver (wrong arrow count)")


def _loewy_length(m: Module) -> int:
    level = 0
    span = _radical_power_span(m, 0)
    while any(s.cols and _nonzero(s) for s in span.values()):
        level += 1
        span = _radical_power_span(m, level)
        if level > m.total_dim:
            raise AssertionError("radical series does not terminate")
    return level


def _nonzero(mat) -> bool:
    return not mat.is_zero() if mat.rows and mat.cols else False


def gen_auslander_linear_A(m: int, p: int = 101) -> AlgebraBasis:
    """Auslander algebra of K(linear A_m): quiver = AR-quiver on interval
    modules [i,j], arrows extend the interval left or chop it right, mesh
    relations at each non-projective vertex."""
    if not 1 <= m <= 4:
        raise ValueError("supported range is 1 <= m <= 4")
    intervals = [(i, j) for i in range(1, m + 1) for j in range(i, m + 1)]
    name = {iv: f"m{iv[0]}_{iv[1]}" for iv in intervals}
    vertices = [name[iv] for iv in intervals]
    arrows = []
    for (i, j) in intervals:
        if i >= 2:
            arrows.append((f"L{i}_{j}", name[(i, j)], name[(i - 1, j)]))
        if j > i:
            arrows.append((f"R{i}_{j}", name[(i, j)], name[(i, j - 1)]))
    q = Quiver.build(vertices, arrows)
    rels = []
    # mesh at tau[i,j] = [i+1, j+1] for every non-injective [i,j] ... the
    # relation lives on paths [i+1,j+1] -> [i,j]
    for (i, j) in intervals:
        if j >= m:
            continue  # [i, j] with j = m has no mesh ending at it
        src = (i + 1, j + 1)
        terms = []
        # through [i, j+1]: extend left then chop right
        terms.append((1, PathWord((f"L{i+1}_{j+1}", f"R{i}_{j+1}"))))
        # through [i+1, j]: chop right then extend left (absent when i+1 > j)
        if i + 1 <= j:
            terms.append((1, PathWord((f"R{i+1}_{j+1}", f"L{i+1}_{j}"))))
        rels.append(Relation(tuple(terms)))
    bound = max(2 * m - 1, 1)
    return build_algebra(q, rels, bound, FieldSpec(p))


def brute_force_nct_search(alg: AlgebraBasis, n: int,
                           indec_list: Sequence[Module], complete: bool,
                           seed: int = 0) -> List[List[int]]:
    """Try every subset of indec_list containing all projectives; return
    the index sets whose add-closure certifies as n-cluster-tilting."""
    if len(indec_list) > 20:
        raise ValueError("list too large for exhaustive search")
    projs = all_projectives(alg)
    proj_idx = []
    for pv in projs:
        hit = None
        for i, x in enumerate(indec_list):
            if are_isomorphic(pv, x, seed + 19):
                hit = i
                break
        if hit is None:
            raise ValueError("indec_list must contain every projective")
        proj_idx.append(hit)
    proj_set = sorted(set(proj_idx))
    rest = [i for i in range(len(indec_list)) if i not in proj_set]
    hits = []
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            subset = sorted(proj_set + list(extra))
            gens = [indec_list[i] for i in subset]
            cat = add_category(alg, gens, seed=seed, check=False)
            report = check_n_cluster_tilting(cat, n, indec_list, complete,
                                             seed=seed, validate_list=False)
            if report.ok:
                hits.append(subset)
    return hits
