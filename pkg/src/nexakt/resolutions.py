"""Minimal projective resolutions, injective coresolutions and Ext.

Covers are computed from top = m/rad m and envelopes dually via the
socle; path-algebra quotients over F_p are basic and split, so no
semisimple-algebra machinery is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .fp import Mat, quotient_data, rank
from .reps import (Module, Morphism, cokernel_morphism, direct_sum, hom_basis,
                   injective_module, kernel_morphism, projective_module,
                   radical_span, socle_span, zero_module, zero_morphism)


@dataclass
class Resolution:
    """... -> Q_1 -> Q_0 -> m (maps[0] is the augmentation Q_0 -> m,
    maps[k]: Q_k -> Q_{k-1})."""

    module: Module
    terms: list
    maps: list

    @property
    def length(self) -> int:
        return len(self.terms) - 1


@dataclass
class Coresolution:
    """m -> I^1 -> I^2 -> ... (maps[0]: m -> I^1, maps[k]: I^k -> I^{k+1})."""

    module: Module
    terms: list
    maps: list

    @property
    def length(self) -> int:
        return len(self.terms)


def projective_cover(m: Module) -> Morphism:
    """Minimal cover P -> m: one P_v per basis vector of top(m) at v."""
    alg = m.algebra
    p = alg.p
    if m.is_zero():
        return zero_morphism(zero_module(alg), m)
    rad = radical_span(m)
    gens: List[Tuple[str, Mat]] = []
    for v in alg.quiver.vertices:
        _, free = quotient_data(rad[v])
        for j in free:
            gens.append((v, Mat.from_rows([[1 if i == j else 0]
                                           for i in range(m.dims[v])], p, cols=1)))
    summands = [projective_module(alg, v) for v, _ in gens]
    total, _, projections = direct_sum(summands)
    cover = zero_morphism(total, m)
    for (v, vec), summand, prj in zip(gens, summands, projections):
        cover = cover.add(prj.then(_map_from_projective(summand, v, vec, m)))
    if not cover.is_surjective():
        raise AssertionError("projective cover is not surjective")
    return cover


def _map_from_projective(pv: Module, v: str, vec: Mat, m: Module) -> Morphism:
    """The module map P_v -> m sending e_v to the column vector ``vec``."""
    alg = m.algebra
    by_vertex: Dict[str, List[int]] = {w: [] for w in alg.quiver.vertices}
    for i in range(alg.dim):
        if alg.source_of[i] == v:
            by_vertex[alg.target_of[i]].append(i)
    comps = {}
    for w in alg.quiver.vertices:
        cols = [m.path_matrix(alg.basis[b]).mul(vec) for b in by_vertex[w]]
        comps[w] = Mat.hstack(cols) if cols else Mat.zero(m.dims[w], 0, alg.p)
    return Morphism(pv, m, comps)


def injective_envelope(m: Module) -> Morphism:
    """Minimal envelope m -> E: one I_v per basis vector of soc(m) at v."""
    alg = m.algebra
    if m.is_zero():
        return zero_morphism(m, zero_module(alg))
    soc = socle_span(m)
    data: List[Tuple[str, Mat]] = []
    for v in alg.quiver.vertices:
        basis = soc[v]
        for j in range(basis.cols):
            data.append((v, Mat.from_rows([[basis.at(i, j)]
                                           for i in range(m.dims[v])], alg.p, cols=1)))
    if not data:
        raise AssertionError("nonzero module with zero socle")
    summands = [injective_module(alg, v) for v, _ in data]
    total, injections, _ = direct_sum(summands)
    env = zero_morphism(m, total)
    for (v, vec), summand, inj in zip(data, summands, injections):
        env = env.add(_map_into_injective(m, v, vec, summand).then(inj))
    if not env.is_injective():
        raise AssertionError("injective envelope not injective")
    return env


def _map_into_injective(m: Module, v: str, socle_vec: Mat, inj_v: Module) -> Morphism:
    """The map m -> I_v classifying the functional <socle_vec, -> on m_v.

    I_v carries the basis dual to {paths w -> v}; the component at w sends
    x in m_w to the tuple (p |-> <socle_vec, p.x>) over those paths."""
    alg = m.algebra
    by_vertex: Dict[str, List[int]] = {w: [] for w in alg.quiver.vertices}
    for i in range(alg.dim):
        if alg.target_of[i] == v:
            by_vertex[alg.source_of[i]].append(i)
    comps = {}
    for w in alg.quiver.vertices:
        rows = [list(socle_vec.transpose().mul(m.path_matrix(alg.basis[b])).row(0))
                for b in by_vertex[w]]
        comps[w] = Mat.from_rows(rows, alg.p, cols=m.dims[w])
    return Morphism(m, inj_v, comps)


def min_projective_resolution(m: Module, length: int) -> Resolution:
    """Minimal resolution Q_length -> ... -> Q_0 -> m, exactness verified.

    Incrementally extendable: repeated calls reuse the syzygy chain."""
    memo = m._memo.setdefault("projres",
                              {"terms": [], "maps": [], "kers": [], "incls": []})
    terms, maps, kers, incls = (memo["terms"], memo["maps"],
                                memo["kers"], memo["incls"])
    while len(terms) <= length:
        current = m if not kers else kers[-1]
        cover = projective_cover(current)
        terms.append(cover.source)
        maps.append(cover if not incls else cover.then(incls[-1]))
        ker, incl = kernel_morphism(cover)
        kers.append(ker)
        incls.append(incl)
    res = Resolution(m, list(terms[:length + 1]), list(maps[:length + 1]))
    _verify_resolution_exactness(res)
    return res


def syzygy(m: Module, k: int) -> Module:
    """k-th syzygy along the minimal resolution."""
    if k == 0:
        return m
    min_projective_resolution(m, k)
    return m._memo["projres"]["kers"][k - 1]


def _verify_resolution_exactness(res: Resolution):
    if res.maps and not res.maps[0].is_surjective():
        raise AssertionError("augmentation not surjective")
    for k in range(len(res.maps) - 1):
        d_out, d_in = res.maps[k], res.maps[k + 1]
        if not d_in.then(d_out).is_zero():
            raise AssertionError("resolution differentials do not compose to zero")
        for v in res.module.algebra.quiver.vertices:
            dim_ker = d_out.components[v].cols - rank(d_out.components[v])
            if rank(d_in.components[v]) != dim_ker:
                raise AssertionError("resolution not exact")


def min_injective_coresolution(m: Module, length: int) -> Coresolution:
    """Minimal coresolution m -> I^1 -> ... -> I^length, exactness verified."""
    memo = m._memo.setdefault("injres",
                              {"terms": [], "maps": [], "cokers": [], "projs": []})
    terms, maps, cokers, projs = (memo["terms"], memo["maps"],
                                  memo["cokers"], memo["projs"])
    while len(terms) < length:
        current = m if not cokers else cokers[-1]
        env = injective_envelope(current)
        terms.append(env.target)
        maps.append(env if not projs else projs[-1].then(env))
        coker, proj = cokernel_morphism(env)
        cokers.append(coker)
        projs.append(proj)
    res = Coresolution(m, list(terms[:length]), list(maps[:length]))
    _verify_coresolution_exactness(res)
    return res


def cosyzygy_of(m: Module, k: int) -> Module:
    """k-th cosyzygy along the minimal coresolution (deterministic)."""
    if k == 0:
        return m
    min_injective_coresolution(m, k)
    return m._memo["injres"]["cokers"][k - 1]


def cosyzygy_projection(m: Module, k: int) -> Morphism:
    """The epi I^k -> cosyzygy_of(m, k) closing the length-k coresolution."""
    min_injective_coresolution(m, k)
    return m._memo["injres"]["projs"][k - 1]


def _verify_coresolution_exactness(res: Coresolution):
    if res.maps and not res.maps[0].is_injective():
        raise AssertionError("coaugmentation not injective")
    for k in range(len(res.maps) - 1):
        d_in, d_out = res.maps[k], res.maps[k + 1]
        if not d_in.then(d_out).is_zero():
            raise AssertionError("coresolution differentials do not compose to zero")
        for v in res.module.algebra.quiver.vertices:
            dim_ker = d_out.components[v].cols - rank(d_out.components[v])
            if rank(d_in.components[v]) != dim_ker:
                raise AssertionError("coresolution not exact")


# -- Ext dimensions -----------------------------------------------------


def hom_induced_rank(basis: List[Morphism], d: Morphism) -> int:
    """Rank of Hom(d, -)|span(basis): phi |-> d.then(phi)."""
    cols = [d.then(phi).vectorize() for phi in basis]
    p = d.source.algebra.p
    if not cols:
        return 0
    mat = Mat.from_rows([[c[i] for c in cols] for i in range(len(cols[0]))],
                        p, cols=len(cols))
    return rank(mat)


def ext_dim(m: Module, n: Module, k: int) -> int:
    """dim Ext^k(m, n) via Hom(minimal projective resolution of m, n)."""
    if k < 0:
        raise ValueError("negative Ext degree")
    if k == 0:
        return len(hom_basis(m, n))
    res = min_projective_resolution(m, k + 1)
    hom_k = hom_basis(res.terms[k], n)
    rank_out = hom_induced_rank(hom_k, res.maps[k + 1])
    hom_km1 = hom_basis(res.terms[k - 1], n)
    rank_in = hom_induced_rank(hom_km1, res.maps[k])
    return (len(hom_k) - rank_out) - rank_in
