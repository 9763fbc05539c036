"""Bounded cochain complexes of modules, their morphisms and homotopies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .fp import Mat
from .reps import (Module, Morphism, direct_sum, identity_morphism,
                   zero_module, zero_morphism)


@dataclass
class ComplexSeq:
    """Complex X^lo -> ... -> X^hi; differentials d^k: X^k -> X^{k+1}.

    Out-of-range terms read as the zero module, so boundary bookkeeping
    in cones and homotopies needs no special cases.
    """

    lo: int
    terms: list                 # Modules, degrees lo .. lo+len-1
    diffs: list                 # Morphisms, diffs[k]: terms[k] -> terms[k+1]

    def __post_init__(self):
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ValueError("differential count mismatch")
        for k, d in enumerate(self.diffs):
            if d.source is not self.terms[k] or d.target is not self.terms[k + 1]:
                if d.source.dims != self.terms[k].dims or d.target.dims != self.terms[k + 1].dims:
                    raise ValueError(f"differential {k} endpoints mismatch")
        for k in range(len(self.diffs) - 1):
            if not self.diffs[k].then(self.diffs[k + 1]).is_zero():
                raise ValueError(f"d^{self.lo + k + 1} after d^{self.lo + k} is nonzero")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def algebra(self):
        return self.terms[0].algebra

    def term(self, k: int) -> Module:
        if self.lo <= k <= self.hi:
            return self.terms[k - self.lo]
        return zero_module(self.algebra)

    def diff(self, k: int) -> Morphism:
        """d^k: X^k -> X^{k+1}, zero outside the stored range."""
        i = k - self.lo
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return zero_morphism(self.term(k), self.term(k + 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def shift_degrees(self, by: int) -> "ComplexSeq":
        return ComplexSeq(self.lo + by, list(self.terms), list(self.diffs))


def complex_from_maps(lo: int, maps: Sequence[Morphism]) -> ComplexSeq:
    terms = [maps[0].source] + [f.target for f in maps]
    return ComplexSeq(lo, terms, list(maps))


def single_term_complex(lo: int, m: Module) -> ComplexSeq:
    return ComplexSeq(lo, [m], [])


def interval_complex(k: int, c: Module) -> ComplexSeq:
    """The contractible complex with c in degrees k and k+1 and identity
    differential."""
    return ComplexSeq(k, [c, c], [identity_morphism(c)])


def pad_complex(x: ComplexSeq, lo: int, hi: int) -> ComplexSeq:
    """Extend the stored range with zero terms (contents unchanged)."""
    if lo > x.lo or hi < x.hi:
        raise ValueError("pad_complex only extends the range")
    terms = [x.term(k) for k in range(lo, hi + 1)]
    diffs = []
    for k in range(lo, hi):
        idx = k - x.lo
        if 0 <= idx < len(x.diffs):
            diffs.append(x.diffs[idx])
        else:
            diffs.append(zero_morphism(terms[k - lo], terms[k - lo + 1]))
    return ComplexSeq(lo, terms, diffs)


def direct_sum_complexes(x: ComplexSeq, y: ComplexSeq) -> ComplexSeq:
    lo = min(x.lo, y.lo)
    hi = max(x.hi, y.hi)
    terms = []
    for k in range(lo, hi + 1):
        terms.append(direct_sum([x.term(k), y.term(k)])[0])
    diffs = []
    for k in range(lo, hi):
        dx, dy = x.diff(k), y.diff(k)
        p = dx.source.algebra.p
        comps = {}
        for v in dx.source.algebra.quiver.vertices:
            a = dx.components[v]
            b = dy.components[v]
            comps[v] = Mat.block([
                [a, Mat.zero(a.rows, b.cols, p)],
                [Mat.zero(b.rows, a.cols, p), b]])
        diffs.append(Morphism(terms[k - lo], terms[k - lo + 1], comps))
    return ComplexSeq(lo, terms, diffs)


@dataclass
class ComplexMorphism:
    source: ComplexSeq
    target: ComplexSeq
    components: dict            # degree -> Morphism X^k -> Y^k

    def __post_init__(self):
        for k in self.source.degrees():
            f = self.component(k)
            if f.source.dims != self.source.term(k).dims \
               or f.target.dims != self.target.term(k).dims:
                raise ValueError(f"component at degree {k} has wrong endpoints")
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for k in range(lo, hi):
            lhs = self.component(k).then(self.target.diff(k))
            rhs = self.source.diff(k).then(self.component(k + 1))
            if not lhs.sub(rhs).is_zero():
                raise ValueError(f"square at degree {k} does not commute")

    def component(self, k: int) -> Morphism:
        f = self.components.get(k)
        if f is None:
            return zero_morphism(self.source.term(k), self.target.term(k))
        return f

    def then(self, other: "ComplexMorphism") -> "ComplexMorphism":
        return ComplexMorphism(self.source, other.target,
                               {k: self.component(k).then(other.component(k))
                                for k in self.source.degrees()})

    def sub(self, other: "ComplexMorphism") -> "ComplexMorphism":
        return ComplexMorphism(self.source, self.target,
                               {k: self.component(k).sub(other.component(k))
                                for k in self.source.degrees()})


def identity_complex_morphism(x: ComplexSeq) -> ComplexMorphism:
    return ComplexMorphism(x, x, {k: identity_morphism(x.term(k))
                                  for k in x.degrees()})


def zero_complex_morphism(x: ComplexSeq, y: ComplexSeq) -> ComplexMorphism:
    return ComplexMorphism(x, y, {})


@dataclass
class Homotopy:
    """Degreewise maps h^k: X^k -> Y^{k-1}; a witness only, validity is the
    equation checked by verify_homotopy."""

    source: ComplexSeq
    target: ComplexSeq
    components: dict            # degree k -> Morphism X^k -> Y^{k-1}

    def component(self, k: int) -> Morphism:
        h = self.components.get(k)
        if h is None:
            return zero_morphism(self.source.term(k), self.target.term(k - 1))
        return h


def zero_homotopy(x: ComplexSeq, y: ComplexSeq) -> Homotopy:
    return Homotopy(x, y, {})


def verify_homotopy(f: ComplexMorphism, g: ComplexMorphism, h: Homotopy) -> bool:
    """True iff (f-g)^k = h^k d_Y^{k-1} + d_X^k h^{k+1} holds degreewise."""
    x, y = f.source, f.target
    if g.source is not x and g.source.lo != x.lo:
        raise ValueError("homotopy endpoints mismatch")
    for k in range(x.lo, x.hi + 1):
        lhs = f.component(k).sub(g.component(k))
        rhs = h.component(k).then(y.diff(k - 1)) \
            .add(x.diff(k).then(h.component(k + 1)))
        if not lhs.sub(rhs).is_zero():
            return False
    return True


def chain_map_space(x: ComplexSeq, y: ComplexSeq) -> List[ComplexMorphism]:
    """Basis of the space of chain maps x -> y (degreewise Hom coordinates,
    commuting constraints solved as one kernel computation)."""
    from .fp import Mat, kernel_basis
    from .reps import hom_basis
    p = x.algebra.p
    blocks = []
    offsets = []
    pos = 0
    for k in x.degrees():
        basis = hom_basis(x.term(k), y.term(k))
        blocks.append(basis)
        offsets.append(pos)
        pos += len(basis)
    total = pos
    rows: List[List[int]] = []
    for idx, k in enumerate(range(x.lo, x.hi)):
        tgt_len = len(zero_morphism(x.term(k), y.term(k + 1)).vectorize())
        contrib = [[0] * total for _ in range(tgt_len)]
        for i, b in enumerate(blocks[idx]):
            vec = b.then(y.diff(k)).vectorize()
            for r in range(tgt_len):
                contrib[r][offsets[idx] + i] = vec[r]
        for i, b in enumerate(blocks[idx + 1]):
            vec = x.diff(k).then(b).vectorize()
            for r in range(tgt_len):
                contrib[r][offsets[idx + 1] + i] = (-vec[r]) % p
        rows.extend(contrib)
    system = Mat.from_rows(rows, p, cols=total)
    ker = kernel_basis(system)
    out = []
    for j in range(ker.cols):
        comps = {}
        for idx, k in enumerate(x.degrees()):
            acc = zero_morphism(x.term(k), y.term(k))
            for i, b in enumerate(blocks[idx]):
                c = ker.at(offsets[idx] + i, j)
                if c:
                    acc = acc.add(b.scale(c))
            comps[k] = acc
        out.append(ComplexMorphism(x, y, comps))
    return out


def mapping_cone(f: ComplexMorphism) -> ComplexSeq:
    """Cone with terms X^{k+1} + Y^k and differential
    [[-d_X^{k+1}, 0], [f^{k+1}, d_Y^k]]."""
    x, y = f.source, f.target
    alg = x.algebra
    p = alg.p
    lo = min(x.lo, y.lo) - 1
    hi = max(x.hi, y.hi)
    terms = []
    for k in range(lo, hi + 1):
        terms.append(direct_sum([x.term(k + 1), y.term(k)])[0])
    diffs = []
    for k in range(lo, hi):
        dx = x.diff(k + 1)
        dy = y.diff(k)
        fk = f.component(k + 1)
        comps = {}
        for v in alg.quiver.vertices:
            a = dx.components[v].neg()
            b = fk.components[v]
            c = dy.components[v]
            comps[v] = Mat.block([
                [a, Mat.zero(a.rows, c.cols, p)],
                [b, c]])
        diffs.append(Morphism(terms[k - lo], terms[k - lo + 1], comps))
    return ComplexSeq(lo, terms, diffs)


def cone_inclusion_of_target(f: ComplexMorphism) -> ComplexMorphism:
    """Y -> C(f), degreewise the inclusion of the Y^k block."""
    cone = mapping_cone(f)
    x, y = f.source, f.target
    p = x.algebra.p
    comps = {}
    for k in cone.degrees():
        xk1 = x.term(k + 1)
        yk = y.term(k)
        blocks = {v: Mat.vstack([Mat.zero(xk1.dims[v], yk.dims[v], p),
                                 Mat.identity(yk.dims[v], p)])
                  for v in x.algebra.quiver.vertices}
        comps[k] = Morphism(yk, cone.term(k), blocks)
    return ComplexMorphism(pad_complex(y, cone.lo, cone.hi), cone, comps)
