"""The additive subcategory M = add(generators) and its higher structure:
approximations, weak (co)kernels, n-(co)kernels, exactness certificates,
the comparison-homotopy solver and contractions.

All verification is Hom-level rank bookkeeping against the generator
list; certificates are assembled in generator-list order.  Tie-breaking
is fixed everywhere: generators in the order listed, Hom bases in the
deterministic kernel_basis order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import ComplexSeq, ComplexMorphism, Homotopy, complex_from_maps
from .quivers import AlgebraBasis
from .reps import (Module, Morphism, all_injectives, all_projectives,
                   are_isomorphic, assemble_from_span, cokernel_morphism,
                   factor_through, hom_basis, identity_morphism, in_add,
                   kernel_morphism, lift_through, solve_in_span,
                   split_indecomposables, stack_morphisms_from_sum,
                   stack_morphisms_to_sum, zero_module, zero_morphism)


class DomainError(ValueError):
    """An object required to lie in add(M) does not."""


class PreconditionError(ValueError):
    pass


class HypothesisError(ValueError):
    """A factorization guaranteed by the ambient hypotheses failed."""

    def __init__(self, message: str, degree: Optional[int] = None):
        super().__init__(message)
        self.degree = degree


@dataclass
class AddCat:
    """M = add(G_1 + ... + G_r) for pairwise non-isomorphic indecomposable
    generators."""

    algebra: AlgebraBasis
    generators: list
    contains_projectives: bool = False
    contains_injectives: bool = False
    checked: bool = False


def add_category(alg: AlgebraBasis, generators: Sequence[Module], seed: int = 0,
                 check: bool = True) -> AddCat:
    gens = list(generators)
    if check:
        for i, g in enumerate(gens):
            parts = split_indecomposables(g, seed + i)
            if len(parts) != 1 or parts[0][1] != 1:
                raise ValueError(f"generator {i} is decomposable")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if are_isomorphic(gens[i], gens[j], seed + 101 * (i + j)):
                    raise ValueError(f"generators {i} and {j} are isomorphic")
    has_proj = all(in_add(pv, gens) for pv in all_projectives(alg))
    has_inj = all(in_add(iv, gens) for iv in all_injectives(alg))
    return AddCat(alg, gens, has_proj, has_inj, check)


# -- approximations ------------------------------------------------------


def _peel_superfluous(parts: List[Tuple[Module, Morphism]], x: Module,
                      left: bool) -> List[Tuple[Module, Morphism]]:
    """Drop summands whose component factors through the remaining ones."""
    parts = list(parts)
    changed = True
    while changed:
        changed = False
        for i in range(len(parts)):
            rest = parts[:i] + parts[i + 1:]
            gi, fi = parts[i]
            if left:
                rest_map = (stack_morphisms_to_sum([f for _, f in rest])
                            if rest else zero_morphism(x, zero_module(x.algebra)))
                if factor_through(fi, rest_map) is not None:
                    del parts[i]
                    changed = True
                    break
            else:
                rest_map = (stack_morphisms_from_sum([f for _, f in rest])
                            if rest else zero_morphism(zero_module(x.algebra), x))
                if lift_through(fi, rest_map) is not None:
                    del parts[i]
                    changed = True
                    break
    return parts


def minimal_left_approximation(x: Module, m: AddCat) -> Morphism:
    """Left add(M)-approximation x -> T, minimized by peeling summands.

    Contract (verified): Hom(T, G) -> Hom(x, G) is surjective for every
    generator G."""
    parts: List[Tuple[Module, Morphism]] = []
    for g in m.generators:
        for f in hom_basis(x, g):
            parts.append((g, f))
    parts = _peel_superfluous(parts, x, left=True)
    if not parts:
        approx = zero_morphism(x, zero_module(x.algebra))
    else:
        approx = stack_morphisms_to_sum([f for _, f in parts])
    for g in m.generators:
        target_rank = _left_approx_rank(approx, g)
        if target_rank != len(hom_basis(x, g)):
            raise AssertionError("left approximation lost a Hom class")
    return approx


def _left_approx_rank(approx: Morphism, g: Module) -> int:
    basis = hom_basis(approx.target, g)
    return _rank_of_vectors([approx.then(b).vectorize() for b in basis],
                            approx.source.algebra.p)


def minimal_right_approximation(x: Module, m: AddCat) -> Morphism:
    """Right add(M)-approximation T -> x, dual to the left version."""
    parts: List[Tuple[Module, Morphism]] = []
    for g in m.generators:
        for f in hom_basis(g, x):
            parts.append((g, f))
    parts = _peel_superfluous(parts, x, left=False)
    if not parts:
        approx = zero_morphism(zero_module(x.algebra), x)
    else:
        approx = stack_morphisms_from_sum([f for _, f in parts])
    for g in m.generators:
        basis = hom_basis(g, approx.source)
        got = _rank_of_vectors([b.then(approx).vectorize() for b in basis],
                               x.algebra.p)
        if got != len(hom_basis(g, x)):
            raise AssertionError("right approximation lost a Hom class")
    return approx


def _rank_of_vectors(vecs: List[tuple], p: int) -> int:
    from .fp import Mat, rank
    if not vecs:
        return 0
    mat = Mat.from_rows([list(v) for v in vecs], p, cols=len(vecs[0]))
    return rank(mat)


# -- weak (co)kernels ----------------------------------------------------


def weak_cokernel(f: Morphism, m: AddCat) -> Morphism:
    """Cokernel projection followed by a minimal left approximation.

    Verified: f.then(g) = 0 and for every generator G the image of
    Hom(C, G) -> Hom(B, G) equals the kernel of Hom(B, G) -> Hom(A, G)."""
    if not in_add(f.source, m.generators):
        raise DomainError("weak_cokernel: source not in add(M)")
    if not in_add(f.target, m.generators):
        raise DomainError("weak_cokernel: target not in add(M)")
    coker, proj = cokernel_morphism(f)
    approx = minimal_left_approximation(coker, m)
    g = proj.then(approx)
    if not f.then(g).is_zero():
        raise AssertionError("weak cokernel does not kill f")
    for gen in m.generators:
        if not _weak_cokernel_exact_at_middle(f, g, gen):
            raise AssertionError("weak cokernel property failed")
    return g


def _weak_cokernel_exact_at_middle(f: Morphism, g: Morphism, gen: Module) -> bool:
    """Exactness of Hom(C, gen) -> Hom(B, gen) -> Hom(A, gen)."""
    p = f.source.algebra.p
    hom_b = hom_basis(f.target, gen)
    rank_from_c = _rank_of_vectors(
        [g.then(b).vectorize() for b in hom_basis(g.target, gen)], p)
    rank_to_a = _rank_of_vectors(
        [f.then(b).vectorize() for b in hom_b], p)
    dim_killed = len(hom_b) - rank_to_a
    return rank_from_c == dim_killed


def weak_kernel(f: Morphism, m: AddCat) -> Morphism:
    """Kernel inclusion preceded by a minimal right approximation."""
    if not in_add(f.source, m.generators):
        raise DomainError("weak_kernel: source not in add(M)")
    if not in_add(f.target, m.generators):
        raise DomainError("weak_kernel: target not in add(M)")
    ker, incl = kernel_morphism(f)
    approx = minimal_right_approximation(ker, m)
    g = approx.then(incl)
    if not g.then(f).is_zero():
        raise AssertionError("weak kernel composite nonzero")
    for gen in m.generators:
        p = f.source.algebra.p
        hom_b = hom_basis(gen, f.source)
        rank_from_k = _rank_of_vectors(
            [b.then(g).vectorize() for b in hom_basis(gen, g.source)], p)
        rank_to = _rank_of_vectors([b.then(f).vectorize() for b in hom_b], p)
        if rank_from_k != len(hom_b) - rank_to:
            raise AssertionError("weak kernel property failed")
    return g


# -- n-cokernels and n-kernels -------------------------------------------


def n_cokernel(d0: Morphism, m: AddCat, n: int) -> ComplexSeq:
    """The cokernel/approximation ladder: (d^1, ..., d^n) with d^n epic.

    Returns the tail complex on degrees 1..n+1; the result is
    self-certified via verify_n_cokernel."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not in_add(d0.source, m.generators) or not in_add(d0.target, m.generators):
        raise DomainError("n_cokernel: endpoints not in add(M)")
    coker, proj = cokernel_morphism(d0)
    maps: List[Morphism] = []
    connecting = proj                     # X^k -> C^k
    current = coker
    for _ in range(1, n):
        approx = minimal_left_approximation(current, m)
        maps.append(connecting.then(approx))
        current, connecting = cokernel_morphism(approx)
    maps.append(connecting)               # d^n = final cokernel projection
    seq = complex_from_maps(1, maps) if maps else None
    cert = verify_n_cokernel(d0, seq, m)
    if not cert.ok:
        raise HypothesisError(
            "constructed ladder fails n-cokernel verification "
            "(is M n-cluster-tilting?)")
    return seq


def n_kernel(dn: Morphism, m: AddCat, n: int) -> ComplexSeq:
    """Dual ladder: (d^0, ..., d^{n-1}) on degrees 0..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not in_add(dn.source, m.generators) or not in_add(dn.target, m.generators):
        raise DomainError("n_kernel: endpoints not in add(M)")
    ker, incl = kernel_morphism(dn)
    maps: List[Morphism] = []
    connecting = incl                     # K^k -> X^k side
    current = ker
    for _ in range(1, n):
        approx = minimal_right_approximation(current, m)
        maps.append(approx.then(connecting))
        current, connecting = kernel_morphism(approx)
    maps.append(connecting)
    maps.reverse()
    seq = complex_from_maps(0, maps)
    cert = verify_n_kernel(dn, seq, m)
    if not cert.ok:
        raise HypothesisError(
            "constructed ladder fails n-kernel verification "
            "(is M n-cluster-tilting?)")
    return seq


# -- exactness certificates ----------------------------------------------


@dataclass
class ExactnessRecord:
    position: int
    hom_dim: int
    rank_in: int
    rank_out: int
    exact: bool

    def to_dict(self):
        return {"position": self.position, "hom_dim": self.hom_dim,
                "rank_in": self.rank_in, "rank_out": self.rank_out,
                "exact": self.exact}


@dataclass
class HomExactnessFragment:
    direction: str              # "contravariant" or "covariant"
    per_generator: list         # list of (generator index, [ExactnessRecord])
    ok: bool

    def to_dict(self):
        return {"direction": self.direction, "ok": self.ok,
                "per_generator": [
                    {"generator": gi,
                     "records": [r.to_dict() for r in recs]}
                    for gi, recs in self.per_generator]}


@dataclass
class NExactCert:
    n: int
    term_dims: list
    membership: list
    cokernel_side: Optional[HomExactnessFragment]
    kernel_side: Optional[HomExactnessFragment]
    ok: bool = field(init=False)

    def __post_init__(self):
        self.ok = (all(ok for _, ok in self.membership)
                   and (self.cokernel_side is None or self.cokernel_side.ok)
                   and (self.kernel_side is None or self.kernel_side.ok))

    def to_dict(self):
        return {
            "n": self.n,
            "term_dims": [list(d) for d in self.term_dims],
            "membership": [{"degree": k, "in_add": ok} for k, ok in self.membership],
            "cokernel_side": self.cokernel_side.to_dict() if self.cokernel_side else None,
            "kernel_side": self.kernel_side.to_dict() if self.kernel_side else None,
            "verdict": self.ok,
        }


def _chain_of(d_first: Morphism, seq: ComplexSeq) -> List[Morphism]:
    if seq is None:
        return [d_first]
    chain = [d_first] + list(seq.diffs)
    if d_first.target.dims != seq.terms[0].dims:
        raise ValueError("chain endpoints mismatch")
    return chain


def contravariant_fragment(chain: List[Morphism], gens: Sequence[Module]) -> HomExactnessFragment:
    """Exactness of 0 -> Hom(X^{top}, G) -> ... -> Hom(X^0, G) per generator."""
    terms = [chain[0].source] + [d.target for d in chain]
    top = len(terms) - 1
    per_gen = []
    ok = True
    for gi, g in enumerate(gens):
        homdims = [len(hom_basis(t, g)) for t in terms]
        ranks = [_rank_of_vectors(
            [d.then(b).vectorize() for b in hom_basis(d.target, g)],
            g.algebra.p) for d in chain]
        records = []
        inj = ranks[top - 1] == homdims[top]
        records.append(ExactnessRecord(top, homdims[top], 0, ranks[top - 1], inj))
        ok = ok and inj
        for k in range(top - 1, 0, -1):
            ker_dim = homdims[k] - ranks[k - 1]
            exact = ker_dim == ranks[k]
            records.append(ExactnessRecord(k, homdims[k], ranks[k], ranks[k - 1], exact))
            ok = ok and exact
        per_gen.append((gi, records))
    return HomExactnessFragment("contravariant", per_gen, ok)


def covariant_fragment(chain: List[Morphism], gens: Sequence[Module]) -> HomExactnessFragment:
    """Exactness of 0 -> Hom(G, X^0) -> ... -> Hom(G, X^{top}) per generator."""
    terms = [chain[0].source] + [d.target for d in chain]
    top = len(terms) - 1
    per_gen = []
    ok = True
    for gi, g in enumerate(gens):
        homdims = [len(hom_basis(g, t)) for t in terms]
        ranks = [_rank_of_vectors(
            [b.then(d).vectorize() for b in hom_basis(g, d.source)],
            g.algebra.p) for d in chain]
        records = []
        inj = ranks[0] == homdims[0]
        records.append(ExactnessRecord(0, homdims[0], 0, ranks[0], inj))
        ok = ok and inj
        for k in range(1, top):
            ker_dim = homdims[k] - ranks[k]
            exact = ker_dim == ranks[k - 1]
            records.append(ExactnessRecord(k, homdims[k], ranks[k - 1], ranks[k], exact))
            ok = ok and exact
        per_gen.append((gi, records))
    return HomExactnessFragment("covariant", per_gen, ok)


def verify_n_cokernel(d0: Morphism, seq: Optional[ComplexSeq], m: AddCat) -> HomExactnessFragment:
    """Certificate fragment for (d^1..d^n) being an n-cokernel of d^0."""
    chain = _chain_of(d0, seq)
    return contravariant_fragment(chain, m.generators)


def verify_n_kernel(dn: Morphism, seq: Optional[ComplexSeq], m: AddCat) -> HomExactnessFragment:
    """Certificate fragment for (d^0..d^{n-1}) being an n-kernel of d^n."""
    if seq is None:
        chain = [dn]
    else:
        chain = list(seq.diffs) + [dn]
        if seq.terms[-1].dims != dn.source.dims:
            raise ValueError("chain endpoints mismatch")
    return covariant_fragment(chain, m.generators)


def verify_n_exact(x: ComplexSeq, m: AddCat, n: int) -> NExactCert:
    """Full certificate: kernel side, cokernel side and add(M) membership."""
    if len(x.terms) != n + 2:
        raise ValueError(f"expected {n + 2} terms, got {len(x.terms)}")
    membership = [(k, bool(in_add(x.term(k), m.generators))) for k in x.degrees()]
    cok = contravariant_fragment(list(x.diffs), m.generators)
    ker = covariant_fragment(list(x.diffs), m.generators)
    return NExactCert(n, [t.dim_vector() for t in x.terms], membership, cok, ker)


# -- comparison homotopy and contractions ----------------------------------


def comparison_homotopy(f: ComplexMorphism, g: ComplexMorphism,
                        m: AddCat) -> Homotopy:
    """Homotopy h: f -> g with vanishing first component, built degreewise.

    Requires f and g to agree in the lowest degree; each step solves the
    factorization u^k - h^k d^{k-1} = d^k h^{k+1} as a linear system and
    reports the failing degree when the ambient weak-cokernel hypothesis
    does not hold."""
    x, y = f.source, f.target
    lo, hi = x.lo, x.hi
    if not f.component(lo).sub(g.component(lo)).is_zero():
        raise PreconditionError("comparison_homotopy requires equal lowest components")
    u = {k: f.component(k).sub(g.component(k)) for k in x.degrees()}
    h: Dict[int, Morphism] = {}
    for k in range(lo + 1, hi):
        rhs = u[k].sub(_h_then_d(h, k, x, y))
        basis = hom_basis(x.term(k + 1), y.term(k))
        coeffs = solve_in_span([x.diff(k).then(b) for b in basis], rhs)
        if coeffs is None:
            raise HypothesisError(
                f"comparison step unsolvable at degree {k}", degree=k)
        h[k + 1] = assemble_from_span(basis, coeffs, x.term(k + 1), y.term(k))
    final = u[hi].sub(_h_then_d(h, hi, x, y))
    if not final.is_zero():
        raise HypothesisError(
            f"comparison step unsolvable at degree {hi}", degree=hi)
    hty = Homotopy(x, y, h)
    return hty


def _h_then_d(h: Dict[int, Morphism], k: int, x: ComplexSeq, y: ComplexSeq) -> Morphism:
    hk = h.get(k)
    if hk is None:
        return zero_morphism(x.term(k), y.term(k))
    return hk.then(y.diff(k - 1))


def contract(x: ComplexSeq, m: AddCat) -> Optional[Homotopy]:
    """A contraction of x when d^lo splits, else None.

    The retraction is found by a linear solve and extended inductively;
    the cokernel side of x must verify beforehand."""
    lo, hi = x.lo, x.hi
    frag = contravariant_fragment(list(x.diffs), m.generators)
    if not frag.ok:
        raise PreconditionError("contract: cokernel side does not verify")
    first = x.diff(lo)
    basis = hom_basis(x.term(lo + 1), x.term(lo))
    coeffs = solve_in_span([first.then(b) for b in basis],
                           identity_morphism(x.term(lo)))
    if coeffs is None:
        return None
    h: Dict[int, Morphism] = {
        lo + 1: assemble_from_span(basis, coeffs, x.term(lo + 1), x.term(lo))}
    for k in range(lo + 1, hi):
        rhs = identity_morphism(x.term(k)).sub(h[k].then(x.diff(k - 1)))
        basis = hom_basis(x.term(k + 1), x.term(k))
        coeffs = solve_in_span([x.diff(k).then(b) for b in basis], rhs)
        if coeffs is None:
            raise HypothesisError(
                f"contraction step unsolvable at degree {k}", degree=k)
        h[k + 1] = assemble_from_span(basis, coeffs, x.term(k + 1), x.term(k))
    final = identity_morphism(x.term(hi)).sub(h[hi].then(x.diff(hi - 1)))
    if not final.is_zero():
        raise HypothesisError(
            f"contraction does not close at degree {hi}", degree=hi)
    return Homotopy(x, x, h)


def complete_to_chain_map(x: ComplexSeq, y: ComplexSeq, f0: Morphism,
                          start: Optional[int] = None) -> ComplexMorphism:
    """Extend f0: x^lo -> y^lo to a chain map by weak-cokernel factorizations.

    Solvable whenever each d_x^{k+1} is a weak cokernel of d_x^k and y is a
    complex receiving the relevant composites; raises HypothesisError with
    the failing degree otherwise."""
    lo = x.lo if start is None else start
    comps: Dict[int, Morphism] = {lo: f0}
    for k in range(lo, x.hi):
        prev = comps[k]
        target = prev.then(y.diff(k))
        basis = hom_basis(x.term(k + 1), y.term(k + 1))
        coeffs = solve_in_span([x.diff(k).then(b) for b in basis], target)
        if coeffs is None:
            raise HypothesisError(f"chain completion stuck at degree {k}", degree=k)
        comps[k + 1] = assemble_from_span(basis, coeffs, x.term(k + 1), y.term(k + 1))
    return ComplexMorphism(x, y, comps)
