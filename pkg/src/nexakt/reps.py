"""Modules over a path-algebra quotient and their morphisms.

A Module is a quiver representation: a vector space per vertex and a
matrix per arrow (shape dim(target) x dim(source), acting on column
vectors).  Morphisms are vertex-wise matrices satisfying naturality.
Values are treated as immutable after construction; the only caches
attached to them are pure memoisation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fp import (Mat, column_space_basis, kernel_basis, mat_from_vector,
                 quotient_projection, rank, solve_linear)
from .quivers import AlgebraBasis, PathWord

FITTING_RETRIES = 32


class ContextError(ValueError):
    """Operands live over different algebras."""


@dataclass
class Module:
    algebra: AlgebraBasis
    dims: dict                 # vertex name -> dimension
    action: dict               # arrow name -> Mat (dim target x dim source)

    def __post_init__(self):
        q = self.algebra.quiver
        p = self.algebra.p
        for v in q.vertices:
            if self.dims.get(v, 0) < 0:
                raise ValueError("negative dimension")
        self.dims = {v: self.dims.get(v, 0) for v in q.vertices}
        for a in q.arrows:
            m = self.action.get(a.name)
            if m is None:
                m = Mat.zero(self.dims[a.target], self.dims[a.source], p)
                self.action[a.name] = m
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                raise ValueError(f"action of {a.name} has wrong shape")
            if m.p != p:
                raise ValueError("action matrix over wrong field")
        self._check_relations()
        self._memo: dict = {}

    def _check_relations(self):
        p = self.algebra.p
        for rel in self.algebra.relations:
            acc = None
            for coeff, word in rel.terms:
                m = self.path_matrix(word)
                m = m.scale(coeff)
                acc = m if acc is None else acc.add(m)
            if acc is not None and not acc.is_zero():
                raise ValueError("relation does not vanish on module")

    def path_matrix(self, word: PathWord) -> Mat:
        """Matrix of a path acting on the module (word [a,b] -> Mat(b)*Mat(a))."""
        q = self.algebra.quiver
        p = self.algebra.p
        if word.is_trivial():
            return Mat.identity(self.dims[word.base], p)
        m = None
        for name in word.arrows:
            step = self.action[name]
            m = step if m is None else step.mul(m)
        return m

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)


def zero_module(alg: AlgebraBasis) -> Module:
    return Module(alg, {v: 0 for v in alg.quiver.vertices}, {})


@dataclass
class Morphism:
    source: Module
    target: Module
    components: dict            # vertex name -> Mat (dim target_v x dim source_v)

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            # allow equal algebras built separately
            if self.source.algebra.quiver != self.target.algebra.quiver \
               or self.source.algebra.p != self.target.algebra.p:
                raise ContextError("morphism between modules over different algebras")
        alg = self.source.algebra
        p = alg.p
        for v in alg.quiver.vertices:
            m = self.components.get(v)
            if m is None:
                m = Mat.zero(self.target.dims[v], self.source.dims[v], p)
                self.components[v] = m
            if (m.rows, m.cols) != (self.target.dims[v], self.source.dims[v]):
                raise ValueError(f"component at {v} has wrong shape")
        for a in alg.quiver.arrows:
            lhs = self.target.action[a.name].mul(self.components[a.source])
            rhs = self.components[a.target].mul(self.source.action[a.name])
            if lhs.entries != rhs.entries:
                raise ValueError(f"naturality fails at arrow {a.name}")

    def then(self, other: "Morphism") -> "Morphism":
        """Diagrammatic composition: self followed by other."""
        if other.source is not self.target and other.source.dims != self.target.dims:
            raise ValueError("non-composable morphisms")
        return Morphism(self.source, other.target,
                        {v: other.components[v].mul(self.components[v])
                         for v in self.source.algebra.quiver.vertices})

    def add(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.components[v].add(other.components[v])
                         for v in self.components})

    def sub(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.components[v].sub(other.components[v])
                         for v in self.components})

    def scale(self, c: int) -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: m.scale(c) for v, m in self.components.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def equals(self, other: "Morphism") -> bool:
        return all(self.components[v].entries == other.components[v].entries
                   for v in self.components)

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.components.values())

    def is_surjective(self) -> bool:
        return all(rank(m) == m.rows for m in self.components.values())

    def vectorize(self) -> tuple:
        out = []
        for v in self.source.algebra.quiver.vertices:
            out.extend(self.components[v].entries)
        return tuple(out)


def zero_morphism(m: Module, n: Module) -> Morphism:
    p = m.algebra.p
    return Morphism(m, n, {v: Mat.zero(n.dims[v], m.dims[v], p)
                           for v in m.algebra.quiver.vertices})


def identity_morphism(m: Module) -> Morphism:
    p = m.algebra.p
    return Morphism(m, m, {v: Mat.identity(m.dims[v], p)
                           for v in m.algebra.quiver.vertices})


def morphism_from_vector(m: Module, n: Module, vec: Sequence[int]) -> Morphism:
    p = m.algebra.p
    comps = {}
    pos = 0
    for v in m.algebra.quiver.vertices:
        r, c = n.dims[v], m.dims[v]
        comps[v] = mat_from_vector(vec[pos:pos + r * c], r, c, p)
        pos += r * c
    return Morphism(m, n, comps)


def _require_same_algebra(m: Module, n: Module):
    if m.algebra.quiver != n.algebra.quiver or m.algebra.p != n.algebra.p:
        raise ContextError("modules over different algebras")


def hom_basis(m: Module, n: Module) -> List[Morphism]:
    """Basis of Hom(m, n): kernel of the naturality system.

    The basis order is the deterministic kernel_basis order, which every
    certificate downstream relies on.
    """
    _require_same_algebra(m, n)
    key = ("hom", id(n))
    cached = m._memo.get(key)
    if cached is not None and cached[0] is n:
        return cached[1]
    alg = m.algebra
    p = alg.p
    verts = alg.quiver.vertices
    offsets = {}
    pos = 0
    for v in verts:
        offsets[v] = pos
        pos += n.dims[v] * m.dims[v]
    total = pos
    rows: List[List[int]] = []
    for a in alg.quiver.arrows:
        A = n.action[a.name]          # n_s -> n_t
        B = m.action[a.name]          # m_s -> m_t
        s, t = a.source, a.target
        nt, ns = n.dims[t], n.dims[s]
        mt, ms = m.dims[t], m.dims[s]
        # equation: A * x_s - x_t * B = 0, entry (i, j) with i < nt, j < ms
        for i in range(nt):
            for j in range(ms):
                row = [0] * total
                for k in range(ns):
                    row[offsets[s] + k * ms + j] = (row[offsets[s] + k * ms + j]
                                                    + A.at(i, k)) % p
                for k in range(mt):
                    row[offsets[t] + i * mt + k] = (row[offsets[t] + i * mt + k]
                                                    - B.at(k, j)) % p
                rows.append(row)
    system = Mat.from_rows(rows, p, cols=total)
    basis = kernel_basis(system)
    out = [morphism_from_vector(m, n, basis.col(j)) for j in range(basis.cols)]
    m._memo[key] = (n, out)
    return out


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_basis(m, n))


def _induced_action_on_sub(x: Module, incl_cols: Dict[str, Mat]) -> Module:
    """Module structure on vertex-wise column spans closed under the action."""
    alg = x.algebra
    dims = {v: incl_cols[v].cols for v in alg.quiver.vertices}
    action = {}
    for a in alg.quiver.arrows:
        rhs = x.action[a.name].mul(incl_cols[a.source])
        sol = solve_linear(incl_cols[a.target], rhs)
        if sol is None:
            raise ValueError("vertex spans not closed under the action")
        action[a.name] = sol
    return Module(alg, dims, action)


def kernel_morphism(f: Morphism) -> Tuple[Module, Morphism]:
    """Vertex-wise kernel with induced action and its inclusion."""
    incl = {v: kernel_basis(f.components[v]) for v in f.components}
    k = _induced_action_on_sub(f.source, incl)
    return k, Morphism(k, f.source, incl)


def image_morphism(f: Morphism) -> Tuple[Module, Morphism]:
    """Vertex-wise image submodule of the target and its inclusion."""
    incl = {v: column_space_basis(f.components[v]) for v in f.components}
    im = _induced_action_on_sub(f.target, incl)
    return im, Morphism(im, f.target, incl)


def cokernel_morphism(f: Morphism) -> Tuple[Module, Morphism]:
    """Vertex-wise cokernel with induced action and its projection."""
    alg = f.source.algebra
    proj = {v: quotient_projection(f.components[v]) for v in f.components}
    dims = {v: proj[v].rows for v in proj}
    action = {}
    for a in alg.quiver.arrows:
        # solve Q(a) * proj_s = proj_t * action_t(a); proj_s is surjective
        rhs = proj[a.target].mul(f.target.action[a.name])
        sol = solve_linear(proj[a.source].transpose(), rhs.transpose())
        if sol is None:
            raise AssertionError("cokernel action not induced")
        action[a.name] = sol.transpose()
    c = Module(alg, dims, action)
    return c, Morphism(f.target, c, proj)


def quotient_by_submodule(x: Module, span: Dict[str, Mat]) -> Tuple[Module, Morphism]:
    """Quotient of x by the submodule spanned vertex-wise by ``span``."""
    sub = _induced_action_on_sub(x, {v: column_space_basis(span[v]) for v in span})
    incl = Morphism(sub, x, {v: column_space_basis(span[v]) for v in span})
    return cokernel_morphism(incl)


def direct_sum(mods: Sequence[Module]) -> Tuple[Module, List[Morphism], List[Morphism]]:
    """Direct sum with injections and projections."""
    if not mods:
        raise ValueError("empty direct sum; use zero_module")
    alg = mods[0].algebra
    for m in mods[1:]:
        _require_same_algebra(mods[0], m)
    p = alg.p
    dims = {v: sum(m.dims[v] for m in mods) for v in alg.quiver.vertices}
    action = {}
    for a in alg.quiver.arrows:
        blocks = []
        for i, m in enumerate(mods):
            row = []
            for j, m2 in enumerate(mods):
                if i == j:
                    row.append(m.action[a.name])
                else:
                    row.append(Mat.zero(m.dims[a.target], m2.dims[a.source], p))
            blocks.append(row)
        action[a.name] = Mat.block(blocks)
    total = Module(alg, dims, action)
    injections, projections = [], []
    for i, m in enumerate(mods):
        inj, prj = {}, {}
        for v in alg.quiver.vertices:
            before = sum(mods[j].dims[v] for j in range(i))
            after = sum(mods[j].dims[v] for j in range(i + 1, len(mods)))
            idm = Mat.identity(m.dims[v], p)
            inj[v] = Mat.vstack([Mat.zero(before, m.dims[v], p), idm,
                                 Mat.zero(after, m.dims[v], p)])
            prj[v] = inj[v].transpose()
        injections.append(Morphism(m, total, inj))
        projections.append(Morphism(total, m, prj))
    return total, injections, projections


def stack_morphisms_to_sum(maps: Sequence[Morphism]) -> Morphism:
    """Assemble x -> sum(targets) from morphisms sharing the source."""
    x = maps[0].source
    total, injections, _ = direct_sum([f.target for f in maps])
    acc = zero_morphism(x, total)
    for f, inj in zip(maps, injections):
        acc = acc.add(f.then(inj))
    return acc


def stack_morphisms_from_sum(maps: Sequence[Morphism]) -> Morphism:
    """Assemble sum(sources) -> x from morphisms sharing the target."""
    x = maps[0].target
    total, _, projections = direct_sum([f.source for f in maps])
    acc = zero_morphism(total, x)
    for f, prj in zip(maps, projections):
        acc = acc.add(prj.then(f))
    return acc


# -- linear problems in Hom spaces -------------------------------------


def solve_in_span(candidates: Sequence[Morphism], target: Morphism) -> Optional[List[int]]:
    """Coefficients c with sum(c_i * candidates_i) = target, or None."""
    p = target.source.algebra.p
    tv = target.vectorize()
    if not candidates:
        return [] if all(x == 0 for x in tv) else None
    cols = [c.vectorize() for c in candidates]
    mat = Mat.from_rows([[col[i] for col in cols] for i in range(len(tv))],
                        p, cols=len(cols))
    rhs = Mat.from_rows([[x] for x in tv], p, cols=1)
    sol = solve_linear(mat, rhs)
    if sol is None:
        return None
    return [sol.at(i, 0) for i in range(len(candidates))]


def assemble_from_span(candidates: Sequence[Morphism], coeffs: Sequence[int],
                       source: Module, target: Module) -> Morphism:
    acc = zero_morphism(source, target)
    for c, cand in zip(coeffs, candidates):
        if c:
            acc = acc.add(cand.scale(c))
    return acc


def factor_through(f: Morphism, g: Morphism) -> Optional[Morphism]:
    """Some phi with g.then(phi) = f (domains: g: A -> B, f: A -> C)."""
    basis = hom_basis(g.target, f.target)
    coeffs = solve_in_span([g.then(b) for b in basis], f)
    if coeffs is None:
        return None
    return assemble_from_span(basis, coeffs, g.target, f.target)


def lift_through(f: Morphism, g: Morphism) -> Optional[Morphism]:
    """Some phi with phi.then(g) = f (domains: g: B -> C, f: A -> C)."""
    basis = hom_basis(f.source, g.source)
    coeffs = solve_in_span([b.then(g) for b in basis], f)
    if coeffs is None:
        return None
    return assemble_from_span(basis, coeffs, f.source, g.source)


# -- membership in add(generators) ------------------------------------


@dataclass
class MembershipWitness:
    member: bool
    detail: dict

    def __bool__(self) -> bool:
        return self.member


def in_add(x: Module, gens: Sequence[Module]) -> MembershipWitness:
    """x lies in add(gens) iff id_x is spanned by composites through the
    generators inside End(x)."""
    for g in gens:
        _require_same_algebra(x, g)
    if x.is_zero():
        return MembershipWitness(True, {"reason": "zero module"})
    products = []
    for gi, g in enumerate(gens):
        to_g = hom_basis(x, g)
        from_g = hom_basis(g, x)
        for a, f in enumerate(to_g):
            for b, h in enumerate(from_g):
                products.append(((gi, a, b), f.then(h).vectorize()))
    ident = identity_morphism(x).vectorize()
    p = x.algebra.p
    if not products:
        return MembershipWitness(False, {"reason": "no factorizations through generators"})
    cols = Mat.from_rows([[vec[i] for _, vec in products]
                          for i in range(len(ident))], p, cols=len(products))
    sol = solve_linear(cols, Mat.from_rows([[c] for c in ident], p, cols=1))
    if sol is None:
        return MembershipWitness(False, {"reason": "identity outside factoring ideal"})
    coeffs = [(label, sol.at(k, 0)) for k, (label, _) in enumerate(products)
              if sol.at(k, 0)]
    return MembershipWitness(True, {"coefficients": coeffs})


# -- isomorphism testing and Fitting decomposition ---------------------


def are_isomorphic(m: Module, n: Module, seed: int, retries: int = FITTING_RETRIES) -> bool:
    """Probabilistic isomorphism test: equal dimension vectors, then random
    Hom elements sampled for vertex-wise invertibility."""
    _require_same_algebra(m, n)
    if m.dim_vector() != n.dim_vector():
        return False
    if m.total_dim == 0:
        return True
    return iso_witness(m, n, seed, retries) is not None


def iso_witness(m: Module, n: Module, seed: int,
                retries: int = FITTING_RETRIES) -> Optional[Morphism]:
    if m.dim_vector() != n.dim_vector():
        return None
    if m.total_dim == 0:
        return zero_morphism(m, n)
    basis = hom_basis(m, n)
    if not basis:
        return None
    p = m.algebra.p
    rng = random.Random(seed)
    for _ in range(retries):
        coeffs = [rng.randrange(p) for _ in basis]
        cand = zero_morphism(m, n)
        for c, b in zip(coeffs, basis):
            if c:
                cand = cand.add(b.scale(c))
        if all(rank(cand.components[v]) == m.dims[v]
               for v in m.algebra.quiver.vertices):
            return cand
    return None


_EIGEN_SCAN_LIMIT = 1024


def _fitting_split(x: Module, rng: random.Random) -> Optional[Tuple[Module, Module]]:
    """One Fitting attempt: x = ker(e'^D) + im(e'^D) for a random sample
    e in End(x) and its scalar shifts e' = e - t.

    Shifting by the eigenvalues of e makes a decomposable module split
    with probability close to 1 per sample; for very large p (beyond the
    eigenvalue scan limit) only t = 0 is tried, as sampled."""
    from .fp import det
    basis = hom_basis(x, x)
    p = x.algebra.p
    e = zero_morphism(x, x)
    for b in basis:
        c = rng.randrange(p)
        if c:
            e = e.add(b.scale(c))
    if p <= _EIGEN_SCAN_LIMIT:
        shifts = [t for t in range(p)
                  if any(m.rows > 0 and det(_shift(m, t)) == 0
                         for m in e.components.values())]
    else:
        shifts = [0]
    d = x.total_dim
    for t in shifts:
        shifted = e.sub(identity_morphism(x).scale(t))
        power = identity_morphism(x)
        for _ in range(d):
            power = power.then(shifted)
        ker, _ = kernel_morphism(power)
        im, _ = image_morphism(power)
        if ker.total_dim and im.total_dim:
            return ker, im
    return None


def _shift(m: Mat, t: int) -> Mat:
    return m.sub(Mat.identity(m.rows, m.p).scale(t))


def split_indecomposables(x: Module, seed: int,
                          retries: int = FITTING_RETRIES) -> List[Tuple[Module, int]]:
    """Fitting decomposition into indecomposables with multiplicities.

    Deterministic given the seed.  Indecomposability verdicts are
    probabilistic (a factor is declared indecomposable after ``retries``
    consecutive trivial splittings); see exhaustively_indecomposable for
    the upgrade available on tiny endomorphism rings.
    """
    rng = random.Random(seed)
    parts: List[Module] = []

    def work(m: Module):
        if m.total_dim == 0:
            return
        for _ in range(retries):
            split = _fitting_split(m, rng)
            if split is not None:
                work(split[0])
                work(split[1])
                return
        parts.append(m)

    work(x)
    grouped: List[Tuple[Module, int]] = []
    for part in parts:
        for i, (rep, count) in enumerate(grouped):
            if are_isomorphic(rep, part, rng.randrange(2**32)):
                grouped[i] = (rep, count + 1)
                break
        else:
            grouped.append((part, 1))
    return grouped


def exhaustively_indecomposable(x: Module, budget: int = 1 << 16) -> Optional[bool]:
    """Scan End(x) for nontrivial idempotents when the space is small enough.

    Returns None when p^dim End exceeds the budget (verdict stays
    probabilistic in that case).
    """
    if x.total_dim == 0:
        return False
    basis = hom_basis(x, x)
    p = x.algebra.p
    if p ** len(basis) > budget:
        return None
    coeffs = [0] * len(basis)
    while True:
        e = zero_morphism(x, x)
        for c, b in zip(coeffs, basis):
            if c:
                e = e.add(b.scale(c))
        if e.then(e).equals(e) and not e.is_zero() and not e.equals(identity_morphism(x)):
            return False
        i = 0
        while i < len(coeffs):
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1
        else:
            return True


# -- projective, injective and simple modules -------------------------


def simple_module(alg: AlgebraBasis, v: str) -> Module:
    alg.quiver.vertex_index(v)
    dims = {w: (1 if w == v else 0) for w in alg.quiver.vertices}
    return Module(alg, dims, {})


def projective_module(alg: AlgebraBasis, v: str) -> Module:
    """Indecomposable projective P_v: basis paths starting at v, graded by
    target vertex, arrows acting by right concatenation."""
    alg.quiver.vertex_index(v)
    by_vertex: Dict[str, List[int]] = {w: [] for w in alg.quiver.vertices}
    for i in range(alg.dim):
        if alg.source_of[i] == v:
            by_vertex[alg.target_of[i]].append(i)
    dims = {w: len(by_vertex[w]) for w in alg.quiver.vertices}
    p = alg.p
    action = {}
    for a in alg.quiver.arrows:
        src_idx = by_vertex[a.source]
        tgt_idx = by_vertex[a.target]
        tgt_pos = {b: r for r, b in enumerate(tgt_idx)}
        aj = alg.arrow_basis_index(a.name)
        rows = [[0] * len(src_idx) for _ in tgt_idx]
        for cpos, b in enumerate(src_idx):
            for k, coeff in alg.multiply(b, aj):
                rows[tgt_pos[k]][cpos] = coeff
        action[a.name] = Mat.from_rows(rows, p, cols=len(src_idx))
    return Module(alg, dims, action)


def injective_module(alg: AlgebraBasis, v: str) -> Module:
    """Indecomposable injective I_v: dual of P_v over the opposite algebra,
    realized on basis paths ending at v."""
    alg.quiver.vertex_index(v)
    by_vertex: Dict[str, List[int]] = {w: [] for w in alg.quiver.vertices}
    for i in range(alg.dim):
        if alg.target_of[i] == v:
            by_vertex[alg.source_of[i]].append(i)
    dims = {w: len(by_vertex[w]) for w in alg.quiver.vertices}
    p = alg.p
    action = {}
    for a in alg.quiver.arrows:
        # action = transpose of left concatenation by a on paths ending at v
        src_idx = by_vertex[a.source]   # paths a.source -> v
        tgt_idx = by_vertex[a.target]   # paths a.target -> v
        src_pos = {b: r for r, b in enumerate(src_idx)}
        aj = alg.arrow_basis_index(a.name)
        left = [[0] * len(tgt_idx) for _ in src_idx]
        for cpos, b in enumerate(tgt_idx):
            for k, coeff in alg.multiply(aj, b):
                left[src_pos[k]][cpos] = coeff
        lm = Mat.from_rows(left, p, cols=len(tgt_idx))
        action[a.name] = lm.transpose()
    return Module(alg, dims, action)


def all_projectives(alg: AlgebraBasis) -> List[Module]:
    return [projective_module(alg, v) for v in alg.quiver.vertices]


def all_injectives(alg: AlgebraBasis) -> List[Module]:
    return [injective_module(alg, v) for v in alg.quiver.vertices]


def regular_module(alg: AlgebraBasis) -> Module:
    return direct_sum(all_projectives(alg))[0]


# -- duality D = Hom_K(-, K) ------------------------------------------


def dual_module(m: Module, opp: AlgebraBasis) -> Module:
    """D(m) as a module over the opposite algebra (same dimensions,
    transposed actions along reversed arrows)."""
    dims = dict(m.dims)
    action = {a.name: m.action[a.name].transpose() for a in m.algebra.quiver.arrows}
    return Module(opp, dims, action)


def dual_morphism(f: Morphism, opp: AlgebraBasis) -> Morphism:
    return Morphism(dual_module(f.target, opp), dual_module(f.source, opp),
                    {v: mat.transpose() for v, mat in f.components.items()})


# -- radical, top, socle ----------------------------------------------


def radical_span(m: Module) -> Dict[str, Mat]:
    """rad m = sum of images of all arrow actions, vertex-wise."""
    alg = m.algebra
    p = alg.p
    span = {}
    for v in alg.quiver.vertices:
        cols = [Mat.zero(m.dims[v], 0, p)]
        for a in alg.quiver.arrows:
            if a.target == v:
                cols.append(m.action[a.name])
        span[v] = Mat.hstack(cols)
    return span


def socle_span(m: Module) -> Dict[str, Mat]:
    """soc m = joint kernel of all arrow actions, vertex-wise."""
    alg = m.algebra
    p = alg.p
    span = {}
    for v in alg.quiver.vertices:
        rows = [Mat.zero(0, m.dims[v], p)]
        for a in alg.quiver.arrows:
            if a.source == v:
                rows.append(m.action[a.name])
        span[v] = kernel_basis(Mat.vstack(rows))
    return span
