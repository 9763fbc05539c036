import random

import pytest

from nexakt.fp import Mat, rank, random_invertible
from nexakt.reps import (ContextError, Module, Morphism, are_isomorphic,
                         cokernel_morphism, direct_sum,
                         exhaustively_indecomposable, hom_basis,
                         identity_morphism, in_add, injective_module,
                         kernel_morphism, projective_module, simple_module,
                         split_indecomposables, zero_module, zero_morphism,
                         regular_module, all_projectives)

from conftest import linear_a3_j2, preprojective_a2


# -- fixtures ----------------------------------------------------------


@pytest.fixture
def a3_mods(a3):
    return {
        "P0": projective_module(a3, "0"),
        "P1": projective_module(a3, "1"),
        "P2": projective_module(a3, "2"),
        "S0": simple_module(a3, "0"),
        "S1": simple_module(a3, "1"),
        "S2": simple_module(a3, "2"),
    }


def dim_vec(m):
    return m.dim_vector()


# -- projectives / injectives ------------------------------------------


def test_a3_projective_dimensions(a3, a3_mods):
    assert dim_vec(a3_mods["P0"]) == (1, 0, 0)
    assert dim_vec(a3_mods["P1"]) == (1, 1, 0)
    assert dim_vec(a3_mods["P2"]) == (0, 1, 1)
    # P1's a-action is an isomorphism (identity in the path basis)
    assert a3_mods["P1"].action["a"].to_lists() == [[1]]


def test_a3_injective_dimensions(a3):
    assert injective_module(a3, "2").dim_vector() == (0, 0, 1)
    assert injective_module(a3, "0").dim_vector() == (1, 1, 0)
    assert injective_module(a3, "1").dim_vector() == (0, 1, 1)


def test_single_vertex_injective_equals_projective():
    from nexakt.fp import FieldSpec
    from nexakt.quivers import Quiver, build_algebra
    alg = build_algebra(Quiver.build(["*"], []), [], 1, FieldSpec(101))
    i = injective_module(alg, "*")
    p = projective_module(alg, "*")
    s = simple_module(alg, "*")
    assert i.dim_vector() == p.dim_vector() == s.dim_vector() == (1,)


def test_pi2_projectives(pi2):
    p1 = projective_module(pi2, "1")
    assert sorted(p1.dims.values()) == [1, 1]


def test_projective_dim_formula(a3):
    for v in a3.quiver.vertices:
        pv = projective_module(a3, v)
        expect = sum(len(a3.block_indices(v, w)) for w in a3.quiver.vertices)
        assert pv.total_dim == expect
        iv = injective_module(a3, v)
        expect_i = sum(len(a3.block_indices(w, v)) for w in a3.quiver.vertices)
        assert iv.total_dim == expect_i


# -- hom spaces ---------------------------------------------------------


def test_hom_p1_p2_is_one_dimensional(a3_mods):
    assert len(hom_basis(a3_mods["P1"], a3_mods["P2"])) == 1
    assert len(hom_basis(a3_mods["P2"], a3_mods["P1"])) == 0


def test_identity_is_a_morphism(a3_mods):
    x = a3_mods["P1"]
    basis = hom_basis(x, x)
    ident = identity_morphism(x)
    # identity lies in the span: End(P1) is F_p
    assert len(basis) == 1
    assert basis[0].scale(_leading_coeff(basis[0], ident)).equals(ident)


def _leading_coeff(b, target):
    bv, tv = b.vectorize(), target.vectorize()
    for x, y in zip(bv, tv):
        if x:
            return (y * pow(x, b.source.algebra.p - 2, b.source.algebra.p)) \
                % b.source.algebra.p
    raise AssertionError


def test_hom_respects_context(a3, pi2):
    with pytest.raises(ContextError):
        hom_basis(projective_module(a3, "0"), projective_module(pi2, "1"))


# -- kernels and cokernels ----------------------------------------------


def test_kernel_of_radical_map(a3_mods):
    f = hom_basis(a3_mods["P1"], a3_mods["P2"])[0]
    k, incl = kernel_morphism(f)
    assert k.dim_vector() == (1, 0, 0)  # S0
    assert incl.is_injective()
    assert incl.then(f).is_zero()


def test_kernel_of_identity_and_zero(a3_mods):
    x = a3_mods["P2"]
    k, _ = kernel_morphism(identity_morphism(x))
    assert k.total_dim == 0
    k2, incl2 = kernel_morphism(zero_morphism(x, a3_mods["S0"]))
    assert k2.dim_vector() == x.dim_vector()


def test_cokernel_of_radical_map(a3_mods):
    f = hom_basis(a3_mods["P1"], a3_mods["P2"])[0]
    c, proj = cokernel_morphism(f)
    assert c.dim_vector() == (0, 0, 1)  # S2
    assert proj.is_surjective()
    assert f.then(proj).is_zero()


def test_cokernel_trivial_cases(a3_mods):
    x = a3_mods["P1"]
    c, _ = cokernel_morphism(identity_morphism(x))
    assert c.total_dim == 0
    c2, proj2 = cokernel_morphism(zero_morphism(zero_module(x.algebra), x))
    assert c2.dim_vector() == x.dim_vector()


def test_rank_nullity_per_vertex(a3_mods):
    f = hom_basis(a3_mods["P1"], a3_mods["P2"])[0]
    k, _ = kernel_morphism(f)
    for v in "012":
        assert k.dims[v] + rank(f.components[v]) == f.source.dims[v]


def test_image_factorization_recovered(a3_mods):
    # coker(kernel inclusion) is the image: f factors through it injectively
    from nexakt.reps import image_morphism
    f = hom_basis(a3_mods["P1"], a3_mods["P2"])[0]
    k, incl = kernel_morphism(f)
    coim, proj = cokernel_morphism(incl)
    im, im_incl = image_morphism(f)
    assert coim.dim_vector() == im.dim_vector()
    # the induced map coim -> target composes with proj back to f
    from nexakt.reps import factor_through
    induced = factor_through(f, proj)
    assert induced is not None
    assert proj.then(induced).equals(f)
    assert induced.is_injective()


# -- add membership ------------------------------------------------------


def test_in_add_summand(a3_mods):
    big = direct_sum([a3_mods["S2"], a3_mods["P1"]])[0]
    assert in_add(a3_mods["S2"], [big])


def test_in_add_rejects_s1(a3_mods):
    gens = [a3_mods["P0"], a3_mods["P1"], a3_mods["P2"]]
    w = in_add(a3_mods["S1"], gens)
    assert not w
    assert "reason" in w.detail


def test_in_add_zero_module(a3, a3_mods):
    assert in_add(zero_module(a3), [a3_mods["P0"]])


# -- decomposition and isomorphism ---------------------------------------


def test_split_decomposition(a3_mods):
    x = direct_sum([a3_mods["P1"], a3_mods["P1"], a3_mods["S2"]])[0]
    parts = split_indecomposables(x, seed=11)
    by_mult = sorted((count, part.dim_vector()) for part, count in parts)
    assert by_mult == [(1, (0, 0, 1)), (2, (1, 1, 0))]


def test_split_zero_and_indecomposable(a3, a3_mods):
    assert split_indecomposables(zero_module(a3), seed=1) == []
    parts = split_indecomposables(a3_mods["P1"], seed=1)
    assert len(parts) == 1 and parts[0][1] == 1


def test_split_reassembles_isomorphically(a3_mods):
    rng = random.Random(5)
    mods = [a3_mods["P2"], a3_mods["S0"], a3_mods["P2"]]
    x = direct_sum(mods)[0]
    parts = split_indecomposables(x, seed=23)
    rebuilt = direct_sum([part for part, count in parts for _ in range(count)])[0]
    assert sum(c * part.total_dim for part, c in parts) == x.total_dim
    assert are_isomorphic(rebuilt, x, seed=3)


def test_are_isomorphic_basics(a3_mods):
    assert are_isomorphic(a3_mods["P1"], a3_mods["P1"], seed=1)
    assert not are_isomorphic(a3_mods["P1"], a3_mods["P2"], seed=1)


def test_are_isomorphic_base_change(a3_mods):
    rng = random.Random(17)
    x = direct_sum([a3_mods["P1"], a3_mods["S2"]])[0]
    p = x.algebra.p
    u = {v: random_invertible(x.dims[v], p, rng) for v in x.algebra.quiver.vertices}
    uinv = {}
    for v, m in u.items():
        n = m.rows
        from nexakt.fp import solve_linear, Mat as _M
        uinv[v] = solve_linear(m, _M.identity(n, p))
    twisted = Module(x.algebra, dict(x.dims),
                     {a.name: u[a.target].mul(x.action[a.name]).mul(uinv[a.source])
                      for a in x.algebra.quiver.arrows})
    assert are_isomorphic(x, twisted, seed=23)


def test_exhaustive_indecomposability_small_field():
    alg = linear_a3_j2(p=2)
    p1 = projective_module(alg, "1")
    assert exhaustively_indecomposable(p1) is True
    two = direct_sum([p1, p1])[0]
    assert exhaustively_indecomposable(two) is False


def test_regular_module_is_sum_of_projectives(a3):
    lam = regular_module(a3)
    assert lam.total_dim == a3.dim
    for pv in all_projectives(a3):
        assert in_add(pv, [lam])
