import pytest

from nexakt.addcat import (DomainError, HypothesisError, PreconditionError,
                           add_category, comparison_homotopy,
                           complete_to_chain_map, contract, n_cokernel,
                           n_kernel, minimal_left_approximation,
                           minimal_right_approximation, verify_n_cokernel,
                           verify_n_exact, verify_n_kernel, weak_cokernel,
                           weak_kernel)
from nexakt.complexes import (ComplexSeq, ComplexMorphism, complex_from_maps,
                              identity_complex_morphism, interval_complex,
                              pad_complex, verify_homotopy,
                              zero_complex_morphism, zero_homotopy)
from nexakt.reps import (are_isomorphic, direct_sum, hom_basis,
                         identity_morphism, projective_module, simple_module,
                         zero_module, zero_morphism)


@pytest.fixture
def m3(a3):
    gens = [projective_module(a3, "0"), projective_module(a3, "1"),
            projective_module(a3, "2"), simple_module(a3, "2")]
    return add_category(a3, gens, seed=1)


@pytest.fixture
def mods(a3):
    return {
        "P0": projective_module(a3, "0"),
        "P1": projective_module(a3, "1"),
        "P2": projective_module(a3, "2"),
        "S0": simple_module(a3, "0"),
        "S1": simple_module(a3, "1"),
        "S2": simple_module(a3, "2"),
    }


def socle_inclusion(a3, mods):
    basis = hom_basis(mods["S0"], mods["P1"])
    assert len(basis) == 1
    return basis[0]


def m3_sequence(a3, mods):
    d0 = hom_basis(mods["S0"], mods["P1"])[0]
    d1 = hom_basis(mods["P1"], mods["P2"])[0]
    d2 = hom_basis(mods["P2"], mods["S2"])[0]
    return complex_from_maps(0, [d0, d1, d2])


# -- AddCat construction --------------------------------------------------


def test_add_category_flags(m3):
    assert m3.contains_projectives
    assert m3.contains_injectives  # I0, I1 = P1, P2 shifts; I2 = S2


def test_add_category_rejects_decomposable(a3, mods):
    big = direct_sum([mods["P1"], mods["S2"]])[0]
    with pytest.raises(ValueError):
        add_category(a3, [big], seed=0)


def test_add_category_rejects_duplicates(a3, mods):
    with pytest.raises(ValueError):
        add_category(a3, [mods["P1"], mods["P1"]], seed=0)


# -- approximations ---------------------------------------------------------


def test_left_approx_of_s1_is_socle_embedding(m3, mods):
    f = minimal_left_approximation(mods["S1"], m3)
    assert f.target.dim_vector() == (0, 1, 1)  # P2
    assert f.is_injective()


def test_left_approx_of_member_is_iso(m3, mods):
    f = minimal_left_approximation(mods["P1"], m3)
    assert f.is_injective() and f.is_surjective()


def test_left_approx_into_empty_cat(a3, mods):
    empty = add_category(a3, [], seed=0)
    f = minimal_left_approximation(mods["P1"], empty)
    assert f.target.total_dim == 0


def test_right_approx_of_s1_is_top_projection(m3, mods):
    f = minimal_right_approximation(mods["S1"], m3)
    assert f.source.dim_vector() == (1, 1, 0)  # P1
    assert f.is_surjective()


def test_right_approx_of_member_is_iso(m3, mods):
    f = minimal_right_approximation(mods["S2"], m3)
    assert f.is_injective() and f.is_surjective()


def test_right_approx_from_empty_cat(a3, mods):
    empty = add_category(a3, [], seed=0)
    f = minimal_right_approximation(mods["P1"], empty)
    assert f.source.total_dim == 0


# -- weak (co)kernels --------------------------------------------------------


def test_weak_cokernel_of_socle_inclusion(a3, m3, mods):
    f = socle_inclusion(a3, mods)
    g = weak_cokernel(f, m3)
    assert g.target.dim_vector() == (0, 1, 1)  # P2
    assert f.then(g).is_zero()


def test_weak_cokernel_of_epi_is_zero_map(a3, m3, mods):
    f = hom_basis(mods["P2"], mods["S2"])[0]
    g = weak_cokernel(f, m3)
    assert g.target.total_dim == 0


def test_weak_cokernel_of_zero_from_zero(a3, m3, mods):
    f = zero_morphism(zero_module(a3), mods["P1"])
    g = weak_cokernel(f, m3)
    assert g.is_injective() and g.is_surjective()


def test_weak_cokernel_rejects_outsiders(a3, m3, mods):
    f = zero_morphism(mods["S1"], mods["P1"])
    with pytest.raises(DomainError):
        weak_cokernel(f, m3)


def test_weak_kernel_of_radical_map(a3, m3, mods):
    g = hom_basis(mods["P1"], mods["P2"])[0]
    f = weak_kernel(g, m3)
    assert f.source.dim_vector() == (1, 0, 0)  # S0 = P0
    assert f.then(g).is_zero()


def test_weak_kernel_of_mono_is_zero(a3, m3, mods):
    f = socle_inclusion(a3, mods)
    k = weak_kernel(f, m3)
    assert k.source.total_dim == 0


# -- n-cokernels, n-kernels ---------------------------------------------------


def test_n_cokernel_of_socle_inclusion(a3, m3, mods):
    seq = n_cokernel(socle_inclusion(a3, mods), m3, 2)
    assert [t.dim_vector() for t in seq.terms] == [(1, 1, 0), (0, 1, 1), (0, 0, 1)]
    assert seq.diffs[-1].is_surjective()


def test_n_cokernel_of_identity(a3, m3, mods):
    seq = n_cokernel(identity_morphism(mods["P1"]), m3, 2)
    assert seq.terms[1].total_dim == 0
    assert seq.terms[2].total_dim == 0


def test_n_cokernel_of_split_mono(a3, m3, mods):
    total, injs, _ = direct_sum([mods["P1"], mods["S2"]])
    seq = n_cokernel(injs[0], m3, 2)
    assert seq.terms[1].dim_vector() == (0, 0, 1)
    assert seq.terms[2].total_dim == 0


def test_n_kernel_of_top_projection(a3, m3, mods):
    dn = hom_basis(mods["P2"], mods["S2"])[0]
    seq = n_kernel(dn, m3, 2)
    assert [t.dim_vector() for t in seq.terms] == [(1, 0, 0), (1, 1, 0), (0, 1, 1)]
    assert seq.diffs[0].is_injective()


def test_n_kernel_of_identity(a3, m3, mods):
    seq = n_kernel(identity_morphism(mods["P1"]), m3, 2)
    assert seq.terms[0].total_dim == 0
    assert seq.terms[1].total_dim == 0


def test_n_kernel_of_split_epi(a3, m3, mods):
    total, _, prjs = direct_sum([mods["P1"], mods["S2"]])
    seq = n_kernel(prjs[1], m3, 2)
    assert seq.terms[0].total_dim == 0
    assert seq.terms[1].dim_vector() == (1, 1, 0)


# -- verification -------------------------------------------------------------


def test_verify_m3_sequence_passes(a3, m3, mods):
    x = m3_sequence(a3, mods)
    cert = verify_n_exact(x, m3, 2)
    assert cert.ok
    assert len(cert.membership) == 4


def test_verify_contractible_padded_complex(a3, m3, mods):
    x = pad_complex(interval_complex(1, mods["P1"]), 0, 3)
    cert = verify_n_exact(x, m3, 2)
    assert cert.ok


def test_verify_fails_with_zero_tail(a3, m3, mods):
    d0 = hom_basis(mods["S0"], mods["P1"])[0]
    d1 = hom_basis(mods["P1"], mods["P2"])[0]
    x = ComplexSeq(0, [mods["S0"], mods["P1"], mods["P2"], mods["S2"]],
                   [d0, d1, zero_morphism(mods["P2"], mods["S2"])])
    cert = verify_n_exact(x, m3, 2)
    assert not cert.ok


def test_verify_n_cokernel_fragment(a3, m3, mods):
    d0 = hom_basis(mods["S0"], mods["P1"])[0]
    tail = n_cokernel(d0, m3, 2)
    frag = verify_n_cokernel(d0, tail, m3)
    assert frag.ok
    # breaking the tail: replace last map by zero
    broken = ComplexSeq(1, list(tail.terms),
                        [tail.diffs[0], zero_morphism(tail.terms[1], tail.terms[2])])
    frag2 = verify_n_cokernel(d0, broken, m3)
    assert not frag2.ok


def test_verify_n_kernel_fragment(a3, m3, mods):
    dn = hom_basis(mods["P2"], mods["S2"])[0]
    head = n_kernel(dn, m3, 2)
    assert verify_n_kernel(dn, head, m3).ok


def test_zero_chain_passes(a3, m3):
    z = zero_module(a3)
    x = ComplexSeq(0, [z, z, z, z],
                   [zero_morphism(z, z) for _ in range(3)])
    assert verify_n_exact(x, m3, 2).ok


# -- comparison homotopy and contractions --------------------------------------


def test_comparison_equal_maps_gives_zero(a3, m3, mods):
    x = m3_sequence(a3, mods)
    f = identity_complex_morphism(x)
    h = comparison_homotopy(f, f, m3)
    assert verify_homotopy(f, f, h)
    assert all(v.is_zero() for v in h.components.values())


def test_comparison_roundtrip_with_constructed_homotopy(a3, m3, mods):
    # pad the M3 sequence with i_1(P2) so a nonzero homotopy component
    # exists (the identity block of the padding); build g = id + (hd + dh)
    # from a chosen h and confirm the solver recovers a verifying homotopy
    from nexakt.complexes import direct_sum_complexes
    from nexakt.fp import Mat
    from nexakt.reps import Morphism
    x = m3_sequence(a3, mods)
    pad = pad_complex(interval_complex(1, mods["P2"]), 0, 3)
    y = direct_sum_complexes(x, pad)
    p = a3.p
    # h2: y^2 -> y^1, identity on the trailing padding block
    comps = {}
    for v in a3.quiver.vertices:
        rows, cols = y.term(1).dims[v], y.term(2).dims[v]
        padd = pad.term(1).dims[v]
        grid = [[0] * cols for _ in range(rows)]
        for i in range(padd):
            grid[rows - padd + i][cols - padd + i] = 1
        comps[v] = Mat.from_rows(grid, p, cols=cols)
    h2 = Morphism(y.term(2), y.term(1), comps)
    u1 = y.diff(1).then(h2)
    u2 = h2.then(y.diff(1))
    assert not u1.is_zero()
    f = identity_complex_morphism(y)
    g = ComplexMorphism(y, y, {
        0: f.component(0),
        1: f.component(1).add(u1),
        2: f.component(2).add(u2),
        3: f.component(3)})
    h = comparison_homotopy(f, g, m3)
    assert verify_homotopy(f, g, h)
    assert h.component(1).is_zero()
    assert not all(v.is_zero() for v in h.components.values())


def test_comparison_precondition(a3, m3, mods):
    x = m3_sequence(a3, mods)
    f = identity_complex_morphism(x)
    g = zero_complex_morphism(x, x)
    with pytest.raises(PreconditionError):
        comparison_homotopy(f, g, m3)


def test_comparison_on_padded_pair(a3, m3, mods):
    # two 2-cokernels of the socle inclusion: minimal and padded
    d0 = hom_basis(mods["S0"], mods["P1"])[0]
    tail = n_cokernel(d0, m3, 2)
    x = ComplexSeq(0, [mods["S0"]] + list(tail.terms), [d0] + list(tail.diffs))
    pad = interval_complex(1, mods["P2"])
    from nexakt.complexes import direct_sum_complexes
    y = direct_sum_complexes(x, pad_complex(pad, 0, 3))
    fwd = complete_to_chain_map(x, y, _corner_identity(x, y))
    back = complete_to_chain_map(y, x, _corner_identity(y, x))
    rt = fwd.then(back)
    h = comparison_homotopy(rt, identity_complex_morphism(x), m3)
    assert verify_homotopy(rt, identity_complex_morphism(x), h)


def _corner_identity(x, y):
    """Degree-0 identity map (the padding vanishes in degree 0)."""
    from nexakt.reps import Morphism
    from nexakt.fp import Mat
    src, tgt = x.term(0), y.term(0)
    assert src.dims == tgt.dims
    return Morphism(src, tgt, {v: Mat.identity(src.dims[v], src.algebra.p)
                               for v in src.algebra.quiver.vertices})


def test_contract_finds_contraction_of_interval(a3, m3, mods):
    x = pad_complex(interval_complex(0, mods["P2"]), 0, 3)
    h = contract(x, m3)
    assert h is not None
    from nexakt.complexes import identity_complex_morphism as icm
    assert verify_homotopy(icm(x), zero_complex_morphism(x, x), h)


def test_contract_returns_none_for_m3_sequence(a3, m3, mods):
    x = m3_sequence(a3, mods)
    assert contract(x, m3) is None


def test_contract_zero_complex(a3, m3):
    z = zero_module(a3)
    x = ComplexSeq(0, [z, z, z, z], [zero_morphism(z, z)] * 3)
    h = contract(x, m3)
    assert h is not None
