from fractions import Fraction as F

import pytest

from instanton.floer import (build_quotient_model, decomposition_identity_check,
                             eigen_verify, expand_rational_fn, gamma_power_witness,
                             graded_ideal_dims, hilbert_compare, model_for,
                             model_n3, ptgn_series, solve_subleading)
from instanton.poly import ALPHA, OMEGA, Poly, gamma, omega, ring
from instanton.quotient import QuotientSpec
from instanton.relations import (GeneratorSet, igen, jgen_n1, kprime_gen,
                                 r_poly, xi)

R1 = ring(1)


def test_graded_ideal_dims_single_gamma():
    gs = GeneratorSet("gamma", R1, [("gamma", gamma(R1))])
    dims = graded_ideal_dims(gs, 6)
    assert dims[6] == 1
    assert dims[:6] == [0] * 6


def test_graded_quotient_dims_match_series_small():
    rep = hilbert_compare(1, 1, "ptgn", 8)
    computed = [c for d, c, f in rep.degrees if d % 2 == 0]
    assert computed == [1, 1, 0, 0, 0]
    assert rep.match


def test_full_ring_and_reduced_paths_agree():
    """Quotient dims computed in the full polynomial ring equal the reduced-ring path."""
    from instanton.floer import graded_quotient_dims
    gs = igen(1, 1, "odd")
    full = graded_quotient_dims(gs, 10, spec=None)
    rep = hilbert_compare(1, 1, "ptgn", 10)
    reduced = [c for _d, c, _f in rep.degrees]
    assert full == reduced


def test_hilbert_total_and_k_sources():
    assert hilbert_compare(0, 3, "total", 8).match
    rep = hilbert_compare(0, 3, "k", 8)
    assert rep.match
    assert [c for d, c, _f in rep.degrees if d % 2 == 0] == [0, 4, 8, 12, 16]


def test_kprime_dims_reproduce_lemma_value():
    dims = graded_ideal_dims(kprime_gen(0, 3), 10)
    for i in range(4):
        assert dims[2 * (1 + i)] == 4 * (i + 1)


def test_decomposition_identity():
    assert decomposition_identity_check(0, 3, 30)     # reduces to the total itself
    assert decomposition_identity_check(1, 1, 40)
    assert decomposition_identity_check(2, 3, 40)


def test_model_dims_and_basis():
    m0 = model_for(0)
    assert m0.dim == 0
    m1 = model_for(1)
    assert m1.dim == 2
    assert [mono for _d, mono in m1.basis] == [(0, 0, 0, 0), (0, 0, 0, 1)]  # {1, delta}
    m2 = model_for(2)
    assert m2.dim == 8
    assert sum(expand_rational_fn(ptgn_series(2, 1), 20)) == 8


def test_model_rejects_non_deforming_pair():
    # the unit graded ideal is not deformed by a proper inhomogeneous ideal
    J = jgen_n1(1)
    bad_I = GeneratorSet("bad", R1, [("one", Poly.constant(R1, 1))])
    with pytest.raises(ValueError):
        build_quotient_model(J, bad_I)


def test_normal_form_examples():
    m1 = model_for(1)
    assert m1.normal_form(r_poly(1)) == [0, 0]
    a = xi(1, 1)  # alpha
    assert m1.normal_form(a.change_coordinates(OMEGA)) == [1, -1]
    assert m1.normal_form(gamma(m1.ring)) == [0, 0]


def test_normal_form_is_linear():
    m2 = model_for(2)
    f = r_poly(2) * omega(m2.ring) + gamma(m2.ring)
    g = omega(m2.ring) ** 3
    nf = m2.normal_form
    left = nf(f + g)
    right = [a + b for a, b in zip(nf(f), nf(g))]
    assert left == right


def test_membership_and_witness():
    m1 = model_for(1)
    w1 = m1.ring
    # gamma = 2[(omega + delta/2 - 5) r_2 - 2(beta - 2 delta - 2) r_1 - 3 r_3]
    from instanton.poly import beta, delta
    wd = omega(w1) + delta(w1, 1) * F(1, 2)
    combo = ((wd - 5) * r_poly(2) - (beta(w1) - delta(w1, 1) * 2 - 2) * r_poly(1) * 2
             - r_poly(3) * 3) * 2
    assert combo == gamma(w1)
    assert m1.membership(gamma(w1))
    rel = delta(w1, 1) ** 2 + beta(w1) - 2
    assert m1.membership(rel)
    assert m1.membership(Poly.zero(w1))
    assert not m1.membership(Poly.constant(w1, 1))


def test_gamma_power_witness_membership():
    for g in (1, 2, 3):
        witness = gamma_power_witness(g)
        assert set(witness) == {f"r_{g}", f"r_{g + 1}", f"r_{g + 2}"}
        model = model_for(g)
        assert model.membership(gamma(model.ring) ** g)


def test_operators_commute_and_leading_containment():
    m2 = model_for(2)
    assert m2.operators_commute()
    # leading order of r_g sits in the degree-2g piece of the graded ideal
    for g in (1, 2, 3, 4):
        gs = igen(g, 1, "even")
        spec = QuotientSpec(gamma_truncation=g + 1, delta_square=0)
        lead = r_poly(g).leading_order()
        from instanton.quotient import canonical_rep, canonical_monomials
        from instanton.floer import _ideal_vectors, _span_rank
        basis, vectors = _ideal_vectors(gs, 2 * g, spec)
        red = canonical_rep(lead, spec)
        vec = [F(0)] * len(basis)
        for e, c in red.terms.items():
            vec[basis.index(e)] = c
        with_lead = _span_rank(vectors + [vec])
        assert with_lead == _span_rank(vectors)


def test_eigen_g1_full_spectrum():
    m1 = model_for(1)
    from instanton.linalg import Matrix, kernel_basis, subspace_intersection
    D = m1.dim
    tuples = [(F(1), F(2), F(0), F(0)), (F(-1), F(-2), F(0), F(2))]
    total = 0
    for av, bv, cv, dv in tuples:
        space = None
        for var, lam in zip((ALPHA, "beta", "gamma", "delta1"), (av, bv, cv, dv)):
            op = m1.operator(var)
            ker = kernel_basis((op - Matrix.identity(D).scale(lam)).power(D))
            space = ker if space is None else subspace_intersection(space, ker)
        assert space.rows >= 1
        total += space.rows
    assert total == D


def test_eigen_reports():
    rep = eigen_verify(1, "+")
    assert rep.subspace_dim == 1
    assert [t["alpha"] for t in rep.tuples] == [F(1)]
    rep2 = eigen_verify(2, "+")
    assert sorted(t["alpha"] for t in rep2.tuples) == [F(-3), F(1)]
    repm = eigen_verify(2, "-")
    assert sorted(t["alpha"] for t in repm.tuples) == [F(-1), F(3)]
    doc = rep2.to_json()
    assert doc["subspace_dim"] == rep2.subspace_dim
    assert all(set(t) == {"alpha", "beta", "gamma", "delta", "gen_mult"}
               for t in doc["tuples"])


def test_eigen_local_theta():
    rep = eigen_verify(1, "+", theta=F(2))
    assert rep.subspace_dim >= 1
    # alpha value: (-1)^{g+1}(2g-2+theta) at g=1 is theta
    assert rep.tuples[0]["alpha"] == F(2)


def test_solver_genus_zero_exact():
    gs = solve_subleading(0)
    f_hat = gs.meta["f_hat"].change_coordinates(ALPHA)
    rng3 = ring(3)
    from instanton.poly import alpha
    assert f_hat == alpha(rng3) - 1
    assert len(gs) == 4  # even flips of {1,2,3}


def test_solver_genus_one_value_and_membership():
    gs = solve_subleading(1)
    f_hat = gs.meta["f_hat"].change_coordinates(ALPHA)
    rng3 = ring(3)
    from instanton.poly import alpha, delta
    expected = alpha(rng3) ** 2 * F(1, 2) + alpha(rng3) \
        + delta(rng3, 1) + delta(rng3, 2) + delta(rng3, 3) - F(3, 2)
    assert f_hat == expected
    m1 = model_for(1)
    for _name, p in gs.gens:
        assert m1.membership(p.pi_reduce())


def test_three_point_model_dimension():
    m13 = model_n3(1)
    assert m13.dim == sum(expand_rational_fn(ptgn_series(1, 3), 40)) == 10


def test_hilbert_report_json_shape():
    rep = hilbert_compare(1, 1, "ptgn", 6)
    doc = rep.to_json()
    assert doc["match"] is True
    assert doc["degrees"][0] == {"d": 0, "computed": 1, "formula": 1}


def test_kprime_beta_fine_structure():
    """The beta^i slice of the reduced ideal in each isotypic piece has dimension
    min(i,g)+1 and contains the predicted rho-multiples."""
    from instanton.linalg import Matrix, subspace_intersection, rank
    from instanton.quotient import canonical_monomials, rbar_spec, delta_support
    from instanton.relations import rho_proj
    from instanton.floer import _ideal_vectors
    spec = rbar_spec()
    for n, g_vals in ((3, (0, 1)), (5, (0, 1, 2))):
        m = (n - 1) // 2
        rngw = ring(n, coordinate=OMEGA)
        for g in g_vals:
            gens = kprime_gen(g, n)
            for i in range(0, m - g + 1):
                for size in range(0, m - g - i + 1):
                    I = frozenset(range(1, size + 1))
                    d = 2 * (g + m + i)
                    basis, vectors = _ideal_vectors(gens, d, spec)
                    index = {mono: k for k, mono in enumerate(basis)}
                    # the linear slice beta^i * (isotypic piece I)
                    slice_rows = []
                    for mono in basis:
                        sup = delta_support(rngw, mono)
                        if mono[1] >= i and sup in (I, frozenset(range(1, n + 1)) - I):
                            vec = [F(0)] * len(basis)
                            vec[index[mono]] = F(1)
                            slice_rows.append(vec)
                    ideal_m = Matrix([v for v in vectors if any(v)])
                    from instanton.linalg import rref
                    Rm, piv, _t = rref(ideal_m)
                    ideal_rows = Matrix([Rm.row(r) for r in range(len(piv))])
                    inter = subspace_intersection(ideal_rows, Matrix(slice_rows))
                    assert inter.rows == min(i, g) + 1, (n, g, i, I)
                    # predicted spanning vectors lie in the ideal piece
                    for j in range(min(i, g) + 1):
                        rho = rho_proj(g + m - i - size, n - 2 * i - 2 * size + 2 * j, 0)
                        vec_poly = Poly.zero(rngw)
                        for exps4, cc in rho.terms.items():
                            mono = [exps4[0], exps4[1] + i, 0] + [0] * n
                            for t in I:
                                mono[2 + t] = 1
                            vec_poly = vec_poly + Poly.monomial(rngw, tuple(mono), cc)
                        vec = [F(0)] * len(basis)
                        for e, cc in vec_poly.terms.items():
                            vec[index[e]] = cc
                        stacked = Matrix([ideal_rows.row(r) for r in range(ideal_rows.rows)]
                                         + [vec])
                        assert rank(stacked) == ideal_rows.rows, (n, g, i, I, j)
