import numpy as np
import pytest
import sympy

from symquot.characters import character_table, monomial_realization
from symquot.group_algebra import (
    GroupAlgebra,
    augmentation_quotient_symmetric,
    augmentation_witness,
    check_decnumber_theorem,
    classify,
    default_context,
    idempotent,
    is_matrix_algebra,
    is_symmetric_quotient,
    kernel_ideal,
    min_lambda_exponent,
    nakayama_check,
    scaled_idempotent,
    trace_form_exponent,
    verify_augmentation_generator,
    verify_example61,
    verify_section3_basis,
)
from symquot.groups import build
from symquot.lattice import echelonize
from symquot.radical import top_dimension

from oracles import f_p_span_rank, idempotent_system_check

SMALL = ["cyclic:6", "cyclic:8", "cyclic:12", "dihedral:8", "dihedral:12", "dihedral:16", "quaternion:16",
         "semidihedral:16", "quasidihedral:16", "modular:27", "extraspecial:3:+", "file:s3", "file:klein4",
         "product:file:s3.tab*cyclic:2", "wreath:2"]


def faithful(G, chi):
    return all(chi(g) != chi.degree for g in range(1, G.n))


def by_degree(G, d):
    return [c for c in character_table(G) if c.degree == d]


# -- idempotents -------------------------------------------------------------------

@pytest.mark.parametrize("spec", SMALL + ["wreath:3", "cyclic:32", "dihedral:32"])
def test_idempotent_system(spec):
    G = build(spec)
    T = character_table(G)
    assert idempotent_system_check(G, [idempotent(G, chi) for chi in T]) == []


def test_idempotent_check_detects_errors():
    G = build("file:s3")
    es = [idempotent(G, chi) for chi in character_table(G)]
    es[0], es[1] = es[0], [x * 2 for x in es[1]]
    assert idempotent_system_check(G, es) != []


@pytest.mark.parametrize("spec", SMALL)
def test_lambda_is_minimal(spec):
    G = build(spec)
    for p in sympy.primefactors(G.n):
        ctx = default_context(G, p)
        for chi in character_table(G):
            t, v = scaled_idempotent(G, chi, ctx)
            vals = [ctx.valuation(x) for x in v if not x.is_zero()]
            assert min(vals) >= 0
            if t >= 1:
                assert min(vals) == 0  # pi^(t-1) e(chi) has a coefficient of valuation -1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lambda_cyclic_p(p):
    G = build(f"cyclic:{p}")
    ctx = default_context(G, p)
    assert [min_lambda_exponent(G, chi, ctx) for chi in character_table(G)] == [p - 1] * p


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("kind", ["dihedral", "quaternion", "quasidihedral"])
def test_lambda_faithful_index_two(n, kind):
    G = build(f"{kind}:{2 ** (n + 1)}")
    ctx = default_context(G, 2)
    for chi in by_degree(G, 2):
        if faithful(G, chi):
            assert min_lambda_exponent(G, chi, ctx) == n * 2 ** (n - 1) - 2


# -- the classifier -----------------------------------------------------------------

@pytest.mark.parametrize("spec", ["cyclic:12", "dihedral:12", "wreath:3", "file:s3"])
def test_linear_characters_symmetric(spec):
    G = build(spec)
    for p in sympy.primefactors(G.n):
        ctx = default_context(G, p)
        for chi in by_degree(G, 1):
            assert is_symmetric_quotient(G, chi, ctx)[0]


@pytest.mark.parametrize("spec", ["dihedral:16", "semidihedral:16", "quaternion:16", "quasidihedral:16"])
def test_cyclic_index_p_all_symmetric(spec):
    G = build(spec)
    ctx = default_context(G, 2)
    for chi in character_table(G):
        sym, cert = is_symmetric_quotient(G, chi, ctx)
        assert sym and cert["rank_K"] == cert["rank_k"] == chi.degree ** 2


def test_wreath_degree_three():
    G = build("wreath:3")
    ctx = default_context(G, 3)
    for chi in by_degree(G, 3):
        sym, cert = is_symmetric_quotient(G, chi, ctx)
        assert cert["rank_K"] == 9
        assert sym == (not faithful(G, chi))
    assert sum(faithful(G, chi) for chi in by_degree(G, 3)) == 6


# -- matrix algebra and trace form ---------------------------------------------------

def _reduced_span_dim_two_power(R):
    # in characteristic 2 every 2-power root of unity reduces to 1: reductions are permutation matrices
    d = R.degree
    rows = []
    for g in range(R.group.n):
        M = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            M[R.perms[g, j], j] = 1
        rows.append(M.reshape(-1).tolist())
    return f_p_span_rank(rows, 2)


def _reduced_span_dim_f4(R):
    # zeta_3 -> y in F_4 = F_2[y]/(y^2 + y + 1); F_4-dimension = F_2-dimension of {M, yM} / 2.
    # R.e = 3 * 2^a and zeta_e^(2^a) = zeta_3, while 2-power roots of unity reduce to 1
    coords = {0: (1, 0), 1: (0, 1), 2: (1, 1)}
    assert R.e % 3 == 0 and R.e % 9
    u = pow(R.e // 3, -1, 3)
    d = R.degree
    rows = []
    for g in range(R.group.n):
        for shift in (0, 1):
            M = [[(0, 0)] * d for _ in range(d)]
            for j in range(d):
                M[R.perms[g, j]][j] = coords[(int(R.exps[g, j]) * u + shift) % 3]
            rows.append([c for row in M for pair in row for c in pair])
    return f_p_span_rank(rows, 2) // 2


def test_matrix_algebra_dihedral16():
    G = build("dihedral:16")
    ctx = default_context(G, 2)
    for chi in by_degree(G, 2):
        R = monomial_realization(G, chi)
        expected = _reduced_span_dim_two_power(R) == 4
        assert is_matrix_algebra(G, chi, R, ctx) == expected
        if faithful(G, chi):
            assert not expected


def test_matrix_algebra_s3():
    G = build("file:s3")
    ctx = default_context(G, 2)
    chi = by_degree(G, 2)[0]
    R = monomial_realization(G, chi)
    assert _reduced_span_dim_f4(R) == 4
    assert is_matrix_algebra(G, chi, R, ctx)
    tf = trace_form_exponent(G, chi, R, ctx)
    assert tf.r == 0 and tf.unimodular


def test_linear_characters_are_matrix_algebras():
    G = build("cyclic:12")
    for p in (2, 3):
        ctx = default_context(G, p)
        for chi in character_table(G):
            R = monomial_realization(G, chi)
            assert is_matrix_algebra(G, chi, R, ctx)
            assert trace_form_exponent(G, chi, R, ctx).r == 0


def test_trace_form_dihedral16():
    G = build("dihedral:16")
    ctx = default_context(G, 2)
    for chi in by_degree(G, 2):
        R = monomial_realization(G, chi)
        tf = trace_form_exponent(G, chi, R, ctx)
        if faithful(G, chi):
            assert tf.r >= 1 and tf.unimodular
            assert all(x == tf.r for x in tf.gram_divisors)


def _det_valuation(ctx, gram):
    """v(det) by Gaussian elimination over the field (pivot of least valuation)."""
    A = [list(r) for r in gram]
    n = len(A)
    total = 0
    for c in range(n):
        piv = min((i for i in range(c, n) if not A[i][c].is_zero()), key=lambda i: ctx.valuation(A[i][c]))
        A[c], A[piv] = A[piv], A[c]
        total += ctx.valuation(A[c][c])
        inv = A[c][c].inverse()
        for i in range(c + 1, n):
            if not A[i][c].is_zero():
                q = A[i][c] * inv
                A[i] = [a - q * b for a, b in zip(A[i], A[c])]
    return total


def test_trace_form_wreath_never_unimodular():
    G = build("wreath:3")
    ctx = default_context(G, 3)
    chi = next(c for c in by_degree(G, 3) if faithful(G, c))
    R = monomial_realization(G, chi)
    tf = trace_form_exponent(G, chi, R, ctx)
    assert not tf.unimodular and not tf.unimodular_any
    assert tf.r >= 1
    # independent view: the Gram determinant is not pi^(9s) times a unit for any s, or its divisors differ
    from symquot.group_algebra import realization_vectors
    L = echelonize(ctx, realization_vectors(R, ctx), 9)
    mats = [[list(b[i * 3:(i + 1) * 3]) for i in range(3)] for b in L.basis]
    gram = [[sum((X[i][j] * Y[j][i] for i in range(3) for j in range(3)), ctx.field.zero()) for Y in mats] for X in mats]
    assert _det_valuation(ctx, gram) == sum(tf.gram_divisors)


# -- report consistency over small groups --------------------------------------------

@pytest.mark.parametrize("spec", SMALL + ["wreath:3"])
def test_reports_consistent(spec):
    G = build(spec)
    for p in sympy.primefactors(G.n):
        for rep in classify(G, p):
            chi = character_table(G)[rep.chi]
            assert rep.verdict == "PASS"
            assert rep.rank_K == chi.degree ** 2
            assert (rep.trace_exponent == 0) == rep.matrix_algebra
            assert rep.gram_unimodular == rep.symmetric
            if rep.central_type:
                assert rep.symmetric
            # degree prime to p with a proper image is never symmetric
            if chi.degree % p and not rep.matrix_algebra:
                assert not rep.symmetric
            if rep.symmetric and not rep.matrix_algebra:
                assert chi.degree % p == 0


def test_decnumber_theorem_examples():
    G = build("wreath:3")
    for chi in character_table(G):
        assert check_decnumber_theorem(G, 3, chi) == "PASS"


# -- the augmentation quotient -------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_p_witness_is_y_minus_one(p):
    G = build(f"cyclic:{p}")
    ctx = default_context(G, p)
    z = augmentation_witness(G, p, ctx)
    y = next(g for g in range(G.n) if G.element_orders[g] == p)
    expected = [ctx.field.zero()] * G.n
    expected[y] = ctx.field.one()
    expected[0] = -ctx.field.one()
    assert z == expected
    res = augmentation_quotient_symmetric(G, p)
    assert res.group_criterion and res.witness_verified and res.k_level and res.consistent


@pytest.mark.parametrize("spec,p,expected", [
    ("cyclic:12", 2, True), ("cyclic:12", 3, True), ("file:klein4", 2, False), ("file:s3", 3, False),
    ("file:s3", 2, True), ("dihedral:8", 2, False), ("quaternion:8", 2, False), ("cyclic:6", 2, True),
    ("dihedral:10", 2, True), ("dihedral:10", 5, False), ("dihedral:12", 3, False), ("cyclic:9", 3, True),
])
def test_augmentation_examples(spec, p, expected):
    G = build(spec)
    res = augmentation_quotient_symmetric(G, p)
    assert res.group_criterion == expected
    assert res.k_level == expected
    assert res.consistent
    if expected:
        assert res.witness_verified


def test_klein_four_top_dimension():
    G = build("file:klein4")
    assert top_dimension(G, 2) == 2
    ctx = default_context(G, 2)
    A = GroupAlgebra(G, ctx)
    # no witness of the usual shape generates I
    for y in range(1, 4):
        z = A.basis_vector(y)
        z[0] = z[0] - ctx.field.one()
        assert not verify_augmentation_generator(A, z)


# -- Nakayama ---------------------------------------------------------------------------

def test_nakayama_zero_ideal():
    G = build("file:s3")
    ctx = default_context(G, 3)
    res = nakayama_check(G, echelonize(ctx, [], G.n), ctx)
    assert res.principal and res.rank_annihilator == G.n
    assert res.verified


def test_nakayama_klein_sum():
    G = build("file:klein4")
    ctx = default_context(G, 2)
    one = ctx.field.one()
    I = echelonize(ctx, [[one] * 4], 4)
    assert not nakayama_check(G, I, ctx).principal


@pytest.mark.parametrize("spec", ["dihedral:8", "file:s3", "cyclic:6", "quaternion:16", "extraspecial:3:+"])
def test_nakayama_matches_purity(spec):
    G = build(spec)
    for p in sympy.primefactors(G.n):
        ctx = default_context(G, p)
        for chi in character_table(G):
            res = nakayama_check(G, kernel_ideal(G, chi, ctx), ctx)
            assert res.principal == is_symmetric_quotient(G, chi, ctx)[0]
            assert res.rank_annihilator == chi.degree ** 2
            if res.principal:
                assert res.verified


# -- the explicit computations -------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("kind", ["dihedral", "quaternion", "quasidihedral"])
def test_index_two_basis(n, kind):
    rep = verify_section3_basis(n, kind)
    assert rep["basis_confirmed"] and rep["pure"] and rep["z_integral"]
    assert rep["rank"] == 2
    assert rep["lambda_exponent"] == rep["lambda_valuation"] == n * 2 ** (n - 1) - 2


def test_index_two_basis_rejects_bad_input():
    with pytest.raises(ValueError):
        verify_section3_basis(2, "dihedral")
    with pytest.raises(ValueError):
        verify_section3_basis(3, "cyclic")


def test_wreath_example_p3():
    rep = verify_example61(3)
    assert rep["verdict"] == "PASS"
    assert rep["basis_confirmed"] and not rep["pure"] and rep["witness_ok"]
    assert rep["lambda_exponent"] == 5 and rep["z_minimal"]
    assert rep["induced_irreducible"] and not rep["symmetric"]
    assert rep["group_rank_K"] == 9 and rep["group_rank_k"] < 9


def test_wreath_example_linear_characters_symmetric():
    G = build("wreath:3")
    ctx = default_context(G, 3)
    assert all(is_symmetric_quotient(G, chi, ctx)[0] for chi in by_degree(G, 1))


def test_wreath_example_p5():
    rep = verify_example61(5)
    assert rep["verdict"] == "PASS" and not rep["pure"] and rep["basis_confirmed"]
    assert rep["lambda_exponent"] == 5 * 4 - 1


def test_wreath_example_rejects_even():
    with pytest.raises(ValueError):
        verify_example61(2)
