import numpy as np
import pytest
from hypothesis import given, strategies as st

from kantorlab import corpus
from kantorlab.bridge import mu_normalize
from kantorlab.exact import (
    HypothesisViolation, as_exact, exact_equal, identity, is_zero, rank, zeros,
)
from kantorlab.lie import (
    GradedSuperalgebra, b01_decompose, b01_left_unit_check, build_T, build_gU, check_grading,
    check_super_jacobi, column_element, frame_constants, gl12_model, ground_system,
    matches_osp12, osp12_frame, osp12_model, phi_of_gU, phi_report, recover_fkts,
    twist_isomorphism_report,
)
from kantorlab.structurable import kts_from_structurable, twisted_kts
from kantorlab.triple import KANTOR, MINUS_MINUS, SignPair, TripleSystem, zero_system

import oracles

UNIT = kts_from_structurable(corpus.unit_field())
QUAT = kts_from_structurable(corpus.quaternions())
SCALAR = corpus.scalar_fkts()
SWAP = corpus.swap_fkts()

SYSTEMS = [
    ("unit-field", UNIT, KANTOR, (0, 1, 1, 1, 0)),
    ("scalar", SCALAR, MINUS_MINUS, (1, 1, 1, 1, 1)),
    ("swap", SWAP, MINUS_MINUS, (2, 2, 2, 2, 2)),
    ("split-swap", twisted_kts(corpus.split_pair(), corpus.swap2()), KANTOR, (1, 2, 2, 2, 1)),
    ("mat2", kts_from_structurable(corpus.mat2_transpose()), KANTOR, (1, 4, 5, 4, 1)),
    ("quat", QUAT, KANTOR, (3, 4, 7, 4, 3)),
]
IDS = [s[0] for s in SYSTEMS]


@pytest.fixture(scope="module")
def algebras():
    return {name: build_gU(T, signs) for name, T, signs, _ in SYSTEMS}


def test_column_triple_systems():
    C, kind = build_T(UNIT, KANTOR)
    assert C.dim == 2 and kind == "even" and not is_zero(C.tensor)
    C, kind = build_T(SCALAR, MINUS_MINUS)
    assert C.dim == 2 and kind == "odd"
    C, _ = build_T(zero_system(2), KANTOR)
    assert is_zero(C.tensor)


@pytest.mark.parametrize("name,T,signs,dims", SYSTEMS, ids=IDS)
def test_gU_dims_and_integrity(algebras, name, T, signs, dims):
    g = algebras[name]
    assert g.dims_by_degree() == dims
    assert check_super_jacobi(g).passed and check_grading(g).passed
    assert g.is_super == (signs.delta == -1)


@pytest.mark.parametrize("name", ["unit-field", "scalar", "swap", "split-swap"])
def test_gU_jacobi_agrees_with_elementwise_oracle(algebras, name):
    g = algebras[name]
    assert oracles.super_jacobi_holds(g.bracket, g.parities)


def test_unit_field_gives_a_simple_three_dimensional_algebra(algebras):
    g = algebras["unit-field"]
    products = [g.br(g.basis(i), g.basis(j)) for i in range(3) for j in range(3)]
    assert rank(as_exact(np.stack(products))) == 3           # [g, g] = g
    killing = as_exact([[np.trace(g.ad(g.basis(i)) @ g.ad(g.basis(j))) for j in range(3)]
                        for i in range(3)])
    assert rank(killing) == 3


def test_corrupted_bracket_is_caught(algebras):
    g = algebras["scalar"]
    b = g.bracket.copy()
    i, j = g.indices(1)[0], g.indices(-1)[0]
    k = np.flatnonzero([c != 0 for c in b[i, j]])[0]
    b[i, j, k] += 1
    bad = GradedSuperalgebra(g.labels, g.degrees, g.parities, b, "corrupted")
    rep = check_super_jacobi(bad)
    assert not rep.passed and rep.checks[0].witness is not None
    assert not oracles.super_jacobi_holds(b, g.parities)
    b2 = g.bracket.copy()
    b2[i, j, g.indices(2)[0]] = 1            # degree 1 + (-1) landing in degree 2
    assert not check_grading(GradedSuperalgebra(g.labels, g.degrees, g.parities, b2)).passed


def test_build_gU_rejects_wrong_signs():
    with pytest.raises(HypothesisViolation):
        build_gU(SCALAR, SignPair(1, -1))


# -- Phi and recovery ----------------------------------------------------------

@pytest.mark.parametrize("name,T,signs,dims", SYSTEMS, ids=IDS)
def test_phi_and_recovery_roundtrip(algebras, name, T, signs, dims):
    g = algebras[name]
    phi = phi_of_gU(g)
    assert phi_report(phi, signs).passed
    U = recover_fkts(g, phi, signs)
    assert exact_equal(U.tensor, T.tensor)
    U2, inferred = ground_system(g, phi)
    assert inferred == signs and exact_equal(U2.tensor, T.tensor)


def test_phi_squares(algebras):
    g = algebras["scalar"]
    P = phi_of_gU(g).matrix
    signs = as_exact(np.diag([(-1) ** (d % 2) for d in g.degrees]))
    assert exact_equal(as_exact(P @ P), signs)
    P = phi_of_gU(algebras["unit-field"]).matrix
    assert exact_equal(as_exact(P @ P), identity(3))


def test_phi_on_columns(algebras):
    g = algebras["swap"]
    phi = phi_of_gU(g)
    a, b = as_exact([1, 2]), as_exact([3, -1])
    # (x; y) -> (-eps delta y; x) with eps delta = 1
    assert exact_equal(phi(column_element(g, a, b)), column_element(g, as_exact(-b), a))


def test_phi_accepts_a_triple_system():
    phi = phi_of_gU(SCALAR, MINUS_MINUS)
    assert phi.algebra.dims_by_degree() == (1, 1, 1, 1, 1)


@given(st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda c: c != 0))
def test_rescaled_systems_give_valid_algebras(c):
    for T, signs in [(SCALAR, MINUS_MINUS), (SWAP, MINUS_MINUS), (UNIT, KANTOR)]:
        T2 = TripleSystem(as_exact(c * T.tensor))
        g = build_gU(T2, signs)
        assert check_super_jacobi(g).passed and check_grading(g).passed
        assert exact_equal(recover_fkts(g, phi_of_gU(g), signs).tensor, T2.tensor)


invertible = st.lists(st.integers(-2, 2), min_size=4, max_size=4).map(
    lambda v: as_exact(v).reshape(2, 2)).filter(lambda M: rank(M) == 2)


@given(invertible)
def test_isomorphic_inputs_give_same_dimensions(S):
    from kantorlab.exact import contract, operator_inverse
    t = contract("ai,bj,ck,abcl,ml->ijkm", S, S, S, SWAP.tensor, operator_inverse(S))
    g = build_gU(TripleSystem(t), MINUS_MINUS)
    assert g.dims_by_degree() == (2, 2, 2, 2, 2)
    assert check_super_jacobi(g).passed


# -- osp(1,2) ------------------------------------------------------------------

def test_osp12_model_constants():
    m = osp12_model()
    g, phi, module = m
    assert m.report.passed and g.dim == 5
    F, Y, H, X, E = (g.basis(i) for i in range(5))
    assert exact_equal(g.br(H, E), as_exact(2 * E))
    assert exact_equal(g.br(H, F), as_exact(-2 * F))
    assert exact_equal(g.br(E, F), H)
    assert exact_equal(g.br(X, X), as_exact(-2 * E))
    assert exact_equal(g.br(X, Y), H)
    assert exact_equal(phi(X), Y)
    assert set(module) == {"H^", "X^", "Y^"}
    assert oracles.super_jacobi_holds(g.bracket, g.parities)


def test_scalar_gU_matches_osp12(algebras):
    g = algebras["scalar"]
    phi = phi_of_gU(g)
    assert matches_osp12(g, phi, g.indices(1)[0]).passed
    frame = osp12_frame(g, phi, g.indices(1)[0])
    assert exact_equal(frame_constants(g, frame), osp12_model().algebra.bracket)


def test_osp12_recovers_the_scalar_system():
    g, phi, _ = osp12_model()
    U, signs = ground_system(g, phi)
    assert signs == MINUS_MINUS and U.dim == 1 and U.tensor[0, 0, 0, 0] == 1


def test_osp12_left_unit():
    g, phi, _ = osp12_model()
    assert b01_left_unit_check(g, phi, 3)
    assert not b01_left_unit_check(g, phi, zeros(5))


# -- B(0,1) decomposition ------------------------------------------------------

def test_decompose_scalar(algebras):
    g = algebras["scalar"]
    d = b01_decompose(g, phi_of_gU(g), [1])
    assert d.counts == (1, 0, 0) and d.report.passed
    assert g.dim == 5 * 1


def test_decompose_swap():
    N = mu_normalize(SWAP, [1, 1])
    g = build_gU(N, MINUS_MINUS)
    phi = phi_of_gU(g)
    assert b01_left_unit_check(g, phi, [1, 1])
    d = b01_decompose(g, phi, [1, 1])
    assert d.counts == (2, 0, 0) and d.report.passed and g.dim == 10


def test_decompose_osp12():
    g, phi, _ = osp12_model()
    assert b01_decompose(g, phi, 3).counts == (1, 0, 0)


def test_decompose_gl12_has_every_module_type():
    g, phi = gl12_model()
    assert check_super_jacobi(g).passed and check_grading(g).passed
    e = g.labels.index("X")
    d = b01_decompose(g, phi, e)
    assert d.counts == (1, 1, 1) and d.report.passed
    assert any(c.name.startswith("K(e,x) = 0") and c.passed for c in d.report.checks)
    U, signs = ground_system(g, phi)
    assert signs == MINUS_MINUS and U.dim == 2


def test_decompose_needs_a_normalized_unit():
    with pytest.raises(HypothesisViolation):
        g = build_gU(SWAP, MINUS_MINUS)
        b01_decompose(g, phi_of_gU(g), [1, 1])


# -- twisting isomorphism ----------------------------------------------------

@pytest.mark.parametrize("T,S", [(QUAT, corpus.quat_conjugation_by_i()),
                                 (kts_from_structurable(corpus.split_pair()), corpus.swap2())],
                         ids=["quat", "split-pair"])
def test_twist_isomorphism(T, S):
    rep = twist_isomorphism_report(T, S, KANTOR)
    assert rep.passed, rep.render()


def test_twist_isomorphism_for_minus_minus():
    rep = twist_isomorphism_report(corpus.componentwise(2), corpus.swap2(), MINUS_MINUS)
    assert rep.passed
