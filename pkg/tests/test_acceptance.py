"""Acceptance criteria, each checked exactly with rational arithmetic.

Every test prints one ``PASS``/``FAIL`` line (visible with ``-s``); the same
lines are repeated in the pytest terminal summary.
"""
import time
from contextlib import contextmanager
from itertools import product

from kantorlab import corpus
from kantorlab.bridge import (
    bridge_maps, double_M21, eigen_profile, lemma_suite_kantor, lemma_suite_mm, mu_normalize,
    star_suite, structurable_of_left_unital, twist, twisted_signs,
)
from kantorlab.chevalley import (
    balanced_twist, chevalley_algebra, freudenthal_product, highest_root_grading, kantor_on_g1,
)
from kantorlab.exact import as_exact, exact_equal, identity, is_zero
from kantorlab.lie import (
    b01_decompose, b01_left_unit_check, build_gU, check_grading, check_super_jacobi,
    frame_constants, gl12_model, matches_osp12, osp12_frame, osp12_model, phi_of_gU,
    recover_fkts, twist_isomorphism_report,
)
from kantorlab.structurable import (
    check_structurable, kts_from_structurable, twisted_kts, unit_conditions,
)
from kantorlab.triple import (
    KANTOR, MINUS_MINUS, ONE_ONE, SignPair, K_op, check_fkts, check_special, check_unitary,
    is_automorphism, triple_product,
)

VERDICTS: dict[int, str] = {}
ALL_SIGNS = [SignPair(e, d) for e, d in product((1, -1), repeat=2)]


@contextmanager
def criterion(n, title, limit=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException as exc:
        VERDICTS[n] = f"FAIL criterion {n}: {title} ({exc.__class__.__name__}: {exc})"
        print(VERDICTS[n])
        raise
    VERDICTS[n] = f"PASS criterion {n}: {title} ({time.perf_counter() - start:.2f}s)"
    print(VERDICTS[n])


def test_criterion_01_structurable_suite():
    with criterion(1, "corpus algebras satisfy both structurable identities", limit=5):
        for A in corpus.corpus_algebras():
            rep = check_structurable(A)
            assert rep.passed, rep.render()
            assert {c.name for c in rep.checks} >= {"str1", "str2"}


def test_criterion_02_kantor_derivation():
    with criterion(2, "derived systems are Kantor with e = 1 a unit", limit=10):
        for A in corpus.corpus_algebras():
            T = kts_from_structurable(A)
            assert check_fkts(T, KANTOR).passed
            rep = unit_conditions(T, A.unit)
            assert rep.passed and len(rep.checks) == 2, rep.render()


def test_criterion_03_reconstruction_roundtrip():
    with criterion(3, "algebra+automorphism <-> left-unital Kantor system roundtrip", limit=30):
        pairs = corpus.algebra_pairs()
        assert len(pairs) == 4
        for A, S in pairs:
            T = twisted_kts(A, S)
            B, sigma = structurable_of_left_unital(T, A.unit)
            assert B.same_as(A) and exact_equal(sigma, S)
            assert exact_equal(twisted_kts(B, sigma).tensor, T.tensor)


def test_criterion_04_lemma_suites():
    with criterion(4, "left-unit lemma suites and rho eigenvalues"):
        for A, S in corpus.algebra_pairs():
            for T in (kts_from_structurable(A), twisted_kts(A, S)):
                rep = lemma_suite_kantor(T, A.unit)
                assert rep.passed, rep.render()
        for T, e in [(corpus.scalar_fkts(), [1]), (corpus.swap_fkts(), [1, 1])]:
            rep = lemma_suite_mm(T, e)
            assert rep.passed, rep.render()
        Q = corpus.quaternions()
        maps = bridge_maps(kts_from_structurable(Q), Q.unit)
        I = identity(4)
        assert is_zero(as_exact((maps.rho - I) @ (maps.rho - 3 * I)))
        assert eigen_profile(maps).dims == (1, 3)


def test_criterion_05_star_suite():
    with criterion(5, "star product suite on quat and twisted split-pair"):
        Q, P = corpus.quaternions(), corpus.split_pair()
        for T, e in [(kts_from_structurable(Q), Q.unit),
                     (twisted_kts(Q, corpus.quat_conjugation_by_i()), Q.unit),
                     (twisted_kts(P, corpus.swap2()), P.unit)]:
            rep = star_suite(T, e)
            assert rep.passed, rep.render()
            names = " ".join(c.name for c in rep.checks)
            for item in ("(i)", "(ii)", "(iii)", "(iv)", "(v)"):
                assert item in names


def test_criterion_06_mu_normalization():
    with criterion(6, "mu-normalized swap system is unitary and special"):
        N = mu_normalize(corpus.swap_fkts(), [1, 1])
        e = as_exact([1, 1])
        for x in identity(2):
            assert exact_equal(triple_product(N, e, e, x), x)
            assert exact_equal(triple_product(N, e, x, e), x)
        assert exact_equal(K_op(N, e, e, -1), as_exact(2 * identity(2)))
        assert check_unitary(N, MINUS_MINUS) and check_special(N, MINUS_MINUS)


def test_criterion_07_graded_algebra_integrity():
    with criterion(7, "g(U) is a graded Lie (super)algebra and returns U", limit=60):
        systems = [(corpus.scalar_fkts(), MINUS_MINUS), (corpus.swap_fkts(), MINUS_MINUS),
                   (corpus.componentwise(2), MINUS_MINUS)]
        for A, S in corpus.algebra_pairs():
            systems += [(kts_from_structurable(A), KANTOR), (twisted_kts(A, S), KANTOR)]
        expected = {"unit-field-kts": (0, 1, 1, 1, 0), "scalar-fkts": (1, 1, 1, 1, 1),
                    "swap-fkts": (2, 2, 2, 2, 2)}
        seen = set()
        for T, signs in systems:
            g = build_gU(T, signs)
            assert check_super_jacobi(g).passed and check_grading(g).passed
            assert exact_equal(recover_fkts(g, phi_of_gU(g), signs).tensor, T.tensor)
            if T.label in expected:
                assert g.dims_by_degree() == expected[T.label]
                seen.add(T.label)
        assert seen == set(expected)


def test_criterion_08_osp12_golden():
    with criterion(8, "g(scalar system) is osp(1,2) with the expected Phi"):
        g = build_gU(corpus.scalar_fkts(), MINUS_MINUS)
        phi = phi_of_gU(g)
        x = g.indices(1)[0]
        assert matches_osp12(g, phi, x).passed
        model = osp12_model()
        assert exact_equal(frame_constants(g, osp12_frame(g, phi, x)), model.algebra.bracket)
        b, bphi, _ = model
        F, Y, H, X, E = (b.basis(i) for i in range(5))
        assert exact_equal(bphi(X), Y)
        assert exact_equal(b.br(X, X), as_exact(-2 * E))
        assert model.report["Phi(X^) = Y^"].passed
        gl, glphi = gl12_model()
        assert exact_equal(glphi(gl.basis(gl.labels.index("X^"))), gl.basis(gl.labels.index("Y^")))
        assert b01_left_unit_check(b, bphi, 3)


def test_criterion_09_b01_decomposition():
    with criterion(9, "B(0,1) decomposition of the scalar and swap algebras"):
        g = build_gU(corpus.scalar_fkts(), MINUS_MINUS)
        d = b01_decompose(g, phi_of_gU(g), [1])
        assert d.counts == (1, 0, 0) and d.report.passed and g.dim == 5 * 1
        g = build_gU(mu_normalize(corpus.swap_fkts(), [1, 1]), MINUS_MINUS)
        d = b01_decompose(g, phi_of_gU(g), [1, 1])
        assert d.counts == (2, 0, 0) and d.report.passed and g.dim == 5 * 2
        for T, e in [(corpus.scalar_fkts(), [1]), (corpus.swap_fkts(), [1, 1])]:
            assert lemma_suite_mm(T, e)["K(u,e) = 0 on U_-1"].passed
        # a case where U_-1 is not zero
        gl, glphi = gl12_model()
        d = b01_decompose(gl, glphi, gl.labels.index("X"))
        assert any(c.name.startswith("K(e,x) = 0") and c.passed and c.cases > 0
                   for c in d.report.checks)


def test_criterion_10_chevalley():
    with criterion(10, "Chevalley gradings, Kantor system on g_1 and Freudenthal product",
                   limit=60):
        for kind, dims in [("A2", (1, 2, 2, 2, 1)), ("A3", (1, 4, 5, 4, 1))]:
            L = chevalley_algebra(kind)
            assert highest_root_grading(L).dims == dims
            U, sigma, form = kantor_on_g1(L)
            n = U.dim
            basis = identity(n)
            assert exact_equal(as_exact(sigma @ sigma), as_exact(-identity(n)))
            B = balanced_twist(U, sigma, form)
            assert check_fkts(B, ONE_ONE).passed
            for a, b in product(range(n), repeat=2):
                assert exact_equal(K_op(U, basis[a], basis[b], 1), as_exact(form[a, b] * sigma))
                assert exact_equal(K_op(B, basis[a], basis[b], 1),
                                   as_exact(-form[a, b] * identity(n)))
            prod, rep = freudenthal_product(B, form)
            assert rep.passed
            for u, v in product(range(n), repeat=2):
                assert exact_equal(prod[u, v], prod[v, u])


def _involutive_automorphisms():
    Q, P, M = corpus.quaternions(), corpus.split_pair(), corpus.mat2_transpose()
    cases = [
        (kts_from_structurable(Q), corpus.quat_conjugation_by_i()),
        (kts_from_structurable(P), corpus.swap2()),
        (kts_from_structurable(M), corpus.mat2_conjugation_by_diag()),
        (corpus.componentwise(2), corpus.swap2()),
        (corpus.swap_fkts(), corpus.swap2()),
    ]
    for T in (corpus.scalar_fkts(), kts_from_structurable(Q), corpus.swap_fkts()):
        cases += [(T, identity(T.dim)), (T, as_exact(-identity(T.dim)))]
    return cases


def test_criterion_11_sign_flip_laws():
    with criterion(11, "doubling flips epsilon and involutive twists keep verdicts"):
        for T, signs in [(kts_from_structurable(corpus.unit_field()), KANTOR),
                         (corpus.scalar_fkts(), MINUS_MINUS)]:
            assert check_fkts(T, signs).passed
            D = double_M21(T, signs)
            flipped = SignPair(-signs.epsilon, signs.delta)
            assert check_fkts(D, flipped).passed and not check_fkts(D, signs).passed
        for T, S in _involutive_automorphisms():
            assert exact_equal(as_exact(S @ S), identity(T.dim)) and is_automorphism(T, S)
            for signs in ALL_SIGNS:
                assert twisted_signs(S, signs) == signs
                before = check_fkts(T, signs).passed
                assert check_fkts(twist(T, S, signs), signs).passed == before


def test_criterion_12_twist_isomorphism():
    with criterion(12, "(a, b) -> (a, S b) is an isomorphism of graded algebras"):
        for T, S in [(kts_from_structurable(corpus.quaternions()), corpus.quat_conjugation_by_i()),
                     (kts_from_structurable(corpus.split_pair()), corpus.swap2())]:
            rep = twist_isomorphism_report(T, S, KANTOR)
            assert rep.passed, rep.render()
