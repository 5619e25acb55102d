import random

import pytest

from segrechains.errors import (
    OffManifold,
    RealityViolation,
    SingularInput,
)
from segrechains.exprs import format_series, parse_series
from segrechains.manifold import (
    Basepoint,
    graph_from_real,
    new_manifold,
    segre_leaf,
    vector_fields,
)
from segrechains.scalars import GaussianRational as G, ZERO
from segrechains.series import Series

from helpers import random_real_graph, small_scalar


def test_heisenberg_theta_and_reality(heisenberg):
    assert format_series(heisenberg.theta[0]) == "w1*zeta1"
    # identity holds by construction; rho assembles the graph equation
    assert format_series(heisenberg.rho()[0]) == "-xi1+z1-i*w1*zeta1"


def test_levi_flat_trivial(levi_flat):
    assert levi_flat.theta[0].is_zero()
    assert format_series(levi_flat.rho()[0]) == "-xi1+z1"


def test_reality_violation_imaginary_quadric():
    with pytest.raises(RealityViolation) as err:
        new_manifold(1, 1, ["i*w1*zeta1"])
    assert err.value.monomial is not None  # names the first bad monomial


def test_reality_violation_reports_component():
    with pytest.raises(RealityViolation) as err:
        new_manifold(1, 2, ["w1*zeta1", "w1*zeta1 + i*w1^2*zeta1^2"])
    assert err.value.component == 2


def test_forbidden_variables_and_constant_term():
    with pytest.raises(RealityViolation):
        new_manifold(1, 1, ["z1*zeta1"])  # z may not occur in the graph data
    with pytest.raises(RealityViolation):
        new_manifold(1, 1, ["1 + w1*zeta1"])


def test_nonregular_coordinates_accepted():
    # theta_bar(w, 0, xi) nonzero is allowed (non-regular presentations):
    # theta_bar = (1+i)*xi gives z = i*conj(z), the real hyperplane x = y,
    # and satisfies the reality identity despite its linear term
    M = new_manifold(1, 1, ["(1+i)*xi1"])
    assert not M.theta_bar[0].is_zero()
    M2 = new_manifold(1, 1, ["2*i*xi1"])  # z = -conj(z): the plane x = 0
    assert not M2.theta_bar[0].is_zero()


def test_graph_from_real_examples():
    assert format_series(graph_from_real(1, 1, ["w1*wb1"]).theta_bar[0]) == "w1*zeta1"
    assert graph_from_real(1, 1, ["0"]).theta_bar[0].is_zero()
    assert (
        format_series(graph_from_real(1, 1, ["w1^2*wb1^2"]).theta_bar[0])
        == "w1^2*zeta1^2"
    )


def test_graph_from_real_transversal_elimination_matches_graph_form():
    # 2y1 = w1 wb1, 2y2 = x1^2 w2 wb2 + w1^2 wb1^2 w2 wb2 / 4 reproduces the
    # equivalent displayed graph equations exactly
    G2 = graph_from_real(2, 2, ["w1*wb1", "x1^2*w2*wb2 + 1/4*w1^2*wb1^2*w2*wb2"])
    M = new_manifold(2, 2, ["w1*zeta1", "xi1^2*w2*zeta2 + i*xi1*w1*zeta1*w2*zeta2"])
    assert G2.theta_bar == M.theta_bar


def test_graph_from_real_rejects_bad_input():
    with pytest.raises(RealityViolation):
        graph_from_real(1, 1, ["i*w1*wb1"])  # not Hermitian
    with pytest.raises(SingularInput):
        graph_from_real(1, 1, ["w1"])  # dh(0) != 0
    with pytest.raises(SingularInput):
        graph_from_real(1, 1, ["1 + w1*wb1"])  # h(0) != 0


def test_random_real_graphs_validate():
    rng = random.Random(11)
    for _ in range(8):
        M = random_real_graph(rng.choice([1, 2]), rng)
        assert M.n == M.m + 1  # construction implies the reality identity held
    for _ in range(4):
        M = random_real_graph(rng.choice([1, 2]), rng, with_x=True, order=8)
        assert M.order == 8


def test_rho_sigma_reality(heisenberg, quartic, c3_tube):
    # sigma maps the ideal generators to series vanishing on the same graph
    for M in (heisenberg, quartic, c3_tube):
        for r in M.rho():
            image = r.sigma_conjugate()
            assert M.restrict(image).is_zero()


def test_vector_fields_heisenberg(heisenberg):
    L, Lbar = vector_fields(heisenberg)
    space = heisenberg.space
    i = G(0, 1)
    assert L.coefficients[0][space.index_of("w1")] == Series.constant(space, 1)
    assert L.coefficients[0][space.index_of("z1")] == Series.variable(space, "zeta1") * i
    assert Lbar.coefficients[0][space.index_of("zeta1")] == Series.constant(space, 1)
    assert Lbar.coefficients[0][space.index_of("xi1")] == Series.variable(space, "w1") * (-i)


def test_vector_fields_levi_flat(levi_flat):
    L, Lbar = vector_fields(levi_flat)
    space = levi_flat.space
    assert L.coefficients[0][space.index_of("z1")].is_zero()
    assert Lbar.coefficients[0][space.index_of("xi1")].is_zero()


def test_vector_fields_c5_first_component():
    M = new_manifold(
        1,
        4,
        [
            "w1*zeta1",
            "w1^2*zeta1 + w1*zeta1^2",
            "w1^3*zeta1 + w1*zeta1^3",
            "w1^2*zeta1^2",
        ],
    )
    L, _ = vector_fields(M)
    space = M.space
    # first z-coefficient is i * d(theta_bar_1)/dw = i*zeta
    assert L.coefficients[0][space.index_of("z1")] == Series.variable(
        space, "zeta1"
    ) * G(0, 1)
    # second: i * (2 w zeta + zeta^2)
    expected = parse_series("i*(2*w1*zeta1 + zeta1^2)", space)
    assert L.coefficients[0][space.index_of("z2")] == expected


def test_tangency_certificates_all(heisenberg, quartic, c3_tube):
    # construction runs the certificates; re-run them explicitly
    for M in (heisenberg, quartic, c3_tube):
        L, Lbar = vector_fields(M)
        for X in (L, Lbar):
            for i in range(M.m):
                for r in M.rho():
                    assert M.restrict(X.apply(i, r)).is_zero()


def test_commutativity_certificates_m2():
    M = new_manifold(2, 2, ["w1*zeta1", "w1*zeta2 + w2*zeta1"])
    L, Lbar = vector_fields(M)
    for X in (L, Lbar):
        for i in range(2):
            for j in range(i + 1, 2):
                assert all(c.is_zero() for c in X.bracket_coefficients(i, j))


def test_basepoint_numeric_validation(heisenberg):
    i = G(0, 1)
    w, zeta, xi = [G(1)], [G(2)], [G(0)]
    z = [xi[0] + i * G(1) * G(2)]  # qbar(w, zeta, xi) = xi + i w zeta
    bp = Basepoint.numeric(heisenberg, w, z, zeta, xi)
    assert bp.kind == "numeric"
    with pytest.raises(OffManifold):
        Basepoint.numeric(heisenberg, w, [G(5)], zeta, xi)


def test_segre_leaf_origin_and_general(heisenberg):
    leaf = segre_leaf(heisenberg, tau_p=([ZERO], [ZERO]))
    vals = [format_series(c) for c in leaf.components]
    assert vals == ["w1", "0", "0", "0"]
    zeta_p, xi_p = [G(2)], [G(3)]
    leaf2 = segre_leaf(heisenberg, tau_p=(zeta_p, xi_p))
    space = leaf2.domain
    w = Series.variable(space, "w1")
    assert leaf2.components[0] == w
    assert leaf2.components[1] == Series.constant(space, G(3)) + w * G(0, 2)
    assert leaf2.components[2] == Series.constant(space, G(2))
    assert leaf2.components[3] == Series.constant(space, G(3))


def test_segre_leaf_fibers_constant(c3_tube):
    rng = random.Random(12)
    zeta_p = [small_scalar(rng)]
    xi_p = [small_scalar(rng), small_scalar(rng)]
    leaf = segre_leaf(c3_tube, tau_p=(zeta_p, xi_p))
    m, d = c3_tube.m, c3_tube.d
    for comp in leaf.components[m + d :]:
        assert comp.total_degree() <= 0  # (zeta, xi) components are constant


def test_segre_leaf_annihilated_by_field(heisenberg, c3_tube):
    # L annihilates the defining functions of the leaf: components satisfy
    # z = qbar(w, zeta_p, xi_p), so substituting into rho gives zero
    rng = random.Random(13)
    for M in (heisenberg, c3_tube):
        zeta_p = [small_scalar(rng) for _ in range(M.m)]
        xi_p = [small_scalar(rng) for _ in range(M.d)]
        leaf = segre_leaf(M, tau_p=(zeta_p, xi_p))
        sub = leaf.as_subst()
        for r in M.rho():
            assert r.compose(sub).is_zero()


def test_segre_leaf_sigma_relation(heisenberg):
    # sigma of the leaf through tau_p is the conjugate leaf through conj(tau_p)
    rng = random.Random(14)
    zeta_p = [small_scalar(rng)]
    xi_p = [small_scalar(rng)]
    leaf = segre_leaf(heisenberg, tau_p=(zeta_p, xi_p))
    image = [c.sigma_conjugate() for c in leaf.components]
    space = heisenberg.space
    swapped = [image[space.partner(a)] for a in range(space.dim)]
    conj = segre_leaf(
        heisenberg,
        t_p=([z.conjugate() for z in zeta_p], [x.conjugate() for x in xi_p]),
    )
    # rename the conjugate leaf's zeta-parameter to the first leaf's w-parameter
    dom = leaf.domain
    ren = {"zeta1": Series.variable(dom, "w1")}
    renamed = [c.compose(ren) for c in conj.components]
    assert renamed == swapped
