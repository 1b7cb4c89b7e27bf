import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from alpfluids.affine_core import (AffineSemidirect, CocycleSpec, FunctionalGradient, SemidirectDualPoint,
                                   circle_system, heavy_top, line_system, rk4_path, rotation_rep)
from alpfluids.liealg import GroupElement, group_exp, lie_bracket, random_group_element
from alpfluids.reference import SemidirectReference

seeds = st.integers(0, 2**31 - 1)


def sample(seed, system=None):
    rng = np.random.default_rng(seed)
    S = system or heavy_top(rng.standard_normal(3))
    n, m = S.g_dim, S.v_dim
    pt = SemidirectDualPoint(rng.standard_normal(n), rng.standard_normal(m))
    grads = [FunctionalGradient(rng.standard_normal(n), rng.standard_normal(m)) for _ in range(3)]
    return S, rng, pt, grads


def test_diamond_zero_inputs():
    S = heavy_top()
    assert not np.any(S.diamond(np.zeros(3), np.ones(3)))
    assert not np.any(S.diamond(np.ones(3), np.zeros(3)))


def test_diamond_matches_finite_difference(rng):
    S = heavy_top()
    v, a, xi = rng.standard_normal((3, 3))
    h = 1e-5
    rot = lambda t: S.rep.rho_star(group_exp(S.spec, -t * xi)) @ a
    a_xi = (rot(h) - rot(-h)) / (2 * h)
    # <v <> a, xi> = -<a xi, v>
    assert np.isclose(S.diamond(v, a) @ xi, -(a_xi @ v), atol=1e-9)


def test_semidirect_ad_star_zero_generator():
    S = heavy_top()
    pt = SemidirectDualPoint(np.ones(3), np.ones(3))
    out = S.semidirect_ad_star((np.zeros(3), np.zeros(3)), pt)
    assert not np.any(out.vec())


def test_semidirect_ad_star_abelian_keeps_only_diamond(rng):
    S = circle_system()
    pt = SemidirectDualPoint(rng.standard_normal(1), rng.standard_normal(2))
    xi, v = rng.standard_normal(1), rng.standard_normal(2)
    out = S.semidirect_ad_star((xi, v), pt)
    assert np.allclose(out.mu, S.diamond(v, pt.a))


@given(seeds)
def test_semidirect_ad_star_pairing_oracle(seed):
    S, rng, pt, _ = sample(seed, heavy_top())
    X = (rng.standard_normal(3), rng.standard_normal(3))
    out = S.semidirect_ad_star(X, pt)
    for e in np.eye(6):
        Y = (e[:3], e[3:])
        assert np.isclose(S.pair(out, Y), S.pair(pt, S.bracket(X, Y)), atol=1e-12)


def test_coboundary_cocycle_identity():
    S = heavy_top(np.array([0.3, -1.0, 2.0]))
    assert S.check_cocycle(50) <= 1e-12


def test_zero_cocycle_identity_exact():
    assert heavy_top().check_cocycle(20) == 0.0


def test_constant_cocycle_is_rejected():
    rep = rotation_rep()
    lam = np.array([1.0, 0.0, 0.0])
    bad = AffineSemidirect(rep, CocycleSpec(lambda g: lam, np.zeros((3, 3)), "constant"))
    assert bad.check_cocycle(10) > 1e-3


@given(seeds)
def test_sigma_antisymmetric_and_matches_d_alpha(seed):
    S, rng, _, _ = sample(seed)
    X = (rng.standard_normal(3), rng.standard_normal(3))
    Y = (rng.standard_normal(3), rng.standard_normal(3))
    assert S.sigma_form(X, X) == 0.0
    assert np.isclose(S.sigma_form(X, Y), -S.d_alpha_identity(X, Y), rtol=0, atol=1e-14)


def test_sigma_vanishes_without_cocycle(rng):
    S = heavy_top()
    X = (rng.standard_normal(3), rng.standard_normal(3))
    Y = (rng.standard_normal(3), rng.standard_normal(3))
    assert S.sigma_form(X, Y) == 0.0


@given(seeds)
def test_bracket_antisymmetric_exact(seed):
    S, _, pt, (f, g, _) = sample(seed)
    assert S.affine_lp_bracket(pt, f, f) == 0.0
    assert S.affine_lp_bracket(pt, f, g) == -S.affine_lp_bracket(pt, g, f)


@given(seeds)
def test_linear_bracket_is_pairing_minus_sigma(seed):
    S, _, pt, (f, g, _) = sample(seed)
    X, Y = (f.d_mu, f.d_a), (g.d_mu, g.d_a)
    expected = S.pair(pt, S.bracket(X, Y)) - S.sigma_form(X, Y)
    assert np.isclose(S.affine_lp_bracket(pt, f, g), expected, atol=1e-12)


@given(seeds)
def test_rhs_consistent_with_bracket(seed):
    S, _, pt, (f, h, _) = sample(seed)
    # for linear f, df/dt = <rhs, grad f> = {f, h}
    rhs = S.affine_lp_rhs(pt, h)
    assert np.isclose(rhs.vec() @ f.vec(), S.affine_lp_bracket(pt, f, h), atol=1e-12)


def test_rhs_zero_gradient():
    S, _, pt, _ = sample(0)
    assert not np.any(S.affine_lp_rhs(pt, FunctionalGradient(np.zeros(3), np.zeros(3))).vec())


@given(seeds)
def test_zero_cocycle_rhs_matches_reference(seed):
    S, _, pt, (h, _, _) = sample(seed, heavy_top())
    ref = SemidirectReference(S.rep)
    assert np.allclose(S.affine_lp_rhs(pt, h).vec(), ref.lp_rhs(pt.vec(), h.vec()), atol=1e-13)


@given(seeds)
def test_jacobi_linear_functionals(seed):
    S, _, pt, grads = sample(seed)
    gens = [(g.d_mu, g.d_a) for g in grads]
    assert S.jacobi_linear(pt, gens) <= 1e-12


def test_jacobi_quadratic_functionals(rng):
    S = heavy_top(rng.standard_normal(3))
    mats = [rng.standard_normal((6, 6)) for _ in range(3)]
    funcs = [lambda p, M=M: FunctionalGradient.from_vec((M + M.T) @ p.vec(), 3) for M in mats]
    pt = SemidirectDualPoint(rng.standard_normal(3), rng.standard_normal(3))
    assert S.check_affine_jacobi(pt, funcs) <= 3e-5


def test_jacobi_with_repeated_functional_vanishes(rng):
    S, _, pt, (f, g, _) = sample(3)
    gens = [(f.d_mu, f.d_a), (f.d_mu, f.d_a), (g.d_mu, g.d_a)]
    assert S.jacobi_linear(pt, gens) <= 1e-13


def test_momentum_map_identity_fibre(rng):
    S = heavy_top(rng.standard_normal(3))
    beta, a = rng.standard_normal((2, 3))
    e = GroupElement.identity(S.spec)
    J = S.momentum_map((e, np.zeros(3)), (beta, a))
    assert np.array_equal(J.mu, beta) and np.array_equal(J.a, a)


def test_momentum_map_without_cocycle_or_advected(rng):
    S = heavy_top()
    beta = rng.standard_normal(3)
    J = S.momentum_map((GroupElement.identity(S.spec), rng.standard_normal(3)), (beta, np.zeros(3)))
    assert np.allclose(J.mu, beta) and not np.any(J.a)


def test_nonequivariance_cocycle_at_identity():
    S = heavy_top(np.array([1.0, 2.0, 3.0]))
    sig = S.nonequivariance_cocycle(GroupElement.identity(S.spec), np.zeros(3))
    assert np.allclose(sig.vec(), 0.0)


def test_nonequivariance_cocycle_zero_without_cocycle(rng):
    S = heavy_top()
    sig = S.nonequivariance_cocycle(random_group_element(S.spec, rng), rng.standard_normal(3))
    assert not np.any(sig.vec())


@given(seeds)
def test_nonequivariance_cocycle_identity(seed):
    S, rng, _, _ = sample(seed)
    s1 = (random_group_element(S.spec, rng), rng.standard_normal(3))
    s2 = (random_group_element(S.spec, rng), rng.standard_normal(3))
    lhs = S.nonequivariance_cocycle(*S.group_mul(s1, s2))
    rhs = S.semidirect_Ad_star(s2, S.nonequivariance_cocycle(*s1)).vec() + S.nonequivariance_cocycle(*s2).vec()
    assert np.allclose(lhs.vec(), rhs, atol=1e-11)


@given(seeds)
def test_momentum_map_equivariance_defect(seed):
    S, rng, _, _ = sample(seed)
    f = random_group_element(S.spec, rng)
    z = ((f, rng.standard_normal(3)), (rng.standard_normal(3), rng.standard_normal(3)))
    s = (random_group_element(S.spec, rng), rng.standard_normal(3))
    (gp, cot) = S.affine_cotangent_action(s, z)
    moved = S.momentum_map(gp, cot).vec()
    shifted = S.affine_orbit_point(s, S.momentum_map(*z)).vec()
    assert np.allclose(moved, shifted, atol=1e-11)


def test_orbit_point_identity_is_seed(rng):
    S = heavy_top(rng.standard_normal(3))
    seed = SemidirectDualPoint(rng.standard_normal(3), rng.standard_normal(3))
    out = S.affine_orbit_point((GroupElement.identity(S.spec), np.zeros(3)), seed)
    assert np.allclose(out.vec(), seed.vec(), atol=1e-15)


def test_orbit_point_collapses_to_coadjoint_without_cocycle(rng):
    S = heavy_top()
    seed = SemidirectDualPoint(rng.standard_normal(3), rng.standard_normal(3))
    s = (random_group_element(S.spec, rng), rng.standard_normal(3))
    assert np.allclose(S.affine_orbit_point(s, seed).vec(), S.semidirect_Ad_star(s, seed).vec(), atol=1e-14)


@given(seeds)
def test_orbit_action_is_a_right_action(seed):
    S, rng, pt, _ = sample(seed)
    s1 = (random_group_element(S.spec, rng), rng.standard_normal(3))
    s2 = (random_group_element(S.spec, rng), rng.standard_normal(3))
    twice = S.affine_orbit_point(s2, S.affine_orbit_point(s1, pt))
    once = S.affine_orbit_point(S.group_mul(s1, s2), pt)
    assert np.allclose(twice.vec(), once.vec(), atol=1e-11)


def test_orbit_form_same_generator_vanishes(rng):
    S, _, pt, (f, _, _) = sample(5)
    X = (f.d_mu, f.d_a)
    assert S.orbit_symplectic_form(pt, X, X) == 0.0


def test_orbit_form_kks_collapse(rng):
    S = heavy_top()
    lam = SemidirectDualPoint(rng.standard_normal(3), np.zeros(3))
    xi, eta = rng.standard_normal((2, 3))
    val = S.orbit_symplectic_form(lam, (xi, np.zeros(3)), (eta, np.zeros(3)))
    assert np.isclose(val, lam.mu @ lie_bracket(S.spec, xi, eta), atol=1e-14)


@given(seeds)
def test_orbit_form_equals_bracket(seed):
    S, _, pt, (f, g, _) = sample(seed)
    val = S.orbit_symplectic_form(pt, (f.d_mu, f.d_a), (g.d_mu, g.d_a))
    assert np.isclose(val, S.affine_lp_bracket(pt, f, g), atol=1e-12)


def test_advected_evolution_constant_path(rng):
    S = heavy_top(rng.standard_normal(3))
    a0 = rng.standard_normal(3)
    e = GroupElement.identity(S.spec)
    assert np.allclose(S.advected_evolution([e, e, e], a0), a0)


def test_advected_evolution_without_cocycle_is_transport(rng):
    S = heavy_top()
    a0 = rng.standard_normal(3)
    g = random_group_element(S.spec, rng)
    assert np.allclose(S.advected_evolution([g], a0)[0], S.rep.rho_star(g) @ a0)


def test_advected_velocity_matches_rhs(rng):
    S = heavy_top(rng.standard_normal(3))
    a0, xi = rng.standard_normal((2, 3))
    h = 1e-5
    path = [group_exp(S.spec, t * xi) for t in (-h, h)]
    a = S.advected_evolution(path, a0)
    fd = (a[1] - a[0]) / (2 * h)
    rhs = S.affine_lp_rhs(SemidirectDualPoint(np.zeros(3), a0), FunctionalGradient(xi, np.zeros(3)))
    assert np.allclose(fd, rhs.a, atol=1e-9)


def test_rk4_path_tracks_advected_variable(rng):
    S = heavy_top(rng.standard_normal(3))
    pt = SemidirectDualPoint(rng.standard_normal(3), rng.standard_normal(3))
    grad_h = lambda p: FunctionalGradient(p.mu.copy(), np.array([0.0, 0.0, 1.0]))
    pts, path = rk4_path(S, pt, grad_h, 1e-3, 200)
    reconstructed = S.advected_evolution(path, pt.a)[-1]
    assert np.allclose(reconstructed, pts[-1].a, atol=1e-5)


def test_line_system_cocycle_is_additive():
    S = line_system([1.0, -2.0])
    assert S.check_cocycle(20) <= 1e-12


def test_shape_errors():
    S = heavy_top()
    with pytest.raises(ValueError):
        S.diamond(np.zeros(2), np.zeros(3))
