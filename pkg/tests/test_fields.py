import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from alpfluids import fields as F
from alpfluids.liealg import so3, u1

G2 = F.PeriodicGrid((32, 32))
G3 = F.PeriodicGrid((16, 16, 16))
seeds = st.integers(0, 2**31 - 1)


def rf(grid, rng, *lead, cutoff=4):
    return grid.random_field(rng, lead=lead, cutoff=cutoff)


@pytest.mark.parametrize("shape", [(7, 8), (8, 8, 8, 8), (10, 12, 9)])
def test_bad_grid_rejected(shape):
    with pytest.raises(F.FieldShapeError):
        F.PeriodicGrid(shape)


def test_shape_mismatch_rejected():
    with pytest.raises(F.FieldShapeError):
        F.grad(G2, np.zeros((16, 16)))


def test_constant_derivative_vanishes():
    assert np.max(np.abs(F.grad(G2, np.full(G2.shape, 3.0)))) < 1e-14


def test_single_mode_derivative():
    g = F.PeriodicGrid((32, 32), (2.0, 3.0))
    x = g.coords()
    f = np.sin(2 * np.pi * x[0] / 2.0)
    expected = (2 * np.pi / 2.0) * np.cos(2 * np.pi * x[0] / 2.0)
    assert np.allclose(F.partial(g, f, 0), expected, atol=1e-12)
    assert np.allclose(F.partial(g, f, 1), 0.0, atol=1e-12)


@given(seeds)
def test_div_grad_is_laplacian(seed):
    f = rf(G2, np.random.default_rng(seed))
    assert np.allclose(F.div(G2, F.grad(G2, f)), F.laplacian(G2, f), atol=1e-11)


@given(seeds)
def test_d_squared_vanishes_3d(seed):
    a = rf(G3, np.random.default_rng(seed), 3)
    assert np.max(np.abs(F.d_twoform(G3, F.d_oneform(G3, a)))) < 1e-10


def test_sharp_flat_inverse(rng):
    u = rf(G2, rng, 2)
    assert np.array_equal(F.sharp(F.flat(u)), u)


def test_lie_derivative_zero_velocity(rng):
    m = rf(G2, rng, 2)
    assert not np.any(F.lie_derivative_oneform(G2, np.zeros_like(m), m))


def test_lie_derivative_gradient_pair_matches_coordinates(rng):
    phi = rf(G2, rng)
    m = F.grad(G2, phi)
    u = F.grad(G2, rf(G2, rng))
    assert np.allclose(F.lie_derivative_oneform(G2, u, m), F.lie_derivative_oneform_coords(G2, u, m), atol=1e-10)


def test_lie_derivative_constant_form(rng):
    psi = rf(G2, rng)
    u = np.stack([F.partial(G2, psi, 1), -F.partial(G2, psi, 0)])  # divergence free
    m = np.stack([np.full(G2.shape, 0.7), np.full(G2.shape, -0.2)])
    um = np.sum(u * m, axis=0)
    assert np.allclose(F.lie_derivative_oneform(G2, u, m), F.grad(G2, um), atol=1e-11)


@given(seeds)
def test_lie_derivative_cartan_vs_coordinates_band_limited(seed):
    rng = np.random.default_rng(seed)
    u, m = rf(G2, rng, 2, cutoff=3), rf(G2, rng, 2, cutoff=3)
    assert np.allclose(F.lie_derivative_oneform(G2, u, m), F.lie_derivative_oneform_coords(G2, u, m), atol=1e-10)


@given(seeds)
def test_div_u_kappa_product_rule(seed):
    rng = np.random.default_rng(seed)
    u, kappa = rf(G2, rng, 2, cutoff=3), rf(G2, rng, 3, cutoff=3)
    lhs = F.div_u_kappa(G2, u, kappa)
    rhs = F.div(G2, u)[None] * kappa + np.einsum("i...,ia...->a...", u, F.grad(G2, kappa))
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_kappa_dot_dnu_abelian(rng):
    kappa, nu = rf(G2, rng, 1), rf(G2, rng, 1)
    assert np.allclose(F.kappa_dot_dnu(G2, kappa, nu), kappa[0] * F.grad(G2, nu[0]))
    assert not np.any(F.kappa_dot_dnu(G2, np.zeros_like(kappa), nu))
    assert np.max(np.abs(F.kappa_dot_dnu(G2, kappa, np.ones_like(nu)))) < 1e-14


def test_covariant_d_collapses(rng):
    nu = rf(G2, rng, 3)
    gamma = rf(G2, rng, 2, 1)
    assert np.array_equal(F.covariant_d_function(G2, so3(), np.zeros((2, 3) + G2.shape), nu), F.grad(G2, nu))
    assert np.array_equal(F.covariant_d_function(G2, u1(), gamma, nu[:1]), F.grad(G2, nu[:1]))


def test_covariant_d_constant_inputs():
    s = so3()
    nu = np.broadcast_to(np.array([1.0, 2.0, 3.0])[:, None, None], (3,) + G2.shape).copy()
    gv = np.array([[0.5, 0.0, -1.0], [0.0, 2.0, 1.0]])
    gamma = np.broadcast_to(gv[:, :, None, None], (2, 3) + G2.shape).copy()
    out = F.covariant_d_function(G2, s, gamma, nu)
    for i in range(2):
        assert np.allclose(out[i, :, 0, 0], np.cross(gv[i], [1.0, 2.0, 3.0]), atol=1e-13)


def test_curvature_abelian_is_curl():
    rng = np.random.default_rng(3)
    A = rf(G3, rng, 3, 1)
    Fc = F.curvature(G3, u1(), A)[:, :, 0]
    assert np.allclose(F.hodge_2_to_vector(Fc), F.curl(G3, A[:, 0]), atol=1e-12)


def test_curvature_zero_and_constant():
    s = so3()
    assert not np.any(F.curvature(G2, s, np.zeros((2, 3) + G2.shape)))
    gv = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    gamma = np.broadcast_to(gv[:, :, None, None], (2, 3) + G2.shape).copy()
    Fc = F.curvature(G2, s, gamma)
    assert np.allclose(Fc[0, 1, :, 0, 0], [0, 0, 1], atol=1e-14)
    assert np.allclose(Fc[1, 0, :, 0, 0], [0, 0, -1], atol=1e-14)


def test_covariant_div_collapses(rng):
    w = rf(G2, rng, 2, 3)
    gamma = rf(G2, rng, 2, 3)
    assert np.array_equal(F.covariant_div(G2, u1(), gamma[:, :1], w[:, :1]), F.div(G2, w[:, :1]))
    assert np.allclose(F.covariant_div(G2, so3(), np.zeros_like(gamma), w), F.div(G2, w))


@given(seeds)
def test_covariant_div_adjointness(seed):
    rng = np.random.default_rng(seed)
    s = so3()
    nu, w, gamma = rf(G2, rng, 3, cutoff=3), rf(G2, rng, 2, 3, cutoff=3), rf(G2, rng, 2, 3, cutoff=3)
    lhs = G2.integrate(np.sum(F.covariant_d_function(G2, s, gamma, nu) * w, axis=(0, 1)))
    rhs = -G2.integrate(np.sum(nu * F.covariant_div(G2, s, gamma, w), axis=0))
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), 1.0)


def test_diamonds_vanish_at_zero_potential(rng):
    s = so3()
    w = rf(G2, rng, 2, 3)
    z = np.zeros_like(w)
    assert np.max(np.abs(F.diamond1(G2, s, w, z))) < 1e-14
    assert not np.any(F.diamond2(s, w, z))


def test_diamond1_abelian_closed_potential(rng):
    gamma = F.grad(G2, rf(G2, rng, 1))
    w = rf(G2, rng, 2, 1)
    out = F.diamond1(G2, u1(), w, gamma)
    assert np.allclose(out, F.div(G2, w)[0] * gamma[:, 0], atol=1e-10)


@given(seeds)
def test_diamond2_pairing(seed):
    rng = np.random.default_rng(seed)
    s = so3()
    w, gamma, nu = rf(G2, rng, 2, 3), rf(G2, rng, 2, 3), rf(G2, rng, 3)
    lhs = np.sum(F.diamond2(s, w, gamma) * nu, axis=0)
    rhs = -sum(np.sum(w[j] * F.pointwise_bracket(s, gamma[j], nu), axis=0) for j in range(2))
    assert np.allclose(lhs, rhs, atol=1e-13)


def test_3d_vector_identities():
    rng = np.random.default_rng(9)
    B = rf(G3, rng, 3)
    u = rf(G3, rng, 3)
    W = F.vector_to_2form(B)
    assert np.allclose(F.div(G3, W), -F.curl(G3, B), atol=1e-10)
    assert np.allclose(F.interior_2form(u, W), np.cross(B, u, axis=0), atol=1e-12)


def test_interpolation_exact_for_band_limited(rng):
    f = rf(G2, rng, cutoff=5)
    fh, ks = F._full_modes(G2, f)
    pts = rng.uniform(0, 2 * np.pi, (20, 2))
    direct = np.array([np.sum(fh * np.exp(1j * (ks[0][:, None] * p[0] + ks[1][None, :] * p[1]))).real for p in pts])
    assert np.allclose(F.interpolate(G2, f, pts), direct, atol=1e-12)
    assert np.allclose(F.interpolate(G2, f, G2.coords()[:, 3, 5][None]), f[3, 5], atol=1e-13)


def test_exact_form_has_zero_circulation(rng):
    loop = F.LoopPolyline.circle((2.0, 3.0), 1.2, 64)
    assert abs(F.loop_integral(G2, loop, F.grad(G2, rf(G2, rng)))) < 1e-8


def test_winding_loop_measures_period():
    g = F.PeriodicGrid((16, 16), (3.0, 5.0))
    dx = np.stack([np.ones(g.shape), np.zeros(g.shape)])
    loop = F.LoopPolyline.line(g, 0, (0.0, 1.0), 32)
    assert np.isclose(F.loop_integral(g, loop, dx), 3.0, atol=1e-13)


def test_loop_integral_converges_under_refinement(rng):
    omega = rf(G2, rng, 2, cutoff=4)
    errs = []
    exact = F.loop_integral(G2, F.LoopPolyline.circle((3.0, 3.0), 1.0, 512), omega)
    for n in (16, 32, 64):
        errs.append(abs(F.loop_integral(G2, F.LoopPolyline.circle((3.0, 3.0), 1.0, n), omega) - exact))
    assert errs[1] < errs[0] and errs[2] < 1e-10


def test_degenerate_loops_rejected():
    with pytest.raises(F.DegenerateLoopError):
        F.loop_integral(G2, F.LoopPolyline.circle((1.0, 1.0), 1.0, 8), np.zeros((2,) + G2.shape))
    with pytest.raises(F.DegenerateLoopError):
        F.loop_integral(G2, F.LoopPolyline(np.zeros((32, 2))), np.zeros((2,) + G2.shape))


def test_lie_valued_loop_integral_shape(rng):
    A = rf(G2, rng, 2, 3)
    val = F.loop_integral(G2, F.LoopPolyline.circle((3.0, 3.0), 1.0, 32), A)
    assert val.shape == (3,)


def test_snapshot_roundtrip(tmp_path, rng):
    A = rf(G2, rng, 2, 3)
    path = tmp_path / "A.bin"
    F.write_snapshot(path, G2, "A", A, algebra_dim=3)
    grid, header, back = F.read_snapshot(path)
    assert grid == G2 and header["algebra_dim"] == 3 and header["dtype"] == "<f8"
    assert np.array_equal(back, A)
    assert path.stat().st_size == A.size * 8
