import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from alpfluids import fields as F
from alpfluids.errors import BijectivityError, ModelDomainError, SolverError
from alpfluids.liealg import get_spec
from alpfluids.models import (MODEL_IDS, AffineFluidGradient, AffineFluidPoint, HallMHDModel, MHDState,
                              PolytropicClosure, SuperfluidClosure, SuperfluidModel, build_model, euler_rhs,
                              generic_rhs, matrix_form_rhs, mhd_rhs, mhd_rhs_3d, momentum_to_velocity_tendency,
                              solve_vn, vn_closed_form, vn_newton, vn_residual)
from alpfluids.models.base import ModelParams, smooth_positive

G2 = F.PeriodicGrid((32, 32))
G3 = F.PeriodicGrid((16, 16, 16))
seeds = st.integers(0, 2**31 - 1)


def fluid_fields(grid, rng, amp=0.1, cutoff=2):
    d = grid.dim
    return (grid.random_field(rng, (d,), cutoff=cutoff, amplitude=amp),
            smooth_positive(grid, rng, 1.0, amp, cutoff), smooth_positive(grid, rng, 0.1, amp, cutoff))


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_hydrostatic_state_is_stationary(mid):
    M = build_model(mid, G2, algebra="so3")
    assert M.rhs(M.hydrostatic_state(1.3, 0.2)).max_abs() <= 1e-14


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_hamiltonian_finite_and_positive(mid, rng):
    M = build_model(mid, G2, algebra="so3")
    st = M.random_state(rng, amplitude=0.1, cutoff=2)
    assert np.isfinite(M.hamiltonian(st)) and M.hamiltonian(st) > 0


def test_unknown_model():
    with pytest.raises(ValueError):
        build_model("mhd-relativistic", G2)


def test_zero_gradients_give_zero_tangent(rng):
    spec = get_spec("so3")
    d, n = 2, 3
    pt = AffineFluidPoint(G2.random_field(rng, (d,)), G2.random_field(rng, (n,)), G2.random_field(rng, (2,)),
                          G2.random_field(rng, (d, n)))
    zero = AffineFluidGradient(np.zeros((d,) + G2.shape), np.zeros((n,) + G2.shape), np.zeros((2,) + G2.shape),
                               np.zeros((d, n) + G2.shape))
    assert generic_rhs(G2, spec, pt, zero).max_abs() == 0.0
    assert matrix_form_rhs(G2, spec, pt, zero).max_abs() == 0.0


def test_abelian_potential_transport_is_lie_derivative(rng):
    spec = get_spec("u1")
    d = 2
    gamma = G2.random_field(rng, (d, 1), cutoff=3)
    u = G2.random_field(rng, (d,), cutoff=3)
    z = np.zeros
    pt = AffineFluidPoint(z((d,) + G2.shape), z((1,) + G2.shape), np.ones((1,) + G2.shape), gamma)
    gr = AffineFluidGradient(u, z((1,) + G2.shape), z((1,) + G2.shape), z((d, 1) + G2.shape))
    out = generic_rhs(G2, spec, pt, gr)
    assert np.allclose(out.gamma[:, 0], -F.lie_derivative_oneform(G2, u, gamma[:, 0]), atol=1e-12)


def test_ymmhd_hamiltonian_without_momentum_and_field(rng):
    M = build_model("ymmhd", G2, algebra="so3")
    st = M.random_state(rng)
    st.m[:] = 0.0
    st.gamma[:] = 0.0
    assert np.isclose(M.hamiltonian(st), G2.integrate(M.closure.energy(st.rho, st.S)), rtol=1e-14)


def test_ymmhd_kinetic_energy_single_mode():
    M = build_model("mhd", G2)
    st = M.hydrostatic_state(1.0, 0.1)
    x = G2.coords()
    st.m[0] = np.sin(x[1])
    kinetic = M.hamiltonian(st) - M.hamiltonian(M.hydrostatic_state(1.0, 0.1))
    assert np.isclose(kinetic, 0.5 * (2 * np.pi) ** 2 * 0.5, rtol=1e-13)


def test_mhd_3d_forms_agree():
    rng = np.random.default_rng(21)
    u, rho, S = fluid_fields(G3, rng)
    A = G3.random_field(rng, (3,), cutoff=2, amplitude=0.1)
    ms = MHDState(u, rho, S, A)
    c = PolytropicClosure()
    a, b = mhd_rhs(G3, ms, c), mhd_rhs_3d(G3, ms, c)
    assert (a - b).max_abs() <= 1e-10


def test_mhd_u1_reduction_and_field_free(rng):
    u, rho, S = fluid_fields(G2, rng)
    A = G2.random_field(rng, (2,), cutoff=2, amplitude=0.1)
    M = build_model("mhd", G2)
    ms = MHDState(u, rho, S, A)
    st = M.from_mhd(ms)
    tend = M.rhs(st)
    ref = mhd_rhs(G2, ms, M.closure)
    assert np.allclose(momentum_to_velocity_tendency(st, tend), ref.u, atol=1e-12)
    assert np.allclose(tend.gamma[:, 0], ref.A, atol=1e-12)
    e = euler_rhs(G2, u, rho, S, M.closure)
    ref0 = mhd_rhs(G2, MHDState(u, rho, S, np.zeros_like(A)), M.closure)
    assert np.allclose(ref0.u, e[0], atol=1e-12) and np.allclose(ref0.rho, e[1], atol=1e-12)


@given(seeds)
def test_hall_charge_constraint_preserved(seed):
    M = build_model("hall", G2)
    st = M.random_state(np.random.default_rng(seed), amplitude=0.15)
    assert np.max(np.abs(M.constraint_tendency(st))) <= 1e-12


def test_hall_without_hall_term_is_ideal_induction(rng):
    M = build_model("hall", G2)
    st = M.random_state(rng)
    A = M.potential(st)
    u = M.velocity(st, "u")
    ideal = mhd_rhs(G2, MHDState(u, st.rho, st.S, A), M.closure.__class__())
    # mhd_rhs keeps the gauge term -d(A.u); strip it to compare with -i_u B
    stripped = ideal.A + F.grad(G2, np.sum(A * u, axis=0))
    assert np.allclose(M.potential_rhs(st, hall_term=False), stripped, atol=1e-12)


def test_hall_ohm_law_matches_electron_system(rng):
    M = build_model("hall", G2)
    st = M.random_state(rng, amplitude=0.2)
    lhs = M.potential_tendency(st, M.rhs(st))
    rhs = M.potential_rhs(st)
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * np.max(np.abs(rhs))


def test_hall_force_free_field_is_frozen():
    g = F.PeriodicGrid((16, 16, 16))
    M = HallMHDModel(g)
    z = g.coords()[2]
    B = np.stack([np.sin(z), np.cos(z), np.zeros_like(z)])  # curl B = B, so A = B
    st = M.from_velocity(np.zeros((3,) + g.shape), np.ones(g.shape), np.full(g.shape, 0.1), 0.1 * B)
    assert np.max(np.abs(M.potential_rhs_3d(st))) <= 1e-14


def test_hall_2d_and_3d_ohm_laws_agree():
    rng = np.random.default_rng(4)
    M = HallMHDModel(G3)
    st = M.random_state(rng, amplitude=0.1)
    assert np.allclose(M.potential_rhs(st), M.potential_rhs_3d(st), atol=1e-10)


def test_hall_vanishing_charge_rejected():
    M = build_model("hall", G2)
    st = M.hydrostatic_state()
    st.n[0, 0] = 0.0
    with pytest.raises(ModelDomainError):
        M.potential(st)


def test_negative_density_rejected():
    M = build_model("mhd", G2)
    st = M.hydrostatic_state()
    st.rho[3, 3] = -0.1
    with pytest.raises(ModelDomainError):
        M.hamiltonian(st)


def test_hall_parameters_must_be_nonzero():
    with pytest.raises(ValueError):
        ModelParams(R_hall=0.0)


# -- normal velocity solve -------------------------------------------------

def sf_inputs(rng, grid=G2):
    v_n, rho, S = fluid_fields(grid, rng, amp=0.2)
    v_s = grid.random_field(rng, (grid.dim,), cutoff=2, amplitude=0.2)
    return v_n, v_s, rho, S


def test_no_superfluid_component_gives_mass_velocity(rng):
    c = SuperfluidClosure(sigma=0.0)
    v_n, v_s, rho, S = sf_inputs(rng)
    m = rho * v_n
    assert np.allclose(solve_vn(c, m, rho, S, v_s), m / rho, atol=1e-15)


@pytest.mark.parametrize("beta", [0.0, 0.3])
def test_constructed_momentum_recovers_velocity(rng, beta):
    c = SuperfluidClosure(sigma=0.4, beta=beta)
    v_n, v_s, rho, S = sf_inputs(rng)
    m = rho * v_n + c.relative_momentum(rho, S, v_s - v_n)
    v = solve_vn(c, m, rho, S, v_s)
    assert np.allclose(v, v_n, atol=1e-12)
    assert np.max(np.abs(vn_residual(c, m, rho, S, v_s, v))) <= 1e-12


@given(seeds)
def test_newton_matches_closed_form(seed):
    rng = np.random.default_rng(seed)
    c = SuperfluidClosure(sigma=0.5)
    v_n, v_s, rho, S = sf_inputs(rng)
    m = G2.random_field(rng, (2,), amplitude=0.3)
    assert np.max(np.abs(vn_newton(c, m, rho, S, v_s) - vn_closed_form(c, m, rho, S, v_s))) <= 1e-12


def test_singular_closure_rejected(rng):
    c = SuperfluidClosure(sigma=1.0)
    v_n, v_s, rho, S = sf_inputs(rng)
    with pytest.raises(BijectivityError) as exc:
        solve_vn(c, rho * v_n, rho, S, v_s)
    assert exc.value.exit_code == 4


def test_newton_reports_residual_history(rng):
    c = SuperfluidClosure(sigma=0.4, beta=0.5)
    v_n, v_s, rho, S = sf_inputs(rng)
    m = rho * v_n + c.relative_momentum(rho, S, v_s - v_n)
    with pytest.raises(SolverError) as exc:
        vn_newton(c, m, rho, S, v_s, max_iter=1)
    assert len(exc.value.residual_history) == 2


# -- superfluid reductions ---------------------------------------------------

def test_superfluid_without_counterflow_is_adiabatic_fluid(rng):
    M = SuperfluidModel(G2, SuperfluidClosure(sigma=0.5))
    v, rho, S = fluid_fields(G2, rng)
    st = M.from_velocities(v, v, rho, S)
    tend = M.rhs(st)
    e = euler_rhs(G2, v, rho, S, M.closure.base)
    u_dot = (tend.m - tend.rho * v) / rho
    assert np.allclose(u_dot, e[0], atol=1e-12)
    assert np.allclose(tend.rho, e[1], atol=1e-13) and np.allclose(tend.S, e[2], atol=1e-13)


def test_superfluid_vs_equation_forms_agree_3d():
    rng = np.random.default_rng(8)
    M = SuperfluidModel(G3)
    st = M.random_state(rng, amplitude=0.1, cutoff=2)
    rhs = M.rhs(st).v_s
    assert np.max(np.abs(M.vs_rhs_advective(st) - rhs)) <= 1e-9
    assert np.max(np.abs(M.vs_rhs_advective_3d(st) - rhs)) <= 1e-9


def test_sf_ym_without_gauge_field_is_superfluid(rng):
    sfym = build_model("sf-ymmhd", G2, algebra="so3")
    sf = build_model("superfluid", G2)
    base = sf.random_state(rng)
    st = sfym.hydrostatic_state()
    st.m, st.rho, st.S, st.v_s = base.m, base.rho, base.S, base.v_s
    a, b = sfym.rhs(st), sf.rhs(base)
    assert np.allclose(a.m, b.m, atol=1e-13) and np.allclose(a.v_s, b.v_s, atol=1e-13)
    assert np.isclose(sfym.hamiltonian(st), sf.hamiltonian(base), rtol=1e-14)
    assert not np.any(a.A) and not np.any(a.Q)


@given(seeds)
def test_sf_hall_charge_constraint_preserved(seed):
    M = build_model("sf-hall", G2)
    st = M.random_state(np.random.default_rng(seed), amplitude=0.15)
    assert np.max(np.abs(M.constraint_tendency(st))) <= 1e-12


def test_sf_hall_ohm_law_matches_electron_system(rng):
    M = build_model("sf-hall", G2)
    st = M.random_state(rng, amplitude=0.2)
    lhs = M.potential_tendency(st, M.rhs(st))
    rhs = M.potential_rhs(st)
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * np.max(np.abs(rhs))


def test_sf_hall_superfluid_velocity_equation(rng):
    M = build_model("sf-hall", G2)
    st = M.random_state(rng, amplitude=0.1)
    tend = M.rhs(st)
    a, R = M.params.a_ion, M.params.R_hall
    vs_dot = tend.u - (a / R) * M.potential_tendency(st, tend)
    assert np.max(np.abs(vs_dot - M.vs_rhs(st))) <= 1e-9


@pytest.mark.parametrize("mid", ["ymmhd", "hall", "superfluid", "sf-ymmhd", "sf-hall"])
def test_stress_form_matches_bracket_form(mid, rng):
    M = build_model(mid, G2, algebra="so3")
    st = M.random_state(rng, amplitude=0.1, cutoff=2)
    a, b = M.bracket_momentum_tendency(st), M.stress_momentum_tendency(st)
    assert np.max(np.abs(a - b)) <= 1e-8 * max(np.max(np.abs(b)), 1.0)
