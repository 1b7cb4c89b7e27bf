"""Concrete Hamiltonian fluid models on periodic boxes."""
from .base import CirculationSpec, KelvinSpec, ModelParams
from .closures import PolytropicClosure, SuperfluidClosure, solve_vn, vn_closed_form, vn_newton, vn_residual
from .generic import (AffineFluidGradient, AffineFluidPoint, alp_bracket, generic_rhs, kelvin_forcing,
                      matrix_form_rhs)
from .hall import HallMHDModel, HallState
from .state import FieldState
from .superfluid import (SFHallModel, SFHallState, SFYMModel, SFYMState, SuperfluidModel, SuperfluidState,
                         superfluid_thermo)
from .ymmhd import (ComplexFluidState, MHDState, YMMHDModel, euler_rhs, mhd_rhs, mhd_rhs_3d,
                    momentum_to_velocity_tendency)

MODEL_IDS = ("mhd", "ymmhd", "hall", "superfluid", "sf-ymmhd", "sf-hall")


def build_model(model_id: str, grid, *, algebra: str = "u1", K: float = 1.0, gamma_ad: float = 1.4,
                sigma: float = 0.5, beta: float = 0.0, a_ion: float = 1.0, R_hall: float = 0.5):
    """Construct a model by id; ``mhd`` is Yang-Mills MHD on ``u1``."""
    from ..liealg import get_spec

    poly = PolytropicClosure(K, gamma_ad)
    sfc = SuperfluidClosure(poly, sigma, beta)
    params = ModelParams(a_ion, R_hall)
    if model_id == "mhd":
        return YMMHDModel(grid, get_spec("u1"), poly)
    if model_id == "ymmhd":
        return YMMHDModel(grid, get_spec(algebra), poly)
    if model_id == "hall":
        return HallMHDModel(grid, poly, params)
    if model_id == "superfluid":
        return SuperfluidModel(grid, sfc)
    if model_id == "sf-ymmhd":
        return SFYMModel(grid, get_spec(algebra), sfc)
    if model_id == "sf-hall":
        return SFHallModel(grid, sfc, params)
    raise ValueError(f"unknown model {model_id!r}; known: {', '.join(MODEL_IDS)}")
