"""Affine Lie-Poisson dynamics and periodic pseudo-spectral fluid models."""
from .affine_core import AffineSemidirect, CocycleSpec, RepresentationSpec, SemidirectDualPoint
from .config import SimConfig, load_config, parse_config
from .errors import (AlpFluidsError, BijectivityError, ConfigError, ModelDomainError,
                     NonFiniteStateError, SolverError)
from .fields import PeriodicGrid
from .liealg import GroupElement, LieAlgebraSpec, get_spec
from .models import MODEL_IDS, build_model
from .simulate import run_simulation

__version__ = "0.1.0"

__all__ = [
    "AffineSemidirect", "AlpFluidsError", "BijectivityError", "CocycleSpec", "ConfigError",
    "GroupElement", "LieAlgebraSpec", "MODEL_IDS", "ModelDomainError", "NonFiniteStateError",
    "PeriodicGrid", "RepresentationSpec", "SemidirectDualPoint", "SimConfig", "SolverError",
    "build_model", "get_spec", "load_config", "parse_config", "run_simulation",
]
