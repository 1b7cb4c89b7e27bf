"""Shipped experiment presets as INI documents."""
from __future__ import annotations

from dataclasses import dataclass

from .config import SimConfig, parse_config
from .errors import ConfigError


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    runtime_class: str
    text: str

    def config(self) -> SimConfig:
        return parse_config(self.text)


def _ini(shape, model, integrate, loops, closure="", output="snapshots = final"):
    loop_lines = "\n".join(f"loop{i} = {spec}" for i, spec in enumerate(loops, 1))
    return (f"[grid]\nshape = {shape}\n\n[model]\n{model}\n\n[closure]\n{closure}\n\n"
            f"[integrate]\n{integrate}\n\n[loops]\n{loop_lines}\n\n[output]\n{output}\n")


_2D_LOOPS = ("center=3.14159,3.14159 radius=1.5 n_pts=64 velocity={}",
             "center=2.0,4.0 radius=1.0 n_pts=64 velocity={}")


def _loops(*selectors):
    return [_2D_LOOPS[i % 2].format(s) for i, s in enumerate(selectors)]


PRESETS = {p.name: p for p in [
    Preset("mhd2d-32", "compressible ideal MHD in 2D, random smooth data, loops moving with u",
           "fast (< 1 min)",
           _ini("32, 32", "id = mhd\nseed = 11\namplitude = 0.1\nfield_amplitude = 0.1",
                "dt = 0.001\nt_end = 1.0\noutput_every = 10\ndealias = false", _loops("u", "u"))),
    Preset("mhd3d-16", "compressible ideal MHD in 3D on a 16^3 box",
           "moderate (minutes)",
           _ini("16, 16, 16", "id = mhd\nseed = 12\namplitude = 0.1\nfield_amplitude = 0.1\ncutoff = 2",
                "dt = 0.002\nt_end = 0.2\noutput_every = 10\ndealias = false",
                ["center=3.14159,3.14159,3.14159 radius=1.5 n_pts=64 velocity=u plane=0,1"])),
    Preset("ymmhd-su2-2d-32", "Yang-Mills MHD with an su(2) gauge field in 2D",
           "fast (< 1 min)",
           _ini("32, 32", "id = ymmhd\nalgebra = su2\nseed = 13\namplitude = 0.1\nfield_amplitude = 0.1",
                "dt = 0.001\nt_end = 0.5\noutput_every = 10\ndealias = false", _loops("u"))),
    Preset("hall2d-32", "Hall MHD with ion and electron fluids in 2D, loops moving with u and with v",
           "fast (< 1 min)",
           _ini("32, 32", "id = hall\nseed = 14\namplitude = 0.1\nfield_amplitude = 0.1\na_ion = 1.0\nR_hall = 0.5",
                "dt = 0.001\nt_end = 0.5\noutput_every = 10\ndealias = false", _loops("u", "v"))),
    Preset("superfluid2d-32", "two-fluid superfluid in 2D with irrotational superfluid velocity",
           "fast (< 1 min)",
           _ini("32, 32", "id = superfluid\nseed = 15\namplitude = 0.1\nirrotational_vs = true",
                "dt = 0.001\nt_end = 0.5\noutput_every = 10\ndealias = false", _loops("v_n"),
                closure="sigma = 0.5\nbeta = 0.0")),
    Preset("sf-ymmhd-2d-16", "superfluid Yang-Mills MHD with an so(3) gauge field on a 16^2 grid",
           "fast (< 1 min)",
           _ini("16, 16", "id = sf-ymmhd\nalgebra = so3\nseed = 16\namplitude = 0.1\nfield_amplitude = 0.1",
                "dt = 0.002\nt_end = 0.5\noutput_every = 10\ndealias = false", _loops("v_n"),
                closure="sigma = 0.5\nbeta = 0.0")),
    Preset("sf-hall-2d-32", "superfluid Hall MHD in 2D, loops moving with v_n and with v",
           "fast (< 1 min)",
           _ini("32, 32", "id = sf-hall\nseed = 17\namplitude = 0.1\nfield_amplitude = 0.1",
                "dt = 0.001\nt_end = 0.5\noutput_every = 10\ndealias = false", _loops("v_n", "v"),
                closure="sigma = 0.5\nbeta = 0.0")),
]}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError("preset", f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None
