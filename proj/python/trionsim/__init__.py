"""Two-laser driven trion Lambda system: steady states, spectra, g2 and sweeps.

All rates and detunings are angular frequencies in rad/ns; a value quoted as
"2*pi x X GHz" is ``TWO_PI * X``.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401


def qd1(**overrides):
    """Parameters of the main quantum dot (rad/ns); keyword arguments override fields."""
    params = TrionParams(  # noqa: F405
        gamma_r=TWO_PI * 0.50,  # noqa: F405
        branching_b=0.01,
        gamma_p_relax=TWO_PI * 9.3,  # noqa: F405
        gamma_p_deph=TWO_PI * 8.8,  # noqa: F405
    )
    for name, value in overrides.items():
        setattr(params, name, value)
    return params
