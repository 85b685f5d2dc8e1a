"""Bayesian calibration of linear shock Hugoniot models.

Thin python veneer over the compiled core: dataset ingestion, closed-form
normal-inverse-gamma posteriors, posterior sampling, Rankine-Hugoniot
propagation to pressure-volume bands, and the non-parametric bootstrap.
"""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
    from . import _core as _impl
except ImportError:  # development layout: _core on PYTHONPATH from the build tree
    from _core import *  # noqa: F401,F403
    import _core as _impl

__version__ = "0.1.0"
__all__ = [name for name in dir(_impl) if not name.startswith("_")]
