"""Kernel backend selection.

Prefers the compiled extension when it imported cleanly, otherwise the numpy
fallback. Both expose the same ``eu_numeric_grid`` contract; results agree to
rounding noise, and each backend is individually deterministic. No
environment variables are consulted; tests and benchmarks that want a
specific backend import ``_kernels`` / ``_kernels_py`` directly.
"""

from __future__ import annotations

try:
    from . import _kernels as _impl

    HAS_COMPILED = True
except ImportError:
    from . import _kernels_py as _impl

    HAS_COMPILED = False


def backend_name() -> str:
    return "compiled" if HAS_COMPILED else "python"


def eu_numeric_grid(status_quo, discretion, xt, xc, shock_bound, alpha, nodes, final_band):
    return _impl.eu_numeric_grid(
        status_quo, discretion, xt, xc, shock_bound, alpha, nodes, final_band
    )
