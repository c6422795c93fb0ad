"""Backend dispatch for the hot numeric kernels.

The default backend is numba (`@njit` compiled loops). Set ``BVKIT_NUMBA=0``
in the environment, or call :func:`use_backend`, to run the pure-numpy twins
instead. ``benchmarks/bench_kernels.py`` compares both.
"""

from __future__ import annotations

import os
import warnings

from . import _kernels_numpy

_state: dict = {"name": None, "mod": None}


def _load(name: str):
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    if name == "numpy":
        return _kernels_numpy
    raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")


def use_backend(name: str) -> str:
    """Select the kernel backend ('numba' or 'numpy'); returns the active name."""
    if name == "numba":
        try:
            mod = _load("numba")
        except ImportError:
            warnings.warn("numba unavailable; falling back to numpy kernels")
            name, mod = "numpy", _kernels_numpy
    else:
        mod = _load(name)
    _state["name"] = name
    _state["mod"] = mod
    return name


def current_backend() -> str:
    if _state["name"] is None:
        want = "numpy" if os.environ.get("BVKIT_NUMBA", "1") == "0" else "numba"
        use_backend(want)
    return _state["name"]


def _mod():
    current_backend()
    return _state["mod"]


def trans_pow(bk, pv, q, a, b, h) -> float:
    return float(_mod().trans_pow(bk, pv, q, a, b, h))


def omega_pow_max(bk, pv, q, a, b) -> float:
    return float(_mod().omega_pow_max(bk, pv, q, a, b))


def ivar_dp(bk, pv, cuts, p, q):
    return _mod().ivar_dp(bk, pv, cuts, p, q)


def lambda_table_max(v, lam, starts, ends, npairs):
    val, idx = _mod().lambda_table_max(v, lam, starts, ends, npairs)
    return float(val), int(idx)
