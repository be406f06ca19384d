import numpy as np
import pytest

from eitcool import (
    CoolingParams,
    build_liouvillian,
    eit_resonance_delta,
    hamiltonian_full,
    hamiltonian_ld,
    jump_operators,
    phonon_occupation,
    steady_state,
)
from eitcool.sweep import BENCH_DEFAULTS


def bench_params(omega_g, omega_r, **overrides):
    """Benchmark-defaults parameter set at the resonance detuning."""
    kwargs = dict(BENCH_DEFAULTS)
    kwargs.update(overrides)
    delta = kwargs.pop("delta", None)
    if delta is None:
        delta = eit_resonance_delta(omega_g, omega_r, kwargs.get("nu", 1.0))
    return CoolingParams(omega_g=omega_g, omega_r=omega_r, delta=delta, **kwargs)


def solve_full(params, n_max, basis="gre", hamiltonian="ld", **hkw):
    if hamiltonian == "full":
        h = hamiltonian_full(params, n_max)
    else:
        h = hamiltonian_ld(params, n_max, basis=basis, **hkw)
    lv = build_liouvillian(h, jump_operators(params, n_max, basis=basis))
    ss = steady_state(lv)
    return ss, phonon_occupation(ss)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
