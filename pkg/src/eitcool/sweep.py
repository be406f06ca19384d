"""Parameter sweeps over the cooling estimators, with CSV/JSON/SVG output.

A sweep varies one of {omega_g, eta_g, gamma_g} over a grid while a lock
constraint keeps the rest of the configuration consistent (fixed Rabi ratio,
fixed total linewidth, or equal Lamb-Dicke parameters).  The detuning is
recomputed from the resonance condition at every grid point unless an
explicit override is given.  Estimator failures are recorded per row as
typed flags, never raised past the runner.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace

from . import analytic, liouvillian, physics, subspace
from .errors import (
    ConfigurationError,
    DegenerateSteadyStateError,
    EitCoolError,
    FormulaDivergenceError,
    NumericalFailureError,
)

ESTIMATORS = ("numeric_full", "numeric_projected", "eq1", "eq15", "eq16", "eq17")
VARY_AXES = ("omega_g", "eta_g", "gamma_g")
LOCKS = ("omega_ratio", "gamma_total", "eta_equal")
LOCK_FOR_AXIS = {"omega_g": "omega_ratio", "eta_g": "eta_equal", "gamma_g": "gamma_total"}

#: Column order of the emitted CSV.  The optional eq16/eq17 columns are
#: inserted before `flags` when those estimators are requested.
CSV_BASE_HEADER = (
    "vary",
    "value",
    "nbar_numeric",
    "nbar_projected",
    "nbar_eq1",
    "nbar_eq15",
    "eq15_term1",
    "eq15_term2",
    "flags",
)

_CSV_COLUMN = {
    "numeric_full": "nbar_numeric",
    "numeric_projected": "nbar_projected",
    "eq1": "nbar_eq1",
    "eq15": "nbar_eq15",
    "eq16": "nbar_eq16",
    "eq17": "nbar_eq17",
}

DEFAULT_N_MAX = 12

#: Reference configuration shared by the benchmark sweeps: decay branching
#: 1:2, both Lamb-Dicke parameters 0.15, counter-propagating lasers at 45
#: degrees to the trap axis.
BENCH_DEFAULTS = dict(
    gamma_g=20.0 / 3.0,
    gamma_r=40.0 / 3.0,
    eta_g=0.15,
    eta_r=0.15,
    phi_g=math.pi / 4.0,
    phi_r=3.0 * math.pi / 4.0,
)


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep deterministically."""

    vary: str
    grid: tuple[float, ...]
    lock: str
    base: physics.CoolingParams
    estimators: tuple[str, ...]
    n_max: int = DEFAULT_N_MAX
    hamiltonian: str = "ld"
    delta_override: float | None = None
    output: str | None = None
    fmt: str = "csv"

    def __post_init__(self) -> None:
        if self.vary not in VARY_AXES:
            raise ConfigurationError(f"unknown sweep axis {self.vary!r}")
        if self.lock not in LOCKS:
            raise ConfigurationError(f"unknown lock mode {self.lock!r}")
        if LOCK_FOR_AXIS[self.vary] != self.lock:
            raise ConfigurationError(
                f"lock {self.lock!r} is inconsistent with sweep axis {self.vary!r}"
            )
        if not self.grid:
            raise ConfigurationError("sweep grid must be non-empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigurationError("sweep grid must be strictly increasing")
        if not self.estimators:
            raise ConfigurationError("at least one estimator must be requested")
        for est in self.estimators:
            if est not in ESTIMATORS:
                raise ConfigurationError(f"unknown estimator {est!r}")
        if self.hamiltonian not in ("ld", "full"):
            raise ConfigurationError(
                f"hamiltonian must be 'ld' or 'full', got {self.hamiltonian!r}"
            )
        if self.fmt not in ("csv", "json", "svg"):
            raise ConfigurationError(f"unknown output format {self.fmt!r}")
        if self.vary == "gamma_g":
            total = self.base.gamma_g + self.base.gamma_r
            if self.grid[-1] >= total:
                raise ConfigurationError(
                    f"gamma_g grid reaches the locked total linewidth {total}"
                )


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point: estimator values plus typed failure flags."""

    vary: str
    value: float
    nbar: dict[str, float] = field(default_factory=dict)
    eq15_term1: float | None = None
    eq15_term2: float | None = None
    flags: tuple[str, ...] = ()
    residual: float | None = None
    nullspace_dim: int | None = None


def params_at(spec: SweepSpec, value: float) -> physics.CoolingParams:
    """Base parameters moved to one grid point under the lock constraint."""
    base = spec.base
    if spec.vary == "omega_g":
        if base.omega_r <= 0:
            raise ConfigurationError("omega_ratio lock requires omega_r > 0")
        ratio = base.omega_g / base.omega_r
        if ratio <= 0:
            raise ConfigurationError("omega_ratio lock requires omega_g > 0")
        params = replace(base, omega_g=value, omega_r=value / ratio)
    elif spec.vary == "eta_g":
        params = replace(base, eta_g=value, eta_r=value)
    else:
        total = base.gamma_g + base.gamma_r
        params = replace(base, gamma_g=value, gamma_r=total - value)
    delta = (
        spec.delta_override
        if spec.delta_override is not None
        else physics.eit_resonance_delta(params.omega_g, params.omega_r, params.nu)
    )
    return replace(params, delta=delta)


def _flag(est: str, exc: EitCoolError) -> str:
    reason = {
        DegenerateSteadyStateError: "degenerate-steady-state",
        FormulaDivergenceError: "formula-divergence",
        NumericalFailureError: "numerical-failure",
        ConfigurationError: "invalid-config",
    }.get(type(exc), "error")
    return f"{est}:{reason}"


def run_point(
    params: physics.CoolingParams,
    estimators: tuple[str, ...],
    n_max: int = DEFAULT_N_MAX,
    hamiltonian: str = "ld",
    delta_override: float | None = None,
    vary: str = "point",
    value: float = 0.0,
) -> SweepRow:
    """Evaluate the requested estimators at a single parameter point.

    The detuning is recomputed from the resonance condition unless an
    explicit override is supplied; per-estimator failures become row flags.
    """
    if not estimators:
        raise ConfigurationError("at least one estimator must be requested")
    delta = (
        delta_override
        if delta_override is not None
        else physics.eit_resonance_delta(params.omega_g, params.omega_r, params.nu)
    )
    params = replace(params, delta=delta)
    gamma = params.gamma_total
    nbar: dict[str, float] = {}
    flags: list[str] = []
    term1 = term2 = None
    residual = None
    nullspace_dim = None

    try:
        derived = physics.derive_eit(params)
        derive_failure: EitCoolError | None = None
    except EitCoolError as exc:
        derived = None
        derive_failure = exc
    for est in estimators:
        try:
            if est == "numeric_full":
                if hamiltonian == "full":
                    h = physics.hamiltonian_full(params, n_max)
                else:
                    h = physics.hamiltonian_ld(params, n_max, basis="gre")
                lv = liouvillian.build_liouvillian(
                    h, physics.jump_operators(params, n_max, basis="gre")
                )
                ss = liouvillian.steady_state(lv)
                nbar[est] = liouvillian.phonon_occupation(ss)
                residual = ss.residual
                nullspace_dim = ss.nullspace_dim
            elif est == "numeric_projected":
                if derived is None:
                    raise derive_failure
                sys7 = subspace.build_projected(derived, params.nu, params.delta)
                nbar[est] = subspace.nbar_projected(subspace.solve_stationarity(sys7))
            elif est == "eq1":
                nbar[est] = analytic.nbar_zeroth(gamma, params.delta)
            elif est == "eq15":
                if derived is None:
                    raise derive_failure
                term1, term2 = analytic.nbar_second_terms(derived, gamma, params.delta)
                nbar[est] = term1 + term2
            elif est == "eq16":
                if derived is None:
                    raise derive_failure
                nbar[est] = analytic.nbar_weak_g(params, derived)
            elif est == "eq17":
                if derived is None:
                    raise derive_failure
                nbar[est] = analytic.nbar_equal(gamma, params.delta, derived.eta)
            else:
                raise ConfigurationError(f"unknown estimator {est!r}")
        except EitCoolError as exc:
            flags.append(_flag(est, exc))
    return SweepRow(
        vary=vary,
        value=value,
        nbar=nbar,
        eq15_term1=term1,
        eq15_term2=term2,
        flags=tuple(flags),
        residual=residual,
        nullspace_dim=nullspace_dim,
    )


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every grid point in order and write the output file if asked."""
    rows = [
        run_point(
            params_at(spec, value),
            spec.estimators,
            n_max=spec.n_max,
            hamiltonian=spec.hamiltonian,
            delta_override=spec.delta_override,
            vary=spec.vary,
            value=value,
        )
        for value in spec.grid
    ]
    if spec.output is not None:
        write_output(rows, spec.estimators, spec.output, spec.fmt)
    return rows


# ----------------------------------------------------------------- figure panels

_PANEL_GRIDS = {
    "omega_g_ratio": tuple(2.0 + i for i in range(9)),          # 2 .. 10
    "omega_g_equal": tuple(10.0 + 1.25 * i for i in range(9)),  # 10 .. 20, mid 15
    "eta_g": tuple(0.05 + 0.025 * i for i in range(9)),         # 0.05 .. 0.25
    "gamma_g": (0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 15.0, 19.0),
}

PANELS = {
    "a": ("omega_g", "omega_g_ratio", 4.0, 20.0),
    "b": ("omega_g", "omega_g_equal", 15.0, 15.0),
    "c": ("eta_g", "eta_g", 4.0, 20.0),
    "d": ("eta_g", "eta_g", 15.0, 15.0),
    "e": ("gamma_g", "gamma_g", 4.0, 20.0),
    "f": ("gamma_g", "gamma_g", 15.0, 15.0),
}


def builtin_figure3(
    panel: str,
    n_max: int = DEFAULT_N_MAX,
    estimators: tuple[str, ...] = ("numeric_full", "eq1", "eq15"),
    hamiltonian: str = "ld",
    output: str | None = None,
    fmt: str = "csv",
) -> SweepSpec:
    """Benchmark sweep configuration for one of the six standard panels.

    Panels a/c/e run at Rabi ratio 1:5 (weak-drive regime), b/d/f at equal
    Rabi frequencies; e/f vary the branching at fixed total linewidth 20.
    """
    try:
        vary, grid_key, omega_g, omega_r = PANELS[panel]
    except KeyError:
        raise ConfigurationError(
            f"unknown panel {panel!r}; expected one of a..f"
        ) from None
    base = physics.CoolingParams(
        omega_g=omega_g,
        omega_r=omega_r,
        delta=physics.eit_resonance_delta(omega_g, omega_r),
        **BENCH_DEFAULTS,
    )
    return SweepSpec(
        vary=vary,
        grid=_PANEL_GRIDS[grid_key],
        lock=LOCK_FOR_AXIS[vary],
        base=base,
        estimators=tuple(estimators),
        n_max=n_max,
        hamiltonian=hamiltonian,
        output=output,
        fmt=fmt,
    )


# ------------------------------------------------------------------- output files

def _fmt(x: float | None) -> str:
    return "" if x is None else format(x, ".17g")


def csv_header(estimators: tuple[str, ...]) -> list[str]:
    header = list(CSV_BASE_HEADER)
    extra = [_CSV_COLUMN[e] for e in ("eq16", "eq17") if e in estimators]
    return header[:-1] + extra + [header[-1]]


def rows_to_csv(rows: list[SweepRow], estimators: tuple[str, ...]) -> list[list[str]]:
    out = [csv_header(estimators)]
    extra = [e for e in ("eq16", "eq17") if e in estimators]
    for row in rows:
        cells = [
            row.vary,
            _fmt(row.value),
            _fmt(row.nbar.get("numeric_full")),
            _fmt(row.nbar.get("numeric_projected")),
            _fmt(row.nbar.get("eq1")),
            _fmt(row.nbar.get("eq15")),
            _fmt(row.eq15_term1),
            _fmt(row.eq15_term2),
        ]
        cells += [_fmt(row.nbar.get(e)) for e in extra]
        cells.append(";".join(row.flags))
        out.append(cells)
    return out


def write_csv(rows: list[SweepRow], estimators: tuple[str, ...], path: str) -> None:
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows_to_csv(rows, estimators))


def read_csv(path: str) -> list[SweepRow]:
    """Parse a sweep CSV back into rows (numeric columns only)."""
    with open(path, newline="") as fh:
        table = list(csv.reader(fh))
    header, body = table[0], table[1:]
    col = {name: i for i, name in enumerate(header)}
    inverse = {v: k for k, v in _CSV_COLUMN.items()}
    rows = []
    for cells in body:
        nbar = {
            inverse[name]: float(cells[i])
            for name, i in col.items()
            if name in inverse and cells[i] != ""
        }
        rows.append(
            SweepRow(
                vary=cells[col["vary"]],
                value=float(cells[col["value"]]),
                nbar=nbar,
                eq15_term1=float(cells[col["eq15_term1"]])
                if cells[col["eq15_term1"]]
                else None,
                eq15_term2=float(cells[col["eq15_term2"]])
                if cells[col["eq15_term2"]]
                else None,
                flags=tuple(
                    f for f in cells[col["flags"]].split(";") if f
                ),
            )
        )
    return rows


def rows_to_json(rows: list[SweepRow], estimators: tuple[str, ...]) -> str:
    payload = {
        "estimators": list(estimators),
        "rows": [
            {
                "vary": row.vary,
                "value": row.value,
                "nbar": row.nbar,
                "eq15_term1": row.eq15_term1,
                "eq15_term2": row.eq15_term2,
                "flags": list(row.flags),
                "residual": row.residual,
                "nullspace_dim": row.nullspace_dim,
            }
            for row in rows
        ],
    }
    return json.dumps(payload, indent=2)


def write_output(
    rows: list[SweepRow], estimators: tuple[str, ...], path: str, fmt: str
) -> None:
    try:
        if fmt == "csv":
            write_csv(rows, estimators, path)
        elif fmt == "json":
            with open(path, "w") as fh:
                fh.write(rows_to_json(rows, estimators) + "\n")
        elif fmt == "svg":
            from .svgplot import write_svg

            write_svg(rows, estimators, path)
        else:
            raise ConfigurationError(f"unknown output format {fmt!r}")
    except OSError as exc:
        raise ConfigurationError(f"cannot write output {path!r}: {exc}") from exc
