"""Figure-level studies: family comparison bundles and spectral-norm sweeps.

Two aperture growth laws are supported for the sweeps: linear (L = c*N,
default c=2) and quadratic (L = c*N**2, default c=0.26). Family parameters
are solved per N by inverting each family's joint-aperture identity; rows
where the rule is infeasible (the solved parameter had to be clamped to
its minimum) are flagged rather than dropped.
"""

import os
from dataclasses import dataclass

from .beampattern import BeampatternCurve, beampattern, write_curve_csv
from .geometry import (
    FullDuplexLayout,
    generate_interleaved,
    generate_nested,
    generate_partitioned,
    save_layout,
    solve_interleaved_spacing,
    solve_nested_params,
    solve_partitioned_gap,
)
from .si_model import si_matrix
from .spectral import SingularSpectrum, spectral_norm, svd_spectrum, write_spectrum_csv

FAMILIES = ("partitioned", "interleaved", "nested")

RULE_LINEAR = "linear"
RULE_QUADRATIC = "quadratic"
DEFAULT_COEFF = {RULE_LINEAR: 2.0, RULE_QUADRATIC: 0.26}


@dataclass(frozen=True)
class ApertureRule:
    """Target joint aperture as a function of the per-side antenna count."""

    kind: str
    coeff: float | None = None
    l_max: float | None = None

    def __post_init__(self):
        if self.kind not in (RULE_LINEAR, RULE_QUADRATIC):
            raise ValueError(f"unknown aperture rule {self.kind!r}")
        if self.coeff is None:
            object.__setattr__(self, "coeff", DEFAULT_COEFF[self.kind])
        if self.coeff <= 0:
            raise ValueError("aperture coefficient must be > 0")

    def target(self, n: int) -> float:
        base = self.coeff * (n if self.kind == RULE_LINEAR else n * n)
        if self.l_max is not None:
            base = min(base, self.l_max)
        return float(base)


@dataclass(frozen=True)
class SweepRow:
    n: int
    family: str
    l_target: float
    l_actual: int
    spectral_norm: float
    params: tuple[tuple[str, int], ...]
    feasible: bool


@dataclass(frozen=True)
class SweepResult:
    family: str
    rule: ApertureRule
    rho: float
    rows: tuple[SweepRow, ...]


def build_family_layout(family: str, n: int, l_target: float):
    """Layout of a family sized to a target aperture.

    Returns
    -------
    (layout, params, feasible)
        ``params`` is a tuple of (name, value) pairs; ``feasible`` is
        False when the solved parameter was clamped to its minimum and
        the target aperture is therefore not met.
    """
    if family == "partitioned":
        delta1, clamped = solve_partitioned_gap(n, l_target)
        return generate_partitioned(n, delta1), (("delta1", delta1),), not clamped
    if family == "interleaved":
        delta2, clamped = solve_interleaved_spacing(n, l_target)
        return generate_interleaved(n, delta2), (("delta2", delta2),), not clamped
    if family == "nested":
        m1, m2, delta3, clamped = solve_nested_params(n, l_target)
        layout = generate_nested(m1, m2, delta3)
        return layout, (("m1", m1), ("m2", m2), ("delta3", delta3)), not clamped
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def scaling_sweep(family: str, n_values, rule: ApertureRule, rho: float = 1.0) -> SweepResult:
    """Spectral norm of the SI channel across antenna counts under a rule.

    Parameters
    ----------
    family : str
        One of 'partitioned', 'interleaved', 'nested'.
    n_values : iterable of int
        Antennas per side; rows come out sorted by N.
    rule : ApertureRule
    rho : float
        Held constant across the sweep, so curves compare in shape.

    Returns
    -------
    SweepResult
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    ns = sorted(int(n) for n in n_values)
    if not ns:
        raise ValueError("n_values must be nonempty")
    if len(set(ns)) != len(ns):
        raise ValueError("n_values must be distinct")
    rows = []
    for n in ns:
        l_target = rule.target(n)
        layout, params, feasible = build_family_layout(family, n, l_target)
        norm = spectral_norm(si_matrix(layout, rho))
        rows.append(
            SweepRow(
                n=n,
                family=family,
                l_target=l_target,
                l_actual=int(layout.joint_aperture),
                spectral_norm=norm,
                params=params,
                feasible=feasible,
            )
        )
    return SweepResult(family=family, rule=rule, rho=float(rho), rows=tuple(rows))


@dataclass(frozen=True)
class Fig2Study:
    """Side-by-side comparison of the three families at matched aperture."""

    rho: float
    layouts: dict[str, FullDuplexLayout]
    beampatterns: dict[str, BeampatternCurve]
    spectra: dict[str, SingularSpectrum]


def fig2_study(rho: float = 0.2, grid_size: int = 4096) -> Fig2Study:
    """Reference 11-antenna-per-side comparison study.

    Builds partitioned(11, 23), interleaved(11, 2) and nested(6, 5, 3),
    which put all three families at joint apertures of 44, 42 and 43
    half-wavelengths, then samples each family's Rx beampattern at
    broadside and the singular spectrum of its SI channel.
    """
    layouts = {
        "partitioned": generate_partitioned(11, 23),
        "interleaved": generate_interleaved(11, 2),
        "nested": generate_nested(6, 5, 3),
    }
    patterns = {
        fam: beampattern(layout.rx, theta_s=0.0, grid_size=grid_size)
        for fam, layout in layouts.items()
    }
    spectra = {
        fam: svd_spectrum(si_matrix(layout, rho)) for fam, layout in layouts.items()
    }
    return Fig2Study(rho=float(rho), layouts=layouts, beampatterns=patterns, spectra=spectra)


def _params_str(params) -> str:
    return ";".join(f"{name}={value}" for name, value in params)


def write_sweep_csv(result: SweepResult, path) -> None:
    """Write (N, L, family, spectral_norm, params, feasible) rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("N,L,family,spectral_norm,params,feasible\n")
        for row in result.rows:
            fh.write(
                f"{row.n},{row.l_actual},{row.family},{row.spectral_norm!r},"
                f"{_params_str(row.params)},{int(row.feasible)}\n"
            )


def write_fig2_bundle(study: Fig2Study, directory) -> list[str]:
    """Write per-family geometry JSON, beampattern CSV and spectrum CSV.

    Returns the list of file paths written.
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    for fam in FAMILIES:
        geo_path = os.path.join(directory, f"geometry_{fam}.json")
        save_layout(study.layouts[fam], geo_path)
        curve_path = os.path.join(directory, f"beampattern_{fam}.csv")
        write_curve_csv(study.beampatterns[fam], curve_path)
        spec_path = os.path.join(directory, f"spectrum_{fam}.csv")
        write_spectrum_csv(study.spectra[fam], spec_path)
        written += [geo_path, curve_path, spec_path]
    return written
