"""Collinear Tx/Rx antenna array geometries on the half-wavelength grid.

Positions are stored as exact rationals (:class:`fractions.Fraction`) so that
integer-grid layouts yield exact pairwise distances and exact sign patterns
downstream; floating point enters only when the channel model is evaluated.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

GEOMETRY_UNITS = "half-wavelength"


class ColocatedAntennaError(ValueError):
    """A Tx and an Rx antenna share a position, so the 1/distance channel term diverges."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an antenna position")


@dataclass(frozen=True)
class ArrayGeometry:
    """Finite set of antenna positions on a line, in units of half a wavelength.

    Positions are normalized to a sorted tuple of distinct ``Fraction`` values.
    Instances are immutable and safe to share between threads.

    Parameters
    ----------
    positions : iterable of int, float, str or Fraction
        Antenna positions. Duplicates raise ``ValueError``.
    """

    positions: tuple[Fraction, ...]

    def __post_init__(self):
        pos = tuple(sorted(_as_fraction(p) for p in self.positions))
        if not pos:
            raise ValueError("geometry needs at least one antenna position")
        for a, b in zip(pos, pos[1:]):
            if a == b:
                raise ValueError(f"duplicate antenna position {a}")
        object.__setattr__(self, "positions", pos)

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    @property
    def aperture(self) -> Fraction:
        """max(positions) - min(positions); zero for a single antenna."""
        return self.positions[-1] - self.positions[0]

    @property
    def is_integer(self) -> bool:
        """True when every position sits on the integer half-wavelength grid."""
        return all(p.denominator == 1 for p in self.positions)

    def scaled(self, factor) -> "ArrayGeometry":
        """Elementwise scaling ``c * X = {c x}``."""
        c = _as_fraction(factor)
        if c == 0:
            raise ValueError("scale factor must be nonzero")
        return ArrayGeometry(tuple(c * p for p in self.positions))

    def shifted(self, offset) -> "ArrayGeometry":
        """Elementwise translation ``X + c = {x + c}``."""
        c = _as_fraction(offset)
        return ArrayGeometry(tuple(p + c for p in self.positions))

    def to_array(self) -> np.ndarray:
        """Positions as a float64 vector (rounding non-dyadic rationals)."""
        return np.array([float(p) for p in self.positions], dtype=float)


@dataclass(frozen=True)
class FullDuplexLayout:
    """A transmit geometry paired with a receive geometry.

    A shared Tx/Rx position is rejected at construction: it would put a
    zero in the pairwise distance matrix and make the spherical-wave
    channel model singular.

    Parameters
    ----------
    tx, rx : ArrayGeometry or iterable of positions
    label : str
        Free-form tag carried through file round trips.
    """

    tx: ArrayGeometry
    rx: ArrayGeometry
    label: str = ""

    def __post_init__(self):
        for name in ("tx", "rx"):
            g = getattr(self, name)
            if not isinstance(g, ArrayGeometry):
                object.__setattr__(self, name, ArrayGeometry(tuple(g)))
        shared = set(self.tx.positions) & set(self.rx.positions)
        if shared:
            at = ", ".join(str(p) for p in sorted(shared))
            raise ColocatedAntennaError(f"colocated Tx/Rx antenna at position(s) {at}")

    @property
    def n_tx(self) -> int:
        return len(self.tx)

    @property
    def n_rx(self) -> int:
        return len(self.rx)

    @property
    def joint_aperture(self) -> Fraction:
        """Extent of the union of Tx and Rx positions."""
        lo = min(self.tx.positions[0], self.rx.positions[0])
        hi = max(self.tx.positions[-1], self.rx.positions[-1])
        return hi - lo

    @property
    def is_integer(self) -> bool:
        return self.tx.is_integer and self.rx.is_integer


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of layout validation: hard errors plus informational notes."""

    errors: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def aperture(g: ArrayGeometry) -> Fraction:
    """Aperture of a single geometry, in half-wavelength units."""
    return g.aperture


def joint_aperture(layout: FullDuplexLayout) -> Fraction:
    """Joint Tx-Rx aperture of a layout, in half-wavelength units."""
    return layout.joint_aperture


def generate_partitioned(n: int, delta1: int = 0) -> FullDuplexLayout:
    """Two side-by-side uniform blocks: Rx at 0..n-1, Tx after a gap of delta1.

    Parameters
    ----------
    n : int
        Antennas per side, >= 1.
    delta1 : int
        Nonnegative gap between the Rx block and the Tx block.

    Returns
    -------
    FullDuplexLayout
        rx = {0, ..., n-1}, tx = rx + n + delta1; joint aperture 2n-1+delta1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if delta1 < 0:
        raise ValueError(f"delta1 must be >= 0, got {delta1}")
    rx = ArrayGeometry(tuple(Fraction(i) for i in range(n)))
    tx = rx.shifted(n + delta1)
    return FullDuplexLayout(tx=tx, rx=rx, label=f"partitioned(n={n},delta1={delta1})")


def generate_interleaved(n: int, delta2: int = 1) -> FullDuplexLayout:
    """Alternating Tx/Rx antennas with uniform spacing delta2.

    Parameters
    ----------
    n : int
        Antennas per side, >= 1.
    delta2 : int
        Positive spacing between neighbouring antennas; delta2 = 0 would
        colocate every Tx/Rx pair.

    Returns
    -------
    FullDuplexLayout
        rx = 2*delta2*{0, ..., n-1}, tx = rx + delta2; joint aperture
        delta2*(2n-1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if delta2 < 1:
        raise ValueError(f"delta2 must be >= 1, got {delta2}")
    rx = ArrayGeometry(tuple(Fraction(2 * delta2 * i) for i in range(n)))
    tx = rx.shifted(delta2)
    return FullDuplexLayout(tx=tx, rx=rx, label=f"interleaved(n={n},delta2={delta2})")


def generate_nested(m1: int, m2: int, delta3: int = 1) -> FullDuplexLayout:
    """Dense block plus sparse block per side, Tx mirroring Rx.

    Rx is a dense m1-element block {0..m1-1} followed by a sparse
    m2-element block with spacing 2*delta3; Tx is the mirror image of Rx
    shifted by m1-1+delta3. Each side has N = m1 + m2 antennas.

    Parameters
    ----------
    m1, m2 : int
        Dense and sparse block sizes, both >= 1.
    delta3 : int
        Half the sparse-block spacing, >= 1.
    """
    if m1 < 1:
        raise ValueError(f"m1 must be >= 1, got {m1}")
    if m2 < 1:
        raise ValueError(f"m2 must be >= 1, got {m2}")
    if delta3 < 1:
        raise ValueError(f"delta3 must be >= 1, got {delta3}")
    dense = [Fraction(i) for i in range(m1)]
    sparse = [Fraction(2 * delta3 * (k + 1) + m1 - 1) for k in range(m2)]
    rx = ArrayGeometry(tuple(dense + sparse))
    top = rx.positions[-1]
    tx = ArrayGeometry(tuple(top - p + m1 - 1 + delta3 for p in rx.positions))
    return FullDuplexLayout(
        tx=tx, rx=rx, label=f"nested(m1={m1},m2={m2},delta3={delta3})"
    )


def validate(tx, rx=None) -> ValidationReport:
    """Check a layout (or a raw tx/rx position pair) for structural problems.

    Colocated Tx/Rx positions are reported as errors since they make the
    channel model singular; duplicate positions within one side and empty
    sides are also errors (they cannot form geometries); everything else
    is informational.

    Parameters
    ----------
    tx : FullDuplexLayout, ArrayGeometry or iterable of positions
        Pass a layout alone, or a tx position collection together with ``rx``.
    rx : ArrayGeometry or iterable of positions, optional

    Returns
    -------
    ValidationReport
    """
    if rx is None:
        layout = tx
        tx_pos = list(layout.tx.positions)
        rx_pos = list(layout.rx.positions)
    else:
        tx_pos = [_as_fraction(p) for p in (tx.positions if isinstance(tx, ArrayGeometry) else tx)]
        rx_pos = [_as_fraction(p) for p in (rx.positions if isinstance(rx, ArrayGeometry) else rx)]

    errors = []
    notes = []
    for name, pos in (("tx", tx_pos), ("rx", rx_pos)):
        if not pos:
            errors.append(f"{name} side has no antennas")
            continue
        seen, dups = set(), set()
        for p in pos:
            if p in seen:
                dups.add(p)
            seen.add(p)
        if dups:
            errors.append(
                f"duplicate {name} position(s): {', '.join(map(str, sorted(dups)))}"
            )
        if max(pos) - min(pos) < 0:
            notes.append(f"{name} aperture is negative")

    shared = sorted(set(tx_pos) & set(rx_pos))
    if shared:
        errors.append(
            "colocated Tx/Rx pair at " + ", ".join(str(p) for p in shared)
        )
    if not errors:
        notes.append(
            f"{len(tx_pos)} tx / {len(rx_pos)} rx antennas, joint aperture "
            f"{max(max(tx_pos), max(rx_pos)) - min(min(tx_pos), min(rx_pos))}"
        )
    return ValidationReport(errors=tuple(errors), notes=tuple(notes))


def solve_partitioned_gap(n: int, l_target: float) -> tuple[int, bool]:
    """Gap delta1 whose joint aperture best matches l_target.

    Returns (delta1, clamped); clamped is True when the target is below the
    minimum aperture 2n-1 and delta1 was clipped to 0.
    """
    raw = round(l_target) - (2 * n - 1)
    return max(0, raw), raw < 0


def solve_interleaved_spacing(n: int, l_target: float) -> tuple[int, bool]:
    """Spacing delta2 whose joint aperture delta2*(2n-1) best matches l_target."""
    raw = round(l_target / (2 * n - 1))
    return max(1, raw), raw < 1


def solve_nested_params(n: int, l_target: float) -> tuple[int, int, int, bool]:
    """Nested (m1, m2, delta3) for n antennas per side and a target aperture.

    Uses the balanced split m1 = ceil(n/2), m2 = n - m1 and inverts the
    joint-aperture identity 2(m1-1) + delta3*(2 m2 + 1) = L for delta3.
    Returns (m1, m2, delta3, clamped).
    """
    if n < 2:
        raise ValueError("nested layouts need n >= 2 antennas per side")
    m1 = math.ceil(n / 2)
    m2 = n - m1
    raw = math.floor((l_target - 2 * (m1 - 1)) / (2 * m2 + 1))
    return m1, m2, max(1, raw), raw < 1


def layout_to_dict(layout: FullDuplexLayout) -> dict:
    """JSON-ready mapping: integer positions stay integers, others decay to float."""

    def num(p: Fraction):
        return int(p) if p.denominator == 1 else float(p)

    return {
        "label": layout.label,
        "tx": [num(p) for p in layout.tx.positions],
        "rx": [num(p) for p in layout.rx.positions],
        "units": GEOMETRY_UNITS,
    }


def layout_from_dict(data: dict) -> FullDuplexLayout:
    """Build and re-validate a layout from its mapping form."""
    if not isinstance(data, dict):
        raise ValueError("geometry document must be a JSON object")
    for key in ("tx", "rx"):
        if key not in data:
            raise ValueError(f"geometry document is missing the '{key}' field")
    units = data.get("units", GEOMETRY_UNITS)
    if units != GEOMETRY_UNITS:
        raise ValueError(f"unsupported units {units!r}; expected {GEOMETRY_UNITS!r}")
    report = validate(data["tx"], data["rx"])
    if not report.ok:
        msg = "; ".join(report.errors)
        if any("colocated" in e for e in report.errors):
            raise ColocatedAntennaError(msg)
        raise ValueError(msg)
    return FullDuplexLayout(
        tx=ArrayGeometry(tuple(_as_fraction(p) for p in data["tx"])),
        rx=ArrayGeometry(tuple(_as_fraction(p) for p in data["rx"])),
        label=str(data.get("label", "")),
    )


def save_layout(layout: FullDuplexLayout, path) -> None:
    """Write the layout JSON document (see `layout_to_dict`)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(layout_to_dict(layout), fh, indent=2)
        fh.write("\n")


def load_layout(path) -> FullDuplexLayout:
    """Load and re-validate a layout JSON document.

    Decimal position values are parsed as exact decimal fractions, so
    ``0.5`` loads as the rational 1/2 rather than a float.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh, parse_float=Fraction, parse_int=Fraction)
    return layout_from_dict(data)


def ascii_sketch(layout: FullDuplexLayout, max_width: int = 160) -> str:
    """One-line picture of an integer-grid layout ('R'/'T' marks, '.' gaps)."""
    if not layout.is_integer or layout.joint_aperture > max_width:
        tx = ",".join(str(p) for p in layout.tx.positions)
        rx = ",".join(str(p) for p in layout.rx.positions)
        return f"rx=[{rx}] tx=[{tx}]"
    lo = min(layout.tx.positions[0], layout.rx.positions[0])
    cells = ["."] * (int(layout.joint_aperture) + 1)
    for p in layout.rx.positions:
        cells[int(p - lo)] = "R"
    for p in layout.tx.positions:
        cells[int(p - lo)] = "T"
    return "".join(cells)
