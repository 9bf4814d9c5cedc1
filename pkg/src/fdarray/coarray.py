"""Sum co-array of a full-duplex layout and its contiguous virtual aperture.

The sum co-array is the multiset of pairwise Tx+Rx position sums; a long
run of consecutive integer sums acts like a contiguous virtual array for
active sensing, so its length tracks how many targets remain identifiable.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import FullDuplexLayout, generate_nested, solve_nested_params


@dataclass(frozen=True)
class SumCoarray:
    """Distinct pairwise Tx+Rx sums with per-sum pair counts.

    ``contiguous_len`` is the length of the longest run of consecutive
    integers among the sums; it is None for layouts that leave the
    integer grid (no grid semantics are invented for those).
    """

    sums: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]
    contiguous_len: int | None

    @property
    def n_sums(self) -> int:
        return len(self.sums)

    def as_dict(self) -> dict:
        return dict(zip(self.sums, self.multiplicities))


@dataclass(frozen=True)
class CoarrayScalingRow:
    n: int
    contiguous_len: int
    aperture: int
    m1: int
    m2: int
    delta3: int


@dataclass(frozen=True)
class CoarrayScalingTable:
    """contiguous_len per antenna count, with the fitted log-log growth rate."""

    rows: tuple[CoarrayScalingRow, ...]
    slope: float


def _longest_integer_run(sums: tuple[Fraction, ...]) -> int:
    best = cur = 1
    for a, b in zip(sums, sums[1:]):
        cur = cur + 1 if b - a == 1 else 1
        best = max(best, cur)
    return best


def sum_coarray(layout: FullDuplexLayout) -> SumCoarray:
    """Exact sum co-array of a layout.

    Enumerates all n_tx * n_rx position pairs exactly; contiguity
    statistics are computed only when every sum is an integer.
    """
    counts = Counter(t + r for t in layout.tx.positions for r in layout.rx.positions)
    sums = tuple(sorted(counts))
    multiplicities = tuple(counts[s] for s in sums)
    if all(s.denominator == 1 for s in sums):
        contiguous = _longest_integer_run(sums)
    else:
        contiguous = None
    return SumCoarray(sums=sums, multiplicities=multiplicities, contiguous_len=contiguous)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(ys) against log(xs)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 2:
        raise ValueError("need at least two points for a slope")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log-log fit needs positive values")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def coarray_scaling(n_values, target_aperture=None) -> CoarrayScalingTable:
    """Contiguous co-array length of nested layouts across antenna counts.

    For each N the nested family is built with the balanced split
    m1 = ceil(N/2), m2 = N - m1 and delta3 solved from the target
    aperture (default the quadratic rule 0.26*N**2, under which the
    contiguous length grows roughly as N**2).

    Parameters
    ----------
    n_values : iterable of int
        Antenna counts per side, each >= 2.
    target_aperture : callable, optional
        Maps N to the desired joint aperture.

    Returns
    -------
    CoarrayScalingTable
    """
    if target_aperture is None:
        target_aperture = lambda n: 0.26 * n * n
    rows = []
    for n in n_values:
        m1, m2, delta3, _ = solve_nested_params(n, target_aperture(n))
        layout = generate_nested(m1, m2, delta3)
        coarray = sum_coarray(layout)
        rows.append(
            CoarrayScalingRow(
                n=int(n),
                contiguous_len=int(coarray.contiguous_len),
                aperture=int(layout.joint_aperture),
                m1=m1,
                m2=m2,
                delta3=delta3,
            )
        )
    if not rows:
        raise ValueError("n_values must be nonempty")
    slope = loglog_slope([r.n for r in rows], [r.contiguous_len for r in rows])
    return CoarrayScalingTable(rows=tuple(rows), slope=slope)


def _fmt_sum(value: Fraction) -> str:
    return str(int(value)) if value.denominator == 1 else repr(float(value))


def write_coarray_csv(coarray: SumCoarray, path) -> None:
    """Write (sum, multiplicity) rows in ascending sum order."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("sum,multiplicity\n")
        for s, m in zip(coarray.sums, coarray.multiplicities):
            fh.write(f"{_fmt_sum(s)},{m}\n")


def write_scaling_csv(table: CoarrayScalingTable, path) -> None:
    """Write (N, contiguous_len, L) rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("N,contiguous_len,L\n")
        for row in table.rows:
            fh.write(f"{row.n},{row.contiguous_len},{row.aperture}\n")
