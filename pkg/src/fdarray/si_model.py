"""Spherical-wave self-interference channel synthesis and structure checks.

The channel entry for Rx antenna n and Tx antenna m at distance d (in
half-wavelength units) is ``rho * exp(j*pi*d) / d``. On the integer grid the
phase factor collapses to an exact sign (-1)**d, which is computed
symbolically so that integer-grid channels are exactly real with exact signs.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import ColocatedAntennaError, FullDuplexLayout

SIGN_ALTERNATING = "alternating"
SIGN_UNIFORM = "uniform"
SIGN_MIXED = "mixed"
SIGN_COMPLEX = "complex"


@dataclass(frozen=True)
class DistanceMatrix:
    """Exact pairwise Tx-Rx distances; rows index Rx, columns index Tx."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def is_integer(self) -> bool:
        return all(d.denominator == 1 for row in self.entries for d in row)

    def to_array(self) -> np.ndarray:
        """Distances as a float64 matrix."""
        return np.array([[float(d) for d in row] for row in self.entries])


@dataclass(frozen=True)
class SIChannelMatrix:
    """Dense complex self-interference channel with its exact distance matrix."""

    h: np.ndarray
    rho: float
    layout: FullDuplexLayout
    delta: DistanceMatrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.h.shape


def distance_matrix(layout: FullDuplexLayout) -> DistanceMatrix:
    """Exact |d_rx[n] - d_tx[m]| matrix of a layout.

    Raises
    ------
    ColocatedAntennaError
        If any distance is zero (cannot happen for a constructed layout,
        but guards hand-built inputs).
    """
    rows = []
    for r in layout.rx.positions:
        row = tuple(abs(r - t) for t in layout.tx.positions)
        if any(d == 0 for d in row):
            raise ColocatedAntennaError(f"zero Tx-Rx distance at rx={r}")
        rows.append(row)
    return DistanceMatrix(entries=tuple(rows))


def si_matrix(layout: FullDuplexLayout, rho: float = 1.0) -> SIChannelMatrix:
    """Spherical-wave SI channel matrix of a layout.

    Parameters
    ----------
    layout : FullDuplexLayout
    rho : float
        Positive scale factor. The model keeps it constant; any geometry
        dependence is the caller's business.

    Returns
    -------
    SIChannelMatrix
        Entry (n, m) equals ``rho * exp(j*pi*d)/d`` with d the exact
        Tx-Rx distance. Integer distances produce exactly real entries
        with sign (-1)**d.
    """
    if not rho > 0:
        raise ValueError(f"rho must be > 0, got {rho}")
    rho = float(rho)
    delta = distance_matrix(layout)
    n_rx, n_tx = delta.shape
    h = np.empty((n_rx, n_tx), dtype=complex)
    for n, row in enumerate(delta.entries):
        for m, d in enumerate(row):
            if d.denominator == 1:
                sign = -1.0 if int(d) % 2 else 1.0
                h[n, m] = complex(sign * rho / float(d), 0.0)
            else:
                df = float(d)
                h[n, m] = rho * np.exp(1j * np.pi * df) / df
    h.setflags(write=False)
    return SIChannelMatrix(h=h, rho=rho, layout=layout, delta=delta)


def _as_rows(matrix):
    if isinstance(matrix, DistanceMatrix):
        return matrix.entries
    if isinstance(matrix, SIChannelMatrix):
        matrix = matrix.h
    arr = np.asarray(matrix)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def is_toeplitz(matrix, tol: float = 0.0) -> bool:
    """True when every diagonal is constant (within tol; tol=0 means exact).

    Accepts a DistanceMatrix (checked on exact rationals), an
    SIChannelMatrix, or any 2-D array-like.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    rows = _as_rows(matrix)
    n_r = len(rows)
    n_c = len(rows[0]) if n_r else 0
    for i in range(1, n_r):
        for j in range(1, n_c):
            a, b = rows[i][j], rows[i - 1][j - 1]
            if tol == 0:
                if a != b:
                    return False
            elif abs(a - b) > tol:
                return False
    return True


def sign_pattern(h: SIChannelMatrix) -> str:
    """Classify the entry signs of an SI matrix.

    Returns
    -------
    str
        ``'complex'`` if any entry has a nonzero imaginary part;
        ``'uniform'`` if all entries are real and share one sign;
        ``'alternating'`` if entries are real and the sign of every entry
        is exactly (-1)**distance with both parities present;
        ``'mixed'`` otherwise.
    """
    arr = h.h
    if np.any(arr.imag != 0):
        return SIGN_COMPLEX
    re = arr.real
    if np.all(re > 0) or np.all(re < 0):
        return SIGN_UNIFORM
    if not h.delta.is_integer:
        return SIGN_MIXED
    for n, row in enumerate(h.delta.entries):
        for m, d in enumerate(row):
            expected = -1.0 if int(d) % 2 else 1.0
            if np.sign(re[n, m]) != expected:
                return SIGN_MIXED
    return SIGN_ALTERNATING


def si_leakage(h, s) -> np.ndarray:
    """Self-interference seen at the receive array for transmit vector s.

    Parameters
    ----------
    h : SIChannelMatrix or 2-D array-like
    s : 1-D array-like of length n_tx

    Returns
    -------
    ndarray
        Complex vector of length n_rx (the matrix-vector product).
    """
    arr = h.h if isinstance(h, SIChannelMatrix) else np.asarray(h, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D channel matrix, got shape {arr.shape}")
    vec = np.asarray(s, dtype=complex)
    if vec.ndim != 1 or vec.shape[0] != arr.shape[1]:
        raise ValueError(
            f"transmit vector length {vec.shape} does not match {arr.shape[1]} Tx antennas"
        )
    return arr @ vec


def _fmt(x: float) -> str:
    return repr(float(x))


def _complex_cell(z: complex) -> str:
    re_part, im_part = float(z.real), float(z.imag)
    if im_part < 0 or (im_part == 0 and np.signbit(im_part)):
        return f"{_fmt(re_part)}-{_fmt(abs(im_part))}i"
    return f"{_fmt(re_part)}+{_fmt(im_part)}i"


# matches the trailing "<signed float>i" part of an "a+bi" cell
_IM_RE = re.compile(r"^(?P<re>.+?)(?P<im>[+-][^+-]*(?:[eE][+-]?\d+)?)i$")


def _parse_cell(cell: str) -> complex:
    cell = cell.strip()
    if cell.endswith("i"):
        m = _IM_RE.match(cell)
        if not m:
            raise ValueError(f"malformed complex cell {cell!r}")
        return complex(float(m.group("re")), float(m.group("im")))
    return complex(float(cell), 0.0)


def write_matrix_csv(matrix, path) -> None:
    """Write a matrix as CSV: plain values when real, 'a+bi' cells otherwise."""
    arr = np.asarray(matrix.h if isinstance(matrix, SIChannelMatrix) else matrix)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    is_real = not np.iscomplexobj(arr) or not np.any(arr.imag != 0)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in arr:
            if is_real:
                fh.write(",".join(_fmt(v.real if np.iscomplexobj(arr) else v) for v in row))
            else:
                fh.write(",".join(_complex_cell(complex(v)) for v in row))
            fh.write("\n")


def load_matrix_csv(path) -> np.ndarray:
    """Load a matrix written by `write_matrix_csv`.

    Returns a float matrix when no cell carries an imaginary part, a
    complex matrix otherwise.
    """
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rows.append([_parse_cell(c) for c in line.split(",")])
    if not rows:
        raise ValueError(f"no matrix rows found in {path}")
    arr = np.array(rows, dtype=complex)
    if not np.any(arr.imag != 0):
        return arr.real.copy()
    return arr


def write_matrix_json(matrix, path) -> None:
    """Write a matrix as nested JSON arrays of [re, im] pairs."""
    arr = np.asarray(matrix.h if isinstance(matrix, SIChannelMatrix) else matrix, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    data = [[[float(v.real), float(v.imag)] for v in row] for row in arr]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh)
        fh.write("\n")


def load_matrix_json(path) -> np.ndarray:
    """Load a complex matrix from nested [re, im] JSON arrays."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        arr = np.array([[complex(c[0], c[1]) for c in row] for row in data])
    except (TypeError, IndexError) as exc:
        raise ValueError(f"malformed matrix document in {path}: {exc}") from exc
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr
