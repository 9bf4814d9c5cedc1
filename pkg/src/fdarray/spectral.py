"""Singular-value analysis of self-interference matrices.

The spectral norm (largest singular value) scales the worst-case
self-interference power over all transmit signals; the full spectrum and
effective rank quantify how many transmit directions leak significantly.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geometry import generate_partitioned
from .si_model import SIChannelMatrix, si_matrix


@dataclass(frozen=True)
class SingularSpectrum:
    """Descending singular values plus numerical-contract metadata.

    Attributes
    ----------
    sigmas : ndarray
        All min(n_rx, n_tx) singular values, descending. Values are
        reported as computed, never truncated; thresholding happens only
        in `effective_rank`.
    frob : float
        Frobenius norm of the source matrix (sum of sigmas**2 equals
        frob**2 up to rounding).
    recon_error : float
        Max-abs residual of the factored reconstruction U S V*.
    """

    sigmas: np.ndarray
    frob: float
    recon_error: float

    def __len__(self) -> int:
        return len(self.sigmas)


def _as_complex_matrix(h) -> np.ndarray:
    if isinstance(h, SIChannelMatrix):
        return h.h
    arr = np.asarray(h, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def svd_spectrum(h) -> SingularSpectrum:
    """Full singular spectrum of a matrix.

    Parameters
    ----------
    h : SIChannelMatrix or 2-D array-like

    Raises
    ------
    ValueError
        On an empty matrix or non-finite entries.
    """
    arr = _as_complex_matrix(h)
    if arr.size == 0:
        raise ValueError("cannot decompose an empty matrix")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    u, s, vh = np.linalg.svd(arr, full_matrices=False)
    recon_error = float(np.max(np.abs(arr - (u * s) @ vh)))
    sigmas = np.asarray(s, dtype=float)
    sigmas.setflags(write=False)
    return SingularSpectrum(
        sigmas=sigmas,
        frob=float(np.linalg.norm(arr)),
        recon_error=recon_error,
    )


def spectral_norm(h) -> float:
    """Largest singular value (worst-case SI amplification)."""
    return float(svd_spectrum(h).sigmas[0])


def effective_rank(spec: SingularSpectrum, eps: float) -> int:
    """Number of singular values at or above eps times the largest one.

    Parameters
    ----------
    spec : SingularSpectrum
    eps : float
        Relative threshold, strictly between 0 and 1.

    Returns
    -------
    int
        0 for the zero matrix.
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    s = spec.sigmas
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s >= eps * s[0]))


def partitioned_rank1_gap(delta1_values, rho: float = 1.0) -> list[tuple[int, float]]:
    """sigma2/sigma1 of the two-antenna partitioned channel per gap value.

    The ratio shrinks as the Tx/Rx separation grows and the channel
    approaches rank one.

    Returns
    -------
    list of (delta1, ratio) pairs in the given order.
    """
    rows = []
    for delta1 in delta1_values:
        spec = svd_spectrum(si_matrix(generate_partitioned(2, delta1), rho))
        rows.append((delta1, float(spec.sigmas[1] / spec.sigmas[0])))
    if not rows:
        raise ValueError("delta1_values must be nonempty")
    return rows


def interleaved_closed_form_n2(rho: float, delta2: int) -> tuple[float, float]:
    """Closed-form singular values of the two-antenna interleaved channel.

    Both values scale as rho/delta2, so their ratio is independent of the
    spacing; serves as an oracle for `svd_spectrum`.
    """
    if not rho > 0:
        raise ValueError(f"rho must be > 0, got {rho}")
    if delta2 < 1:
        raise ValueError(f"delta2 must be >= 1, got {delta2}")
    scale = rho / delta2
    root10 = math.sqrt(10.0)
    return (
        math.sqrt((14.0 + 4.0 * root10) / 9.0) * scale,
        math.sqrt((14.0 - 4.0 * root10) / 9.0) * scale,
    )


def write_spectrum_csv(spec: SingularSpectrum, path) -> None:
    """Write (index, sigma) rows, index starting at 1."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index,sigma\n")
        for i, sigma in enumerate(spec.sigmas, start=1):
            fh.write(f"{i},{float(sigma)!r}\n")
