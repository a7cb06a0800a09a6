"""Target functions of the two synthetic regression problems.

sinc is the normalized sinc, sin(πu) / (πu), as numpy defines it.
"""
import numpy as np
from numpy.typing import ArrayLike

EXP2_OMEGA = 0.3


def target_exp1(x: ArrayLike) -> np.ndarray:
    """y_r = Σ_{r=-1..1} sinc(1.2 x_r + 2r) sinc(1.2 x_j - 2r), y_j = sinc(0.2 x_j - 1.5)"""
    x = np.asarray(x, dtype=np.complex128)
    xr, xj = x.real, x.imag
    real = sum(np.sinc(1.2 * xr + 2 * r) * np.sinc(1.2 * xj - 2 * r) for r in (-1, 0, 1))
    imag = np.sinc(0.2 * xj - 1.5)
    return real + 1j * imag


def target_exp2(x: ArrayLike, omega: float = EXP2_OMEGA) -> np.ndarray:
    """Coupled parts y_r = z_r + ω z_j, y_j = z_j + ω z_r"""
    x = np.asarray(x, dtype=np.complex128)
    z_r = np.sinc(0.5 * x.real) * np.sinc(0.5 * x.imag)
    z_j = 0.1 * np.sinc(0.3 * x.imag)
    return (z_r + omega * z_j) + 1j * (z_j + omega * z_r)
