"""Special functions in the normalization used throughout the package.

The Fresnel integrals here are

    C(w) = sqrt(2/pi) * int_0^w cos(y^2) dy,    S(w) = sqrt(2/pi) * int_0^w sin(y^2) dy,

which tend to +-1/2 as w -> +-inf.  This differs from the textbook convention
with ``cos(pi t^2 / 2)`` by the substitution ``w = t * sqrt(pi/2)``.
"""
import cmath
import math
from typing import NamedTuple

import numpy as np

from ._backend import kernels

__all__ = [
    "FresnelPair",
    "fresnel",
    "fresnel_array",
    "erfc_complex",
    "erfcx_complex",
    "erfcx_array",
    "sinc",
    "sinc_array",
]

# e^{-z^2} underflows to zero below this real exponent; mirrored value is exactly 2.
_UNDERFLOW_EXP = -745.2
_OVERFLOW_EXP = 709.7


class FresnelPair(NamedTuple):
    c: float
    s: float


def fresnel_array(w):
    """Vectorised Fresnel integrals; returns ``(C, S)`` arrays shaped like ``w``."""
    return kernels.fresnel(np.asarray(w, dtype=np.float64))


def fresnel(w: float) -> FresnelPair:
    """Fresnel integrals ``(C(w), S(w))`` for a finite real ``w``.

    Maclaurin series for ``|w| <= 3``; beyond that the complementary integral is
    taken from the Laplace continued fraction of ``erfc`` on the ray
    ``arg z = -pi/4``.  Odd in ``w`` by construction.
    """
    if not math.isfinite(w):
        raise ValueError(f"fresnel needs a finite argument, got {w!r}")
    c, s = kernels.fresnel(np.array([w], dtype=np.float64))
    return FresnelPair(float(c[0]), float(s[0]))


def erfcx_array(z):
    """Scaled complementary error function ``exp(z^2) erfc(z)``, elementwise.

    Reliable for ``Re z >= 0``.  Callers needing ``Re z < 0`` should reflect
    (``erfc(z) = 2 - erfc(-z)``) before scaling, as `erfc_complex` does.
    """
    return kernels.erfcx(np.asarray(z, dtype=np.complex128))


def erfcx_complex(z: complex) -> complex:
    return complex(kernels.erfcx(np.array([z], dtype=np.complex128))[0])


def erfc_complex(z: complex) -> complex:
    """Complementary error function of a complex argument.

    The computation always runs in the half plane ``Re z >= 0`` where
    ``exp(-z^2)`` multiplies a bounded scaled value; the left half plane is
    reached through ``erfc(z) = 2 - erfc(-z)``.  When ``exp(-z^2)`` underflows
    the exact limit (0, or 2 after reflection) is returned.

    Raises
    ------
    OverflowError
        If ``|erfc(z)|`` exceeds the double range (deep in the sectors around
        the imaginary axis, ``Re(z^2) < -709``).
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"erfc_complex needs a finite argument, got {z!r}")
    reflect = z.real < 0
    zr = -z if reflect else z
    expo = -(zr * zr)
    if expo.real < _UNDERFLOW_EXP:
        val = 0j
    elif expo.real > _OVERFLOW_EXP:
        raise OverflowError(f"erfc({z!r}) exceeds the floating-point range")
    else:
        val = cmath.exp(expo) * erfcx_complex(zr)
    return 2.0 - val if reflect else val


def sinc_array(z):
    """``sin(z)/z`` with the removable point filled in, elementwise."""
    z = np.asarray(z, dtype=np.float64)
    z2 = z * z
    small = np.abs(z) < 1e-4
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0 - z2 / 6.0 + z2 * z2 / 120.0, np.sin(z) / np.where(small, 1.0, z))
    return out


def sinc(z: float) -> float:
    """``sin(z)/z`` with ``sinc(0) = 1``; Taylor branch for ``|z| < 1e-4``."""
    if abs(z) < 1e-4:
        z2 = z * z
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    return math.sin(z) / z
