"""Single-photon focusing by a paraboloidal mirror.

The mirror surface is z = (x^2 + y^2) / (4 f).  A point source sits on the
axis at distance z1 from the vertex; the detection plane sits at z2 on the
other side, with 1/z1 + 1/z2 = 1/f.  Summing the phase e^{2 pi i L / lambda}
over mirror points inside the aperture gives the focal-plane amplitude.  In
the paraxial regime the integral over a circular aperture of radius R is the
classic Airy pattern

    A(u) = 2 pi R^2 J1(u) / u,   u = 2 pi R rho2 / (lambda z2),

with A(0) = pi R^2 (the aperture area).  Keeping the next order in the path
expansion adds the spherical-aberration phase 2 pi rho^4 / (32 lambda f^3).

Bessel J0 and J1 are evaluated in-house: an ascending power series up to
|x| = 12 and the large-argument asymptotic (Hankel) expansion beyond, good
to about 1e-10 absolute over the real line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "MirrorGeometry",
    "FieldSample",
    "image_distance",
    "geometric_image_point",
    "exact_path_length",
    "paraxial_path_length",
    "aberration_phase",
    "aberration_phase_max",
    "bessel_j0",
    "bessel_j1",
    "AIRY_FIRST_ZERO",
    "airy_amplitude_closed",
    "focal_amplitude_quadrature",
    "airy_profile",
]

# First positive zero of J1, to double precision.
AIRY_FIRST_ZERO = 3.831705970207512

_SERIES_CUTOFF = 12.0
_SERIES_TERMS = 40
_ASYMPTOTIC_TERMS = 12


def _bessel_series(x, nu: int):
    """Ascending series sum_m (-1)^m (x/2)^{2m+nu} / (m! (m+nu)!)."""
    x = np.asarray(x, dtype=float)
    q = 0.25 * x * x
    term = np.ones_like(x) if nu == 0 else 0.5 * x
    total = term.copy()
    for m in range(1, _SERIES_TERMS):
        term = term * (-q) / (m * (m + nu))
        total += term
    return total


def _bessel_asymptotic(x, nu: int):
    """Hankel expansion for large |x|: valid and accurate for |x| >= 12."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    safe = np.where(ax > 0, ax, 1.0)
    mu = 4.0 * nu * nu
    inv8x = 1.0 / (8.0 * safe)
    # P ~ sum of even terms, Q ~ sum of odd terms of the a_k sequence
    p = np.ones_like(safe)
    q = np.zeros_like(safe)
    term = np.ones_like(safe)
    sign = 1.0
    for k in range(1, 2 * _ASYMPTOTIC_TERMS):
        term = term * (mu - (2 * k - 1) ** 2) * inv8x / k
        if k % 2 == 1:
            q += sign * term
        else:
            p += -sign * term
            sign = -sign
    chi = safe - (0.5 * nu + 0.25) * math.pi
    val = np.sqrt(2.0 / (math.pi * safe)) * (
        np.cos(chi) * p - np.sin(chi) * q
    )
    if nu == 1:
        # J1 is odd; the series above used |x|
        val = np.where(x < 0, -val, val)
    return val


def _bessel(x, nu: int):
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = np.abs(arr) <= _SERIES_CUTOFF
    if small.any():
        out[small] = _bessel_series(arr[small], nu)
    if (~small).any():
        out[~small] = _bessel_asymptotic(arr[~small], nu)
    return float(out[0]) if scalar else out


def bessel_j0(x):
    """Bessel function of the first kind, order zero.  Array friendly."""
    return _bessel(x, 0)


def bessel_j1(x):
    """Bessel function of the first kind, order one.  Array friendly."""
    return _bessel(x, 1)


@dataclass(frozen=True)
class MirrorGeometry:
    """Paraboloidal mirror setup: all lengths in meters."""

    focal_length: float
    aperture_radius: float
    wavelength: float
    z1: float
    z2: float
    source: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        for name in ("focal_length", "aperture_radius", "wavelength", "z1", "z2"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def imaging(
        cls,
        focal_length: float,
        aperture_radius: float,
        wavelength: float,
        z1: float,
        source: tuple[float, float] = (0.0, 0.0),
    ) -> "MirrorGeometry":
        """Place the detection plane at the image distance for this z1."""
        return cls(
            focal_length=focal_length,
            aperture_radius=aperture_radius,
            wavelength=wavelength,
            z1=z1,
            z2=image_distance(z1, focal_length),
            source=source,
        )

    @property
    def numerical_aperture(self) -> float:
        return self.aperture_radius / self.focal_length

    @property
    def alpha(self) -> float:
        """Surface coefficient in z = alpha (x^2 + y^2)."""
        return 1.0 / (4.0 * self.focal_length)


class FieldSample(NamedTuple):
    position: float
    amplitude: complex


def image_distance(z1: float, focal_length: float) -> float:
    """Solve 1/z1 + 1/z2 = 1/f for z2."""
    if z1 <= 0 or focal_length <= 0:
        raise ValueError("distances must be positive")
    if math.isclose(z1, focal_length, rel_tol=1e-12):
        raise ValueError("source at the focal distance images at infinity")
    return 1.0 / (1.0 / focal_length - 1.0 / z1)


def geometric_image_point(
    source: tuple[float, float], z1: float, focal_length: float
) -> tuple[float, float]:
    """Transverse image location: inverted and scaled by z2/z1."""
    z2 = image_distance(z1, focal_length)
    scale = -z2 / z1
    return (scale * source[0], scale * source[1])


def exact_path_length(
    r1: tuple[float, float, float],
    mirror_xy: tuple[float, float],
    r2: tuple[float, float, float],
    focal_length: float,
) -> float:
    """Geometric length source -> mirror surface point -> detection point.

    The mirror point's z coordinate follows from the surface equation
    z = rho^2 / (4 f), which opens toward +z; source and detector sit at
    positive z, so pass e.g. (x1, y1, z1) for a source at distance z1.
    """
    x, y = mirror_xy
    z = (x * x + y * y) / (4.0 * focal_length)
    d1 = math.dist(r1, (x, y, z))
    d2 = math.dist(r2, (x, y, z))
    return d1 + d2


def paraxial_path_length(
    r1: tuple[float, float],
    mirror_xy: tuple[float, float],
    r2: tuple[float, float],
    geometry: MirrorGeometry,
) -> float:
    """Second-order expansion of the path length in the transverse offsets.

    r1 and r2 are transverse source/detector coordinates at distances z1
    and z2 from the vertex.  Terms quadratic in the mirror coordinates are
    kept, including the surface sag z = alpha (x^2 + y^2).
    """
    x1, y1 = r1
    x2, y2 = r2
    x, y = mirror_xy
    z1, z2 = geometry.z1, geometry.z2
    z = geometry.alpha * (x * x + y * y)
    return (
        z1
        + z2
        + (x1 * x1 + y1 * y1) / (2.0 * z1)
        + (x2 * x2 + y2 * y2) / (2.0 * z2)
        - (x1 / z1 + x2 / z2) * x
        - (y1 / z1 + y2 / z2) * y
        + 0.5 * (1.0 / z1 + 1.0 / z2) * (x * x + y * y + z * z)
        - 2.0 * z
    )


def aberration_phase(rho, geometry: MirrorGeometry):
    """Fourth-order (spherical aberration) phase at mirror radius rho."""
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr > geometry.aperture_radius * (1.0 + 1e-12)):
        raise ValueError("mirror radius outside the aperture")
    val = (
        2.0
        * math.pi
        * rho_arr**4
        / (32.0 * geometry.wavelength * geometry.focal_length**3)
    )
    return float(val) if np.ndim(rho) == 0 else val


def aberration_phase_max(geometry: MirrorGeometry) -> float:
    """Aberration phase at the aperture edge: (pi/16)(f/lambda) NA^4."""
    return aberration_phase(geometry.aperture_radius, geometry)


def airy_amplitude_closed(rho2: float, geometry: MirrorGeometry) -> float:
    """Paraxial focal-plane amplitude 2 pi R^2 J1(u)/u for an on-axis source.

    Normalization: the on-axis value equals the aperture area pi R^2.
    """
    radius = geometry.aperture_radius
    u = 2.0 * math.pi * radius * rho2 / (geometry.wavelength * geometry.z2)
    if abs(u) < 1e-8:
        # 2 J1(u)/u -> 1 - u^2/8
        return math.pi * radius * radius * (1.0 - u * u / 8.0)
    return 2.0 * math.pi * radius * radius * float(bessel_j1(u)) / u


def airy_first_zero_radius(geometry: MirrorGeometry) -> float:
    """Detector radius of the first dark ring."""
    return (
        AIRY_FIRST_ZERO
        / (2.0 * math.pi)
        * geometry.wavelength
        * geometry.z2
        / geometry.aperture_radius
    )


@lru_cache(maxsize=16)
def _gauss_nodes(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _radial_quadrature(rho2: float, geometry: MirrorGeometry, n: int) -> complex:
    """Angular integral done analytically (J0), radial one by Gauss-Legendre.

    Valid when the phase depends on the mirror point only through rho:
    integral = 2 pi int_0^R J0(k rho rho2 / z2) e^{i k c rho^2} rho d rho
    where c collects the residual quadratic (defocus) phase, which vanishes
    at the imaging condition and leaves the plain Airy integral.
    """
    nodes, weights = _gauss_nodes(n)
    radius = geometry.aperture_radius
    rho = 0.5 * radius * (nodes + 1.0)
    w = 0.5 * radius * weights
    k = 2.0 * math.pi / geometry.wavelength
    beta = k * rho2 / geometry.z2
    defocus = 0.5 * (1.0 / geometry.z1 + 1.0 / geometry.z2) - 2.0 * geometry.alpha
    vals = bessel_j0(beta * rho) * np.exp(1j * k * defocus * rho * rho) * rho
    return complex(2.0 * math.pi * np.sum(w * vals))


def _polar_quadrature(
    point: tuple[float, float],
    geometry: MirrorGeometry,
    n: int,
    include_aberration: bool,
) -> complex:
    """Full 2-D quadrature over the aperture in polar coordinates."""
    nodes, weights = _gauss_nodes(n)
    radius = geometry.aperture_radius
    rho = 0.5 * radius * (nodes + 1.0)
    wr = 0.5 * radius * weights
    theta = math.pi * (nodes + 1.0)
    wt = math.pi * weights
    rr, tt = np.meshgrid(rho, theta, indexing="ij")
    xm = rr * np.cos(tt)
    ym = rr * np.sin(tt)
    x1, y1 = geometry.source
    x2, y2 = point
    z1, z2 = geometry.z1, geometry.z2
    # Constant and detector-only terms drop out of the intensity profile;
    # keep only mirror-dependent phase so on-axis stays real positive.
    phase = (
        -(x1 / z1 + x2 / z2) * xm
        - (y1 / z1 + y2 / z2) * ym
        + (0.5 * (1.0 / z1 + 1.0 / z2) - 2.0 * geometry.alpha) * rr * rr
    )
    if include_aberration:
        sag = geometry.alpha * rr * rr
        phase = phase + 0.5 * (1.0 / z1 + 1.0 / z2) * sag * sag
    k = 2.0 * math.pi / geometry.wavelength
    integrand = np.exp(1j * k * phase) * rr
    return complex(np.einsum("i,j,ij->", wr, wt, integrand))


def focal_amplitude_quadrature(
    point: tuple[float, float],
    geometry: MirrorGeometry,
    *,
    include_aberration: bool = False,
    nodes: int | None = None,
) -> complex:
    """Detection-plane amplitude by numerical sum over mirror points.

    Mirror-independent phase factors (the overall e^{2 pi i (z1+z2)/lambda}
    and the detector-coordinate quadratic) are dropped, so an on-axis
    unaberrated evaluation returns the real aperture area.  Convergence is
    verified by doubling the node count; failure to settle below 1e-8
    relative raises ConvergenceError.
    """
    on_axis_source = geometry.source == (0.0, 0.0)
    if not include_aberration and on_axis_source:
        n = 256 if nodes is None else nodes
        rho2 = math.hypot(*point)
        coarse = _radial_quadrature(rho2, geometry, n)
        fine = _radial_quadrature(rho2, geometry, 2 * n)
    else:
        n = 128 if nodes is None else nodes
        coarse = _polar_quadrature(point, geometry, n, include_aberration)
        fine = _polar_quadrature(point, geometry, 2 * n, include_aberration)
    scale = max(abs(fine), math.pi * geometry.aperture_radius**2)
    if abs(fine - coarse) > 1e-8 * scale:
        raise ConvergenceError(
            f"quadrature not settled at {n} nodes: "
            f"|delta| = {abs(fine - coarse):.3e} against scale {scale:.3e}"
        )
    return fine


def airy_profile(
    geometry: MirrorGeometry,
    n_samples: int = 200,
    *,
    r_max: float | None = None,
    include_aberration: bool = False,
) -> list[FieldSample]:
    """Radial cut of the detection-plane amplitude for an on-axis source.

    Samples run from the axis out to r_max (default: three times the first
    dark-ring radius), evenly spaced.
    """
    if n_samples < 2:
        raise ValueError("need at least two samples")
    if r_max is None:
        r_max = 3.0 * airy_first_zero_radius(geometry)
    out = []
    for i in range(n_samples):
        r = r_max * i / (n_samples - 1)
        amp = focal_amplitude_quadrature(
            (r, 0.0), geometry, include_aberration=include_aberration
        )
        out.append(FieldSample(position=r, amplitude=amp))
    return out
