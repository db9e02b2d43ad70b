"""Steerable decomposition, windowed sub-band energy, and texture labeling.

A one-level steerable pair (Gaussian x/y derivatives) is steered to four
fixed orientations; the windowed mean of squared band coefficients gives a
per-pixel energy vector, which a three-rule cascade turns into one of six
texture classes. The resulting label map feeds the multilateral filter's
texture-similarity weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .image import BoundaryPolicy, ImageBuffer, to_grayscale
from .kernels import convolve, gaussian_derivative_kernels, window_mean

#: Sub-band orientations in their fixed order (degrees).
ORIENTATIONS_DEG = (0.0, 90.0, 45.0, -45.0)

_INV_SQRT2 = math.sqrt(0.5)
# (cos, sin) steering coefficients matching ORIENTATIONS_DEG.
_STEERING = ((1.0, 0.0), (0.0, 1.0), (_INV_SQRT2, _INV_SQRT2), (_INV_SQRT2, -_INV_SQRT2))

#: Default scale of the Gaussian the derivative kernels are sampled from.
DEFAULT_SIGMA_G = 1.0

#: Fraction of the image-mean energy used by the adaptive smooth threshold.
ADAPTIVE_THRESHOLD_FRACTION = 0.1

# Absolute floor for the adaptive threshold: keeps exactly-constant images
# classifying as smooth (their residual energies are pure rounding noise,
# around 1e-34) while sitting far below any real sub-band energy.
_ADAPTIVE_THRESHOLD_FLOOR = 1e-12


class TextureClass(IntEnum):
    """Per-pixel texture label; values index the export gray levels."""

    SMOOTH = 0
    COMPLEX = 1
    ORIENT_0 = 2
    ORIENT_90 = 3
    ORIENT_45 = 4
    ORIENT_NEG_45 = 5


#: Gray level written for each class when a texture map is exported as PGM.
EXPORT_GRAY_LEVELS = (0, 51, 102, 153, 204, 255)


def steerable_radius(sigma_g: float) -> int:
    """Kernel radius used by decompose: 3 * ceil(sigma_g)."""
    return 3 * int(math.ceil(sigma_g))


@dataclass(frozen=True, eq=False)
class SubBandSet:
    """Steered responses stacked (4, h, w) in ORIENTATIONS_DEG order."""

    bands: np.ndarray

    def __post_init__(self):
        bands = np.asarray(self.bands, dtype=np.float64)
        if bands.ndim != 3 or bands.shape[0] != len(ORIENTATIONS_DEG):
            raise ValueError(f"expected ({len(ORIENTATIONS_DEG)}, h, w) bands, got {bands.shape}")
        object.__setattr__(self, "bands", bands)

    def band(self, index: int) -> np.ndarray:
        return self.bands[index]


@dataclass(frozen=True, eq=False)
class EnergyField:
    """Per-pixel orientation energies stacked (4, h, w); all components >= 0."""

    energies: np.ndarray

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=np.float64)
        if energies.ndim != 3 or energies.shape[0] != len(ORIENTATIONS_DEG):
            raise ValueError(f"expected ({len(ORIENTATIONS_DEG)}, h, w) energies, got {energies.shape}")
        if not np.all(energies >= 0.0):
            raise ValueError("energies must be nonnegative")
        object.__setattr__(self, "energies", energies)


@dataclass(frozen=True)
class TextureParams:
    """Energy-window radius plus the smooth/complex rule thresholds.

    smooth_threshold None selects the adaptive default:
    ADAPTIVE_THRESHOLD_FRACTION times the mean of all orientation energies
    over the image. complex_ratio is the "close to each other" cutoff: the
    second-largest energy must reach that fraction of the largest.
    """

    energy_window_radius: int = 2
    smooth_threshold: float | None = None
    complex_ratio: float = 0.8

    def __post_init__(self):
        if self.energy_window_radius < 1:
            raise ValueError(
                f"energy_window_radius must be >= 1, got {self.energy_window_radius}")
        if self.smooth_threshold is not None and self.smooth_threshold < 0.0:
            raise ValueError(f"smooth_threshold must be >= 0, got {self.smooth_threshold}")
        if not 0.0 < self.complex_ratio <= 1.0:
            raise ValueError(f"complex_ratio must lie in (0, 1], got {self.complex_ratio}")


@dataclass(frozen=True, eq=False)
class TextureMap:
    """Per-pixel class labels plus the energy field they were derived from."""

    labels: np.ndarray
    energy: EnergyField

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 2:
            raise ValueError(f"labels must be 2-D, got shape {labels.shape}")
        if labels.shape != self.energy.energies.shape[1:]:
            raise ValueError("labels and energy dimensions differ")
        labels = labels.astype(np.uint8)
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.labels.shape


def decompose(img, sigma_g: float = DEFAULT_SIGMA_G,
              policy: BoundaryPolicy = BoundaryPolicy.REPLICATE,
              radius: int | None = None) -> SubBandSet:
    """Steer the Gaussian-derivative pair to the four fixed orientations.

    The two base responses are convolved once; each band is then
    cos(theta) * base_x + sin(theta) * base_y.
    """
    if isinstance(img, ImageBuffer):
        if img.channels != 1:
            raise ValueError("decompose expects a gray image")
        field = img.pixels
    else:
        field = np.asarray(img, dtype=np.float64)
    if radius is None:
        radius = steerable_radius(sigma_g)
    kernel_x, kernel_y = gaussian_derivative_kernels(sigma_g, radius)
    base_x = convolve(field, kernel_x, policy)
    base_y = convolve(field, kernel_y, policy)
    bands = np.stack([c * base_x + s * base_y for c, s in _STEERING])
    return SubBandSet(bands)


def local_energy(bands: SubBandSet, window_radius: int = 2,
                 policy: BoundaryPolicy = BoundaryPolicy.REPLICATE) -> EnergyField:
    """Windowed mean of squared band coefficients, per orientation."""
    if window_radius < 1:
        raise ValueError(f"window_radius must be >= 1, got {window_radius}")
    energies = np.stack(
        [window_mean(band * band, window_radius, policy) for band in bands.bands])
    # Squares can round to tiny negatives only through the window sum; clamp.
    return EnergyField(np.maximum(energies, 0.0))


def classify(energy: EnergyField, params: TextureParams | None = None) -> TextureMap:
    """Label each pixel smooth, complex, or by its dominant orientation.

    Rules apply in precedence order: all four energies below the smooth
    threshold -> smooth; second-largest energy >= complex_ratio * largest ->
    complex; otherwise the orientation of the largest energy, ties resolved
    by the fixed orientation order.
    """
    params = params or TextureParams()
    e = energy.energies
    threshold = params.smooth_threshold
    if threshold is None:
        threshold = max(ADAPTIVE_THRESHOLD_FRACTION * float(e.mean()),
                        _ADAPTIVE_THRESHOLD_FLOOR)
    largest = e.max(axis=0)
    second = np.partition(e, -2, axis=0)[-2]
    labels = (e.argmax(axis=0) + int(TextureClass.ORIENT_0)).astype(np.uint8)
    labels[second >= params.complex_ratio * largest] = int(TextureClass.COMPLEX)
    labels[(e < threshold).all(axis=0)] = int(TextureClass.SMOOTH)
    return TextureMap(labels=labels, energy=energy)


def compute_texture_map(img: ImageBuffer, params: TextureParams | None = None,
                        sigma_g: float = DEFAULT_SIGMA_G,
                        policy: BoundaryPolicy = BoundaryPolicy.REPLICATE) -> TextureMap:
    """Decompose, measure windowed energy, and classify in one step.

    Color images are grayscale-converted first; texture is independent of
    color.
    """
    params = params or TextureParams()
    gray = to_grayscale(img)
    bands = decompose(gray, sigma_g, policy)
    energy = local_energy(bands, params.energy_window_radius, policy)
    return classify(energy, params)


def texture_distance(a, b) -> float:
    """Indicator metric between texture labels: 0 when equal, else 1."""
    return 0.0 if int(a) == int(b) else 1.0


def texture_map_image(tex: TextureMap) -> ImageBuffer:
    """Gray image with the six labels at their fixed export gray levels."""
    levels = np.asarray(EXPORT_GRAY_LEVELS, dtype=np.float64) / 255.0
    return ImageBuffer(levels[tex.labels])
