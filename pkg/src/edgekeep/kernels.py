"""2-D Gaussian kernel, its first-derivative pair, and windowed convolution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import BoundaryPolicy, ImageBuffer, pad_field


@dataclass(frozen=True, eq=False)
class Kernel2D:
    """Square tap grid; taps[j, i] weights offset (u, v) = (i - r, j - r)."""

    radius: int
    taps: np.ndarray

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"radius must be >= 1, got {self.radius}")
        side = 2 * self.radius + 1
        taps = np.asarray(self.taps, dtype=np.float64)
        if taps.shape != (side, side):
            raise ValueError(f"taps must be {side}x{side}, got shape {taps.shape}")
        taps = taps.copy()
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)


def _offset_grids(radius: int):
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    u = offsets[np.newaxis, :]  # column offset, along x
    v = offsets[:, np.newaxis]  # row offset, along y
    return u, v


def gaussian_kernel(sigma: float, radius: int) -> Kernel2D:
    """Normalized Gaussian: taps proportional to exp(-(u^2+v^2)/(2 sigma^2))."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    u, v = _offset_grids(radius)
    taps = np.exp(-(u * u + v * v) / (2.0 * sigma * sigma))
    return Kernel2D(radius, taps / taps.sum())


def gaussian_derivative_kernels(sigma: float, radius: int) -> tuple[Kernel2D, Kernel2D]:
    """Sampled analytic x/y first derivatives of the Gaussian.

    The x kernel samples -u/sigma^2 * exp(-(u^2+v^2)/(2 sigma^2)) and responds
    to variation along x; the y kernel is exactly its transpose. Both are
    zero-sum by odd symmetry. Taps are raw analytic samples, unnormalized.
    """
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    u, v = _offset_grids(radius)
    gx = -u / (sigma * sigma) * np.exp(-(u * u + v * v) / (2.0 * sigma * sigma))
    gy = gx.T.copy()
    return Kernel2D(radius, gx), Kernel2D(radius, gy)


def convolve(field, kernel: Kernel2D,
             policy: BoundaryPolicy = BoundaryPolicy.REPLICATE) -> np.ndarray:
    """True convolution: out(x) = sum over (u, v) of taps(u, v) * field(x - (u, v)).

    Accepts a gray ImageBuffer or a bare 2-D array and returns an unclamped
    float64 field of the same shape. Orientation fix: a kernel with a single
    tap at offset (u, v) = (1, 0) shifts image content by +1 along x.
    """
    if isinstance(field, ImageBuffer):
        if field.channels != 1:
            raise ValueError("convolve expects a gray image")
        field = field.pixels
    field = np.asarray(field, dtype=np.float64)
    r = kernel.radius
    h, w = field.shape
    padded = pad_field(field, r, policy)
    out = np.zeros((h, w))
    for j in range(-r, r + 1):
        for i in range(-r, r + 1):
            tap = kernel.taps[j + r, i + r]
            if tap == 0.0:
                continue
            out += tap * padded[r - j:r - j + h, r - i:r - i + w]
    return out


def window_mean(field: np.ndarray, radius: int,
                policy: BoundaryPolicy = BoundaryPolicy.REPLICATE) -> np.ndarray:
    """Mean of `field` over the (2r+1)^2 window centered at each pixel."""
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    field = np.asarray(field, dtype=np.float64)
    h, w = field.shape
    padded = pad_field(field, radius, policy)
    acc = np.zeros((h, w))
    side = 2 * radius + 1
    for j in range(side):
        for i in range(side):
            acc += padded[j:j + h, i:i + w]
    return acc / float(side * side)
