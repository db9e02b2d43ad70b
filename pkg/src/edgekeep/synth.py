"""Synthetic test images used by the benchmark harness and the test suite."""

from __future__ import annotations

import numpy as np

from .image import ImageBuffer


def step_edge(size: int = 64, low: float = 0.25, high: float = 0.75) -> ImageBuffer:
    """Vertical step: left half at `low`, right half at `high`."""
    pixels = np.full((size, size), low)
    pixels[:, size // 2:] = high
    return ImageBuffer(pixels)


def grating(size: int = 64, axis: str = "x", period: float = 8.0,
            amplitude: float = 0.4, mean: float = 0.5) -> ImageBuffer:
    """Sinusoidal grating varying along the given axis.

    axis="x" gives vertical stripes (intensity varies along columns),
    axis="y" horizontal stripes. mean +/- amplitude must stay inside [0, 1].
    """
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    coords = np.arange(size, dtype=np.float64)
    wave = mean + amplitude * np.sin(2.0 * np.pi * coords / period)
    pixels = np.tile(wave, (size, 1))
    if axis == "y":
        pixels = pixels.T.copy()
    return ImageBuffer(pixels)


def two_texture(size: int = 128, period: float = 8.0,
                amplitude: float = 0.1) -> ImageBuffer:
    """Two equal-mean gratings side by side: x-varying left, y-varying right.

    The seam has no intensity step, only a texture-orientation change, and
    the default contrast is low: similar colors with different textures is
    the case the texture-similarity weight is designed for.
    """
    half = size // 2
    left = grating(size, "x", period, amplitude).pixels[:, :half]
    right = grating(size, "y", period, amplitude).pixels[:, half:]
    return ImageBuffer(np.hstack([left, right]))
