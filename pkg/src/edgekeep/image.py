"""Image buffers, boundary-aware pixel addressing, grayscale conversion, PNM I/O.

Samples are kept as float64 in [0, 1] for the whole pipeline; quantization to
8 bits happens only when a file is written. Pixel coordinates are (x, y) =
(column, row) pairs throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

#: ITU-R BT.601 luma coefficients for RGB -> gray conversion.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class BoundaryPolicy(Enum):
    """How window coordinates outside the image are remapped to pixels."""

    REPLICATE = "replicate"
    MIRROR = "mirror"


# np.pad mode realizing each policy; 'reflect' mirrors without repeating the
# edge pixel, which is the mirror contract here.
_PAD_MODES = {BoundaryPolicy.REPLICATE: "edge", BoundaryPolicy.MIRROR: "reflect"}


class PnmError(ValueError):
    """Defective PNM input; `offset` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MalformedHeaderError(PnmError):
    pass


class TruncatedPayloadError(PnmError):
    pass


class UnsupportedMaxvalError(PnmError):
    pass


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """A gray or RGB raster with float64 samples in [0, 1].

    `pixels` has shape (height, width) for gray images and (height, width, 3)
    for RGB. The array is copied on construction and marked read-only, so
    buffers are safe to share between threads.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.float64)
        if not (arr.ndim == 2 or (arr.ndim == 3 and arr.shape[2] == 3)):
            raise ValueError(f"expected (h, w) or (h, w, 3) samples, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be >= 1, got shape {arr.shape}")
        if not np.all((arr >= 0.0) & (arr <= 1.0)):
            raise ValueError("samples must lie in [0, 1]")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3


def fold_index(i: int, n: int, policy: BoundaryPolicy) -> int:
    """Map an arbitrary integer coordinate into [0, n) per boundary policy."""
    if policy is BoundaryPolicy.REPLICATE:
        return min(max(i, 0), n - 1)
    if n == 1:
        return 0
    period = 2 * n - 2
    i %= period
    return period - i if i >= n else i


def sample_at(img: ImageBuffer, xy, policy: BoundaryPolicy = BoundaryPolicy.REPLICATE):
    """Sample pixel (x, y); out-of-range coordinates fold per `policy`.

    Returns a float for gray images and a length-3 array for RGB.
    """
    x, y = xy
    col = fold_index(int(x), img.width, policy)
    row = fold_index(int(y), img.height, policy)
    value = img.pixels[row, col]
    return float(value) if img.channels == 1 else value


def pad_field(field: np.ndarray, radius: int, policy: BoundaryPolicy) -> np.ndarray:
    """Pad the two leading (row, column) axes of an array per boundary policy."""
    width = [(radius, radius), (radius, radius)] + [(0, 0)] * (field.ndim - 2)
    return np.pad(field, width, mode=_PAD_MODES[policy])


def to_grayscale(img: ImageBuffer) -> ImageBuffer:
    """BT.601 luma of an RGB image; gray images pass through as a copy."""
    if img.channels == 1:
        return ImageBuffer(img.pixels)
    r, g, b = img.pixels[..., 0], img.pixels[..., 1], img.pixels[..., 2]
    wr, wg, wb = LUMA_WEIGHTS
    # This summation order keeps pure white at exactly 1.0.
    luma = r * wr + (g * wg + b * wb)
    return ImageBuffer(np.clip(luma, 0.0, 1.0))


_WS = frozenset(b" \t\n\r\x0b\x0c")


def _skip_filler(data: bytes, pos: int) -> int:
    # Whitespace and '#' comments (running to end of line) separate tokens.
    while pos < len(data):
        byte = data[pos]
        if byte in _WS:
            pos += 1
        elif byte == 0x23:
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
        else:
            break
    return pos


def _read_token(data: bytes, pos: int, what: str):
    pos = _skip_filler(data, pos)
    start = pos
    while pos < len(data) and data[pos] not in _WS and data[pos] != 0x23:
        pos += 1
    if start == pos:
        raise MalformedHeaderError(f"missing {what} token", start)
    return data[start:pos], start, pos


def _read_int(data: bytes, pos: int, what: str):
    token, start, pos = _read_token(data, pos, what)
    try:
        value = int(token)
    except ValueError:
        raise MalformedHeaderError(f"{what} is not an integer: {token!r}", start) from None
    return value, start, pos


def load_pnm(data: bytes) -> ImageBuffer:
    """Decode a binary PGM (P5) or PPM (P6) byte string.

    Samples are scaled to [0, 1] by the declared maxval. Only maxval 255
    (1 byte/sample) and 65535 (2 bytes/sample, big-endian) are supported.
    """
    magic, magic_at, pos = _read_token(data, 0, "magic number")
    if magic not in (b"P5", b"P6"):
        raise MalformedHeaderError(f"expected P5 or P6 magic, got {magic!r}", magic_at)
    channels = 1 if magic == b"P5" else 3
    width, at, pos = _read_int(data, pos, "width")
    if width < 1:
        raise MalformedHeaderError(f"width must be >= 1, got {width}", at)
    height, at, pos = _read_int(data, pos, "height")
    if height < 1:
        raise MalformedHeaderError(f"height must be >= 1, got {height}", at)
    maxval, maxval_at, pos = _read_int(data, pos, "maxval")
    if maxval not in (255, 65535):
        raise UnsupportedMaxvalError(f"unsupported maxval {maxval}", maxval_at)
    if pos >= len(data) or data[pos] not in _WS:
        raise MalformedHeaderError("expected a single whitespace byte after maxval", pos)
    pos += 1
    dtype = np.dtype(">u2") if maxval == 65535 else np.dtype("u1")
    needed = width * height * channels * dtype.itemsize
    payload = data[pos:pos + needed]
    if len(payload) < needed:
        raise TruncatedPayloadError(
            f"payload needs {needed} bytes, found {len(payload)}", pos + len(payload)
        )
    samples = np.frombuffer(payload, dtype=dtype).astype(np.float64) / maxval
    shape = (height, width) if channels == 1 else (height, width, 3)
    return ImageBuffer(samples.reshape(shape))


def save_pnm(img: ImageBuffer) -> bytes:
    """Encode as binary P5 (gray) or P6 (RGB) with maxval 255."""
    magic = b"P5" if img.channels == 1 else b"P6"
    header = b"%s\n%d %d\n255\n" % (magic, img.width, img.height)
    return header + np.round(img.pixels * 255.0).astype(np.uint8).tobytes()
