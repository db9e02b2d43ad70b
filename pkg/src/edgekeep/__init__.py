"""edgekeep: texture-augmented edge-preserving image filtering.

A bilateral filter extended with a steerable-filter-derived texture
similarity term ("multilateral" filtering), together with seeded noise
injectors, SNR / edge-preserving-exponent metrics, and a benchmark harness.
"""

from .bench import BenchReport, BenchRow, run_bench
from .filters import (
    FilterMode,
    FilterParams,
    filter_image,
    filter_oracle,
    weight_bilateral,
    weight_multilateral,
)
from .image import (
    BoundaryPolicy,
    ImageBuffer,
    MalformedHeaderError,
    PnmError,
    TruncatedPayloadError,
    UnsupportedMaxvalError,
    load_pnm,
    sample_at,
    save_pnm,
    to_grayscale,
)
from .kernels import Kernel2D, convolve, gaussian_derivative_kernels, gaussian_kernel
from .metrics import (
    Direction,
    MetricsReport,
    edge_preserving_exponent,
    ep_ratio,
    evaluate_pair,
    snr,
)
from .noise import NoiseSpec, add_noise
from .synth import grating, step_edge, two_texture
from .texture import (
    ORIENTATIONS_DEG,
    EnergyField,
    SubBandSet,
    TextureClass,
    TextureMap,
    TextureParams,
    classify,
    compute_texture_map,
    decompose,
    local_energy,
    texture_distance,
    texture_map_image,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "BenchRow",
    "BoundaryPolicy",
    "Direction",
    "EnergyField",
    "FilterMode",
    "FilterParams",
    "ImageBuffer",
    "Kernel2D",
    "MalformedHeaderError",
    "MetricsReport",
    "NoiseSpec",
    "ORIENTATIONS_DEG",
    "PnmError",
    "SubBandSet",
    "TextureClass",
    "TextureMap",
    "TextureParams",
    "TruncatedPayloadError",
    "UnsupportedMaxvalError",
    "add_noise",
    "classify",
    "compute_texture_map",
    "convolve",
    "decompose",
    "edge_preserving_exponent",
    "ep_ratio",
    "evaluate_pair",
    "filter_image",
    "filter_oracle",
    "gaussian_derivative_kernels",
    "gaussian_kernel",
    "grating",
    "load_pnm",
    "local_energy",
    "run_bench",
    "sample_at",
    "save_pnm",
    "snr",
    "step_edge",
    "texture_distance",
    "texture_map_image",
    "to_grayscale",
    "two_texture",
    "weight_bilateral",
    "weight_multilateral",
]
