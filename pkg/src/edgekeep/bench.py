"""Benchmark harness: the three comparison sweeps behind the evaluation tables.

Three sweeps are produced from seeded noisy images:

* comparison      -- SNR and edge-preserving exponents for bilateral vs
                     multilateral on each (image, noise kind) cell;
* density sweep   -- the multilateral/bilateral exponent ratio as the
                     salt-and-pepper density grows;
* sigma_t sweep   -- how metrics respond to the texture-weight scale.

Every cell is a pure function of (image, base seed), so repeated runs emit
byte-identical reports.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .filters import FilterMode, FilterParams, filter_image
from .image import ImageBuffer
from .metrics import edge_preserving_exponent, evaluate_pair
from .noise import NoiseSpec, add_noise
from .synth import step_edge, two_texture

#: Two-pass parameters used for every bench cell. sigma_r must stay
#: comparable to the impulse amplitude: far below it the range term alone
#: rejects impulse neighbors and the texture term never engages.
BENCH_FILTER_PARAMS = FilterParams(window_radius=2, sigma_d=2.0, sigma_r=0.2,
                                   sigma_t=1.0, passes=2)

DENSITY_SWEEP = (0.01, 0.03, 0.05, 0.07)
SIGMA_T_SWEEP = (0.1, 1.0, 10.0, 100.0)
DEFAULT_BASE_SEED = 20260809

CSV_HEADER = "image,noise,param,filter,snr_db,ep_h,ep_v"


@dataclass(frozen=True)
class BenchRow:
    image: str
    noise: str
    param: str
    filter: str
    snr_db: float | None
    ep_h: float | None
    ep_v: float | None


@dataclass(frozen=True)
class BenchReport:
    comparison: tuple[BenchRow, ...]
    density_sweep: tuple[BenchRow, ...]
    sigma_t_sweep: tuple[BenchRow, ...]

    def all_rows(self) -> tuple[BenchRow, ...]:
        return self.comparison + self.density_sweep + self.sigma_t_sweep


def default_images() -> list[tuple[str, ImageBuffer]]:
    """Hermetic stand-ins for the unavailable photographic test images."""
    return [("step-edge", step_edge(64)), ("two-texture", two_texture(128))]


def cell_seed(base_seed: int, label: str) -> int:
    """Stable per-cell seed derivation, independent of cell ordering."""
    return (base_seed ^ zlib.crc32(label.encode())) & 0xFFFFFFFFFFFFFFFF


def _both_filters(noisy: ImageBuffer) -> tuple[ImageBuffer, ImageBuffer]:
    bi = filter_image(noisy, BENCH_FILTER_PARAMS, FilterMode.BILATERAL)
    multi = filter_image(noisy, BENCH_FILTER_PARAMS, FilterMode.MULTILATERAL)
    return bi, multi


def _comparison_cell(name: str, img: ImageBuffer, kind: str, base_seed: int) -> list[BenchRow]:
    spec = NoiseSpec(kind=kind, seed=cell_seed(base_seed, f"comparison/{name}/{kind}"))
    noisy = add_noise(img, spec)
    bi, multi = _both_filters(noisy)
    rows = []
    for label, out in (("bilateral", bi), ("multilateral", multi)):
        report = evaluate_pair(noisy, out)
        rows.append(BenchRow(name, kind, "", label, report.snr_db,
                             report.ep_horizontal, report.ep_vertical))
    return rows


def _density_cell(img: ImageBuffer, density: float, base_seed: int) -> list[BenchRow]:
    spec = NoiseSpec(kind="salt-pepper", density=density,
                     seed=cell_seed(base_seed, f"density/{density:g}"))
    noisy = add_noise(img, spec)
    bi, multi = _both_filters(noisy)
    param = f"{density:g}"
    rows = []
    ratios = {}
    for direction in ("horizontal", "vertical"):
        ep_bi = edge_preserving_exponent(noisy, bi, direction)
        ep_multi = edge_preserving_exponent(noisy, multi, direction)
        ratio = None
        if ep_bi not in (None, 0.0) and ep_multi is not None:
            ratio = ep_multi / ep_bi
        ratios[direction] = ratio
    for label, out in (("bilateral", bi), ("multilateral", multi)):
        report = evaluate_pair(noisy, out)
        rows.append(BenchRow("two-texture", "salt-pepper", param, label,
                             report.snr_db, report.ep_horizontal, report.ep_vertical))
    rows.append(BenchRow("two-texture", "salt-pepper", param, "ratio-multi-bi",
                         None, ratios["horizontal"], ratios["vertical"]))
    return rows


def _sigma_t_cell(noisy: ImageBuffer, sigma_t: float) -> list[BenchRow]:
    params = FilterParams(window_radius=BENCH_FILTER_PARAMS.window_radius,
                          sigma_d=BENCH_FILTER_PARAMS.sigma_d,
                          sigma_r=BENCH_FILTER_PARAMS.sigma_r,
                          sigma_t=sigma_t, passes=BENCH_FILTER_PARAMS.passes)
    out = filter_image(noisy, params, FilterMode.MULTILATERAL)
    report = evaluate_pair(noisy, out)
    return [BenchRow("two-texture", "salt-pepper", f"{sigma_t:g}", "multilateral",
                     report.snr_db, report.ep_horizontal, report.ep_vertical)]


def run_bench(images: list[tuple[str, ImageBuffer]] | None = None,
              base_seed: int = DEFAULT_BASE_SEED, threads: int = 1) -> BenchReport:
    """Evaluate every bench cell, optionally spreading cells over threads.

    The comparison sweep runs on the given images (synthetic defaults when
    None); the density and sigma_t sweeps always use the 128x128 two-texture
    image their trends are defined on.
    """
    if images is None:
        images = default_images()
    sweep_img = two_texture(128)
    sigma_t_noisy = add_noise(sweep_img, NoiseSpec(
        kind="salt-pepper", density=0.05, seed=cell_seed(base_seed, "sigma-t")))

    tasks = []
    for name, img in images:
        for kind in ("salt-pepper", "gaussian"):
            tasks.append(("comparison", lambda n=name, i=img, k=kind:
                          _comparison_cell(n, i, k, base_seed)))
    for density in DENSITY_SWEEP:
        tasks.append(("density", lambda d=density: _density_cell(sweep_img, d, base_seed)))
    for sigma_t in SIGMA_T_SWEEP:
        tasks.append(("sigma_t", lambda s=sigma_t: _sigma_t_cell(sigma_t_noisy, s)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda task: task[1](), tasks))
    else:
        results = [task[1]() for task in tasks]

    sections = {"comparison": [], "density": [], "sigma_t": []}
    for (section, _), rows in zip(tasks, results):
        sections[section].extend(rows)
    return BenchReport(comparison=tuple(sections["comparison"]),
                       density_sweep=tuple(sections["density"]),
                       sigma_t_sweep=tuple(sections["sigma_t"]))


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.image},{r.noise},{r.param},{r.filter},"
                     f"{_fmt(r.snr_db)},{_fmt(r.ep_h)},{_fmt(r.ep_v)}")
    return "\n".join(lines) + "\n"


def report_to_csv(report: BenchReport) -> str:
    return rows_to_csv(report.all_rows())


def report_to_markdown(report: BenchReport) -> str:
    def table(rows):
        out = ["| image | noise | param | filter | snr_db | ep_h | ep_v |",
               "| --- | --- | --- | --- | --- | --- | --- |"]
        for r in rows:
            out.append(f"| {r.image} | {r.noise} | {r.param} | {r.filter} | "
                       f"{_fmt(r.snr_db)} | {_fmt(r.ep_h)} | {_fmt(r.ep_v)} |")
        return "\n".join(out)

    parts = [
        "# edgekeep benchmark report",
        "",
        "## Filter comparison (bilateral vs multilateral)",
        "",
        table(report.comparison),
        "",
        "## Salt-and-pepper density sweep (edge-preservation ratio)",
        "",
        table(report.density_sweep),
        "",
        "## Texture-scale (sigma_t) sweep",
        "",
        table(report.sigma_t_sweep),
        "",
    ]
    return "\n".join(parts)
