"""Command-line front end.

Parses a run configuration from flags (never from environment variables),
invokes the library, and emits delimited tables: CSV with a header row and
twelve significant digits, or JSON carrying the same records.  Repeated runs
with identical configurations produce byte-identical output.  The report
path can additionally render a figure next to the table via ``--plot``.

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .interactions import (
    EmptySectorError,
    QuadratureError,
    Truncation,
    TwoBodyTable,
    exact_diagonalize,
    first_order_level_splitting,
)
from .spectra import Composition, SingleParticleSpectrum, enumerate_levels
from .spinstats import conjugate, decompose_spin_space, physical_state_count
from .symgroup import (
    ClusterSeparationError,
    irrep_dimension,
    kostka_number,
    partitions,
    semistandard_tableaux,
    standard_tableaux,
)
from .unitary import (
    TunnelingAmplitudes,
    near_unitary_splitting,
    tunneling_amplitudes_from_trap,
    unitary_spectrum,
)


class ConfigError(ValueError):
    """Inconsistent or unusable run configuration."""


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    """Validated run configuration assembled from command-line flags."""

    command: str
    trap: SingleParticleSpectrum | None = None
    trap_name: str = ""
    n_particles: int = 0
    statistics: str | None = None
    components: int | None = None
    interaction: TwoBodyTable | None = None
    coupling: float = 1.0
    truncation: Truncation | None = None
    order: int = 80
    quad_tol: float = 1e-9
    output_format: str = "csv"
    output: str | None = None
    plot: str | None = None
    threads: int = 1
    extras: dict = field(default_factory=dict)


def _parse_shape(text: str) -> tuple[int, ...]:
    try:
        shape = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"shape must be comma-separated integers, got {text!r}") from exc
    if not shape or any(p <= 0 for p in shape) or list(shape) != sorted(shape, reverse=True):
        raise ConfigError(f"shape must be a partition (weakly decreasing, positive), got {text!r}")
    return shape


def _parse_content(text: str) -> tuple[int, ...]:
    try:
        content = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"content must be comma-separated integers, got {text!r}") from exc
    if not content or any(p < 0 for p in content):
        raise ConfigError(f"content must be nonnegative integers, got {text!r}")
    return content


def _parse_spin(text: str) -> int:
    try:
        j = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"spin must be a fraction like 1/2 or 1, got {text!r}") from exc
    kappa = 2 * j + 1
    if j < 0 or kappa.denominator != 1:
        raise ConfigError(f"spin must be a nonnegative half-integer, got {text!r}")
    return int(kappa)


def _parse_sweep(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"sweep must look like start:stop:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"sweep must look like start:stop:count, got {text!r}") from exc
    if count < 2:
        raise ConfigError("sweep count must be at least 2")
    return lo, hi, count


def _resolve_trap(name: str) -> tuple[SingleParticleSpectrum, str]:
    if name == "harmonic":
        return SingleParticleSpectrum.harmonic(), "harmonic"
    if name == "well":
        return SingleParticleSpectrum.square_well(), "well"
    path = Path(name)
    if not path.exists():
        raise ConfigError(f"trap must be 'harmonic', 'well', or a level-table file; no file {name!r}")
    return SingleParticleSpectrum.from_file(path), f"table:{path.name}"


def _gaussian_kernel(r: np.ndarray) -> np.ndarray:
    return np.exp(-np.square(r))


def _resolve_interaction(name: str, g: float, order: int, tol: float) -> TwoBodyTable:
    if name == "contact":
        return TwoBodyTable.contact(g, order=order, error_tol=tol)
    if name == "gaussian":
        return TwoBodyTable.from_kernel(_gaussian_kernel, strength=g, order=order, error_tol=tol)
    path = Path(name)
    if not path.exists():
        raise ConfigError(
            f"interaction must be 'contact', 'gaussian', or a kernel file; no file {name!r}"
        )
    return TwoBodyTable.from_kernel_file(path, strength=g, order=order, error_tol=tol)


def _resolve_level_window(ns: argparse.Namespace, n: int, trap_kind: str) -> Truncation:
    has_x = getattr(ns, "xmax", None) is not None
    has_e = getattr(ns, "emax", None) is not None
    if has_x == has_e:
        raise ConfigError("exactly one of --xmax and --emax is required")
    if has_x:
        if trap_kind != "harmonic":
            raise ConfigError("--xmax counts oscillator quanta; use --emax for this trap")
        if ns.xmax < 0:
            raise ConfigError("--xmax must be nonnegative")
        return Truncation("excitation", float(ns.xmax))
    return Truncation("energy", float(ns.emax))


def _energy_unit(trap_name: str) -> str:
    if trap_name == "harmonic":
        return "hbar*omega"
    if trap_name == "well":
        return "hbar^2 pi^2/(2 m L^2)"
    return "table units"


def _shape_text(shape: Sequence[int]) -> str:
    return "[" + " ".join(str(p) for p in shape) + "]"


# ---------------------------------------------------------------------------
# record emission
# ---------------------------------------------------------------------------


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _emit(records: list[dict], cfg: RunConfig, stream) -> None:
    if cfg.output_format == "json":
        canonical = [
            {k: (float(format(v, ".12g")) if isinstance(v, float) else v) for k, v in r.items()}
            for r in records
        ]
        stream.write(json.dumps(canonical, indent=2))
        stream.write("\n")
        return
    if records:
        keys = list(records[0])
        stream.write(",".join(keys) + "\n")
        for r in records:
            stream.write(",".join(_csv_cell(r[k]) for k in keys) + "\n")


def _write_output(records: list[dict], cfg: RunConfig) -> None:
    if cfg.output is None:
        _emit(records, cfg, sys.stdout)
        return
    with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
        _emit(records, cfg, fh)


# ---------------------------------------------------------------------------
# subcommand: tableaux
# ---------------------------------------------------------------------------


def cmd_tableaux(cfg: RunConfig) -> list[dict]:
    n = cfg.n_particles
    shape = cfg.extras.get("shape")
    content = cfg.extras.get("content")
    shapes = (shape,) if shape is not None else partitions(n)
    for sh in shapes:
        if sum(sh) != n:
            raise ConfigError(f"shape {_shape_text(sh)} does not hold {n} boxes")
    if content is not None and sum(content) != n:
        raise ConfigError(f"content {content} does not sum to {n}")
    records = []
    for sh in shapes:
        dim = irrep_dimension(sh)
        for idx, tab in enumerate(standard_tableaux(sh)):
            records.append(
                {
                    "shape": _shape_text(sh),
                    "dimension": dim,
                    "kind": "standard",
                    "index": idx,
                    "filling": str(tab),
                    "count": dim,
                }
            )
        if content is not None:
            kostka = kostka_number(sh, content)
            for idx, tab in enumerate(semistandard_tableaux(sh, content)):
                records.append(
                    {
                        "shape": _shape_text(sh),
                        "dimension": dim,
                        "kind": "semistandard",
                        "index": idx,
                        "filling": str(tab),
                        "count": kostka,
                    }
                )
    return records


# ---------------------------------------------------------------------------
# subcommand: spectrum
# ---------------------------------------------------------------------------


def _truncation_energy(cfg: RunConfig) -> float:
    t = cfg.truncation
    if t.kind == "excitation":
        return cfg.n_particles * 0.5 + t.value
    return t.value


def cmd_spectrum(cfg: RunConfig) -> list[dict]:
    unit = _energy_unit(cfg.trap_name)
    levels = enumerate_levels(cfg.trap, cfg.n_particles, _truncation_energy(cfg) + 1e-9)
    records = []
    for li, lv in enumerate(levels):
        content = " ".join(f"{m}x{lab}" for lab, m in lv.irrep_content)
        for comp in lv.compositions:
            records.append(
                {
                    "level": li,
                    f"energy ({unit})": lv.energy,
                    "composition": comp.label(),
                    "orderings": comp.degeneracy(),
                    "level_degeneracy": lv.degeneracy,
                    "irrep_content": content,
                    "flag": lv.flag or "none",
                }
            )
    return records


# ---------------------------------------------------------------------------
# subcommand: spin
# ---------------------------------------------------------------------------


def cmd_spin(cfg: RunConfig) -> list[dict]:
    decomp = decompose_spin_space(cfg.n_particles, cfg.components)
    records = []
    for sector in decomp.sectors:
        spatial = conjugate(sector.shape) if cfg.statistics == "fermion" else sector.shape
        records.append(
            {
                "spin_shape": _shape_text(sector.shape),
                "total_spin": "none" if sector.spin is None else format(float(sector.spin), ".12g"),
                "multiplicity": sector.multiplicity,
                "spatial_shape": _shape_text(spatial),
                "states_per_level": physical_state_count(spatial, cfg.statistics, cfg.components),
            }
        )
    return records


# ---------------------------------------------------------------------------
# subcommand: splitting
# ---------------------------------------------------------------------------


def _weak_level(cfg: RunConfig, index: int):
    s = cfg.trap
    n = cfg.n_particles
    base = n * s.energy(0)
    step = max(s.energy(1) - s.energy(0), 1e-6)
    for attempt in range(24):
        try:
            levels = enumerate_levels(s, n, base + step * 2.0**attempt + 1e-9)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if len(levels) > index:
            return levels[index]
        if s.size is not None and len(levels) == math.comb(s.size + n - 1, n):
            break
    raise ConfigError(f"level index {index} beyond the available spectrum")


def _entry_records(result, unit_label: str, base_key: str, base_value: float) -> list[dict]:
    records = []
    for e in result.entries:
        records.append(
            {
                base_key: base_value,
                "irrep": _shape_text(e.label.shape),
                "parity": e.label.parity,
                unit_label: e.shift,
                "count": e.multiplicity,
                "coincident": "true" if e.coincident else "false",
            }
        )
    return records


def _near_unitary_amps(cfg: RunConfig, level) -> TunnelingAmplitudes:
    n = cfg.n_particles
    ex = cfg.extras
    sources = sum(1 for k in ("t", "amps", "from_trap") if ex.get(k) is not None and ex.get(k) is not False)
    if sources != 1:
        raise ConfigError("give exactly one of --t, --amps, --from-trap")
    if ex.get("from_trap"):
        return tunneling_amplitudes_from_trap(cfg.trap, level, cfg.coupling, order=cfg.order)
    if ex.get("amps") is not None:
        try:
            values = tuple(float(p) for p in ex["amps"].split(","))
        except ValueError as exc:
            raise ConfigError(f"--amps must be comma-separated numbers, got {ex['amps']!r}") from exc
        if len(values) != n - 1:
            raise ConfigError(f"--amps needs {n - 1} values for {n} particles, got {len(values)}")
        return TunnelingAmplitudes(values, symmetric=values == values[::-1])
    t = ex["t"]
    u = ex.get("u")
    if n == 2:
        if u is not None:
            raise ConfigError("--u only applies to the four-particle shorthand")
        return TunnelingAmplitudes((t,), symmetric=True)
    if n == 3:
        if u is not None:
            raise ConfigError("--u only applies to the four-particle shorthand")
        return TunnelingAmplitudes((t, t), symmetric=True)
    if n == 4:
        if u is None:
            raise ConfigError("four particles need both --t and --u (or --amps)")
        return TunnelingAmplitudes.symmetric_pair(t, u)
    raise ConfigError("--t/--u shorthand covers up to four particles; use --amps")


def cmd_splitting(cfg: RunConfig) -> list[dict]:
    unit = _energy_unit(cfg.trap_name)
    sweep = cfg.extras.get("sweep")
    index = cfg.extras.get("level", 0)
    if cfg.extras["mode"] == "weak":
        level = _weak_level(cfg, index)
        result = first_order_level_splitting(level, cfg.interaction, cfg.trap)
        if sweep is None:
            return _entry_records(
                result, f"shift ({unit})", f"base_energy ({unit})", result.base_energy
            )
        lo, hi, count = sweep
        records = []
        for g in np.linspace(lo, hi, count):
            for e in result.entries:
                records.append(
                    {
                        "sweep (g)": float(g),
                        f"energy ({unit})": result.base_energy + e.shift * g / cfg.coupling,
                        "irrep": _shape_text(e.label.shape),
                        "parity": e.label.parity,
                        "count": e.multiplicity,
                    }
                )
        return records

    try:
        levels = unitary_spectrum(cfg.trap, cfg.n_particles, index + 1)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    level = levels[index]
    shift_unit = f"shift ({unit})" if cfg.extras.get("from_trap") else "shift (amplitude units)"
    if sweep is None:
        amps = _near_unitary_amps(cfg, level)
        result = near_unitary_splitting(level, amps)
        return _entry_records(result, shift_unit, f"base_energy ({unit})", result.base_energy)
    if cfg.n_particles != 4:
        raise ConfigError("--sweep in near-unitary mode describes the four-particle diagram")
    lo, hi, count = sweep
    records = []
    for ratio in np.linspace(lo, hi, count):
        result = near_unitary_splitting(level, TunnelingAmplitudes.symmetric_pair(float(ratio), 1.0))
        for e in result.entries:
            records.append(
                {
                    "sweep (t/u)": float(ratio),
                    "shift (amplitude units)": e.shift,
                    "irrep": _shape_text(e.label.shape),
                    "parity": e.label.parity,
                    "count": e.multiplicity,
                }
            )
    return records


# ---------------------------------------------------------------------------
# subcommand: unitary
# ---------------------------------------------------------------------------


def cmd_unitary(cfg: RunConfig) -> list[dict]:
    unit = _energy_unit(cfg.trap_name)
    try:
        levels = unitary_spectrum(cfg.trap, cfg.n_particles, cfg.extras["count"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    records = []
    for li, lv in enumerate(levels):
        records.append(
            {
                "level": li,
                f"energy ({unit})": lv.energy,
                "composition": lv.composition.label(),
                "degeneracy": lv.degeneracy,
                "parity": "none" if lv.parity is None else f"{lv.parity:+d}",
            }
        )
    return records


# ---------------------------------------------------------------------------
# subcommand: exactdiag
# ---------------------------------------------------------------------------


def cmd_exactdiag(cfg: RunConfig) -> list[dict]:
    unit = _energy_unit(cfg.trap_name)
    sector = cfg.extras.get("sector")
    if cfg.statistics is not None:
        sector = (cfg.statistics, cfg.components)
    try:
        result = exact_diagonalize(
            cfg.trap, cfg.n_particles, cfg.interaction, cfg.truncation, sector=sector
        )
    except ValueError as exc:
        if isinstance(exc, EmptySectorError):
            raise
        raise ConfigError(str(exc)) from exc
    count = cfg.extras.get("count")
    records = []
    for tower in result.towers:
        values = tower.eigenvalues if count is None else tower.eigenvalues[:count]
        spin_mult = "none" if tower.spin_multiplicity is None else tower.spin_multiplicity
        for idx, value in enumerate(values):
            records.append(
                {
                    "irrep": _shape_text(tower.shape),
                    "block_dimension": tower.dimension,
                    "spin_multiplicity": spin_mult,
                    "index": idx,
                    f"energy ({unit})": float(value),
                    "basis_dimension": result.reduced_dimension,
                }
            )
    return records


# ---------------------------------------------------------------------------
# plotting
# ---------------------------------------------------------------------------


def _render_plot(records: list[dict], cfg: RunConfig) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    energy_key = next((k for k in records[0] if k.startswith(("energy", "shift"))), None)
    sweep_key = next((k for k in records[0] if k.startswith("sweep")), None)
    if sweep_key is not None:
        series: dict[str, list[tuple[float, float]]] = {}
        for r in records:
            label = f"{r['irrep']}{r['parity'] if r['parity'] != 'none' else ''}"
            series.setdefault(label, []).append((r[sweep_key], r[energy_key]))
        for label, pts in series.items():
            xs, ys = zip(*sorted(set(pts)))
            ax.plot(xs, ys, label=label)
        ax.set_xlabel(sweep_key)
        ax.legend(fontsize=7, ncol=2)
    elif energy_key is not None:
        labels = []
        for x, r in enumerate(records):
            ax.hlines(r[energy_key], x + 0.1, x + 0.9)
            tag = r.get("irrep") or r.get("composition") or str(x)
            parity = r.get("parity", "none")
            labels.append(f"{tag}{parity if parity not in ('none', None) else ''}")
        ax.set_xticks([x + 0.5 for x in range(len(records))])
        ax.set_xticklabels(labels, rotation=60, fontsize=6)
    else:
        ax.axis("off")
        ax.text(0.5, 0.5, "no plottable columns", ha="center")
    if energy_key is not None:
        ax.set_ylabel(energy_key)
    ax.set_title(f"{cfg.command} N={cfg.n_particles} {cfg.trap_name}".strip())
    fig.tight_layout()
    kwargs = {"metadata": {"Date": None}} if str(cfg.plot).endswith(".svg") else {}
    fig.savefig(cfg.plot, dpi=110, **kwargs)
    plt.close(fig)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snspec",
        description="Permutation-symmetry spectroscopy of trapped one-dimensional few-body systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trap=False, interaction=False, window=False, plot=False):
        p.add_argument("--format", choices=("csv", "json"), default="csv", help="output table format")
        p.add_argument("--output", metavar="FILE", help="write the table to FILE instead of stdout")
        p.add_argument("--threads", type=int, default=1, help="parallelism hint forwarded to the library")
        if trap:
            p.add_argument(
                "--trap",
                default="harmonic",
                help="'harmonic', 'well', or a level-table file (default: harmonic)",
            )
        if interaction:
            p.add_argument(
                "--interaction",
                default="contact",
                help="'contact', 'gaussian', or a kernel sample file (default: contact)",
            )
            p.add_argument("--g", type=float, default=1.0, help="coupling strength (default: 1)")
            p.add_argument("--order", type=int, default=80, help="quadrature order for matrix elements")
            p.add_argument(
                "--quad-tol", type=float, default=1e-9, help="relative quadrature error tolerance"
            )
        if window:
            p.add_argument("--xmax", type=float, help="truncation in oscillator quanta above the ground level")
            p.add_argument("--emax", type=float, help="truncation as a total energy")
        if plot:
            p.add_argument("--plot", metavar="FILE", help="also render a figure to FILE")

    p = sub.add_parser("tableaux", help="shapes, dimensions, standard/semistandard fillings")
    p.add_argument("--n", type=int, required=True, help="number of boxes (particles)")
    p.add_argument("--shape", help="restrict to one partition, e.g. 3,1")
    p.add_argument("--content", help="also list semistandard fillings of this content, e.g. 2,1,1")
    common(p)

    p = sub.add_parser("spectrum", help="noninteracting levels with irrep content")
    p.add_argument("--n", type=int, required=True, help="number of particles")
    common(p, trap=True, window=True, plot=True)

    p = sub.add_parser("spin", help="spin-space decomposition and physical state counts")
    p.add_argument("--n", type=int, required=True, help="number of particles")
    p.add_argument("--statistics", choices=("fermion", "boson"), required=True)
    p.add_argument("--j", required=True, help="spin quantum number, e.g. 1/2 or 1")
    common(p)

    p = sub.add_parser("splitting", help="first-order level splitting, weak or near-unitary")
    p.add_argument("--mode", choices=("weak", "near-unitary"), required=True)
    p.add_argument("--n", type=int, required=True, help="number of particles")
    p.add_argument("--level", type=int, default=0, help="level index in the unperturbed ladder")
    p.add_argument("--t", type=float, help="near-unitary: edge tunneling amplitude")
    p.add_argument("--u", type=float, help="near-unitary: central amplitude (four particles)")
    p.add_argument("--amps", help="near-unitary: explicit comma-separated amplitudes")
    p.add_argument(
        "--from-trap",
        action="store_true",
        help="near-unitary: derive amplitudes from the trap at coupling --g",
    )
    p.add_argument("--sweep", help="start:stop:count sweep of g (weak) or t/u (near-unitary)")
    common(p, trap=True, interaction=True, plot=True)

    p = sub.add_parser("unitary", help="hard-core-limit level ladder")
    p.add_argument("--n", type=int, required=True, help="number of particles")
    p.add_argument("--count", type=int, default=10, help="how many levels to list")
    common(p, trap=True, plot=True)

    p = sub.add_parser("exactdiag", help="interacting eigenvalues, one tower per irrep")
    p.add_argument("--n", type=int, required=True, help="number of particles")
    p.add_argument("--sector", help="restrict to one spatial irrep, e.g. 2,2")
    p.add_argument("--statistics", choices=("fermion", "boson"), help="restrict to physical sectors")
    p.add_argument("--j", help="spin quantum number for --statistics")
    p.add_argument("--count", type=int, help="eigenvalues to keep per tower")
    common(p, trap=True, interaction=True, window=True, plot=True)

    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, output_format=getattr(ns, "format", "csv"))
    cfg.output = getattr(ns, "output", None)
    cfg.plot = getattr(ns, "plot", None)
    cfg.threads = getattr(ns, "threads", 1)
    if cfg.threads < 1:
        raise ConfigError("--threads must be at least 1")
    n = getattr(ns, "n", None)
    if n is not None:
        if n < 1:
            raise ConfigError("--n must be at least 1")
        cfg.n_particles = n

    if hasattr(ns, "trap"):
        cfg.trap, cfg.trap_name = _resolve_trap(ns.trap)
    if hasattr(ns, "order"):
        if ns.order < 2:
            raise ConfigError("--order must be at least 2")
        if ns.quad_tol <= 0:
            raise ConfigError("--quad-tol must be positive")
        cfg.order, cfg.quad_tol, cfg.coupling = ns.order, ns.quad_tol, ns.g
    if hasattr(ns, "interaction") and ns.command != "splitting":
        cfg.interaction = _resolve_interaction(ns.interaction, cfg.coupling, cfg.order, cfg.quad_tol)
    if hasattr(ns, "xmax"):
        cfg.truncation = _resolve_level_window(ns, cfg.n_particles, cfg.trap.kind)

    if ns.command == "tableaux":
        cfg.extras["shape"] = _parse_shape(ns.shape) if ns.shape else None
        cfg.extras["content"] = _parse_content(ns.content) if ns.content else None
    elif ns.command == "spin":
        cfg.statistics = ns.statistics
        cfg.components = _parse_spin(ns.j)
    elif ns.command == "splitting":
        cfg.extras["mode"] = ns.mode
        cfg.extras["level"] = ns.level
        if ns.level < 0:
            raise ConfigError("--level must be nonnegative")
        cfg.extras["sweep"] = _parse_sweep(ns.sweep) if ns.sweep else None
        if ns.mode == "weak":
            cfg.interaction = _resolve_interaction(ns.interaction, ns.g, cfg.order, cfg.quad_tol)
            for flag in ("t", "u", "amps"):
                if getattr(ns, flag) is not None:
                    raise ConfigError(f"--{flag} only applies to --mode near-unitary")
            if ns.from_trap:
                raise ConfigError("--from-trap only applies to --mode near-unitary")
        else:
            cfg.extras["t"] = ns.t
            cfg.extras["u"] = ns.u
            cfg.extras["amps"] = ns.amps
            cfg.extras["from_trap"] = ns.from_trap
            if ns.sweep and (ns.t is not None or ns.amps is not None or ns.from_trap):
                raise ConfigError("--sweep sets its own amplitudes; drop --t/--amps/--from-trap")
    elif ns.command == "unitary":
        if ns.count < 1:
            raise ConfigError("--count must be at least 1")
        cfg.extras["count"] = ns.count
    elif ns.command == "exactdiag":
        if ns.sector is not None and ns.statistics is not None:
            raise ConfigError("--sector and --statistics are mutually exclusive")
        if (ns.statistics is None) != (ns.j is None):
            raise ConfigError("--statistics and --j go together")
        cfg.extras["sector"] = _parse_shape(ns.sector) if ns.sector else None
        cfg.statistics = ns.statistics
        if ns.j is not None:
            cfg.components = _parse_spin(ns.j)
        if ns.count is not None and ns.count < 1:
            raise ConfigError("--count must be at least 1")
        cfg.extras["count"] = ns.count
    return cfg


_COMMANDS = {
    "tableaux": cmd_tableaux,
    "spectrum": cmd_spectrum,
    "spin": cmd_spin,
    "splitting": cmd_splitting,
    "unitary": cmd_unitary,
    "exactdiag": cmd_exactdiag,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, execute the subcommand, and return the exit status."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config_from_args(ns)
        records = _COMMANDS[cfg.command](cfg)
        _write_output(records, cfg)
        if cfg.plot is not None and records:
            _render_plot(records, cfg)
    except (ConfigError, EmptySectorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, ClusterSeparationError, np.linalg.LinAlgError, RuntimeError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
