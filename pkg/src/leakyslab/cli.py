"""Command-line front end: every computation as a reproducible, file-emitting subcommand.

Outputs are CSV by default (``#``-prefixed metadata lines recording the
exact flags, then a header row) or JSON; identical flags produce
byte-identical files.  Complex columns are split into re_/im_ pairs.
No plotting here: the tool emits data for external renderers.

Exit codes: 0 success, 2 validation problem, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bpm import BpmConfig, Propagator, measure_decay, tapered_mode_column
from .core import SlabConfig
from .errors import LeakySlabError
from .fbw import FbwLine, fourier_coefficient, lineshape
from .fields import FieldGrid, default_render_grids, mode_profile, propagate_mode
from .resonances import approximate_resonances, refine_all
from .scattering import Curve, transmission_sweep
from .shift import shift_sweep, width_sweep

OUTDIR_ENV = "LEAKYSLAB_OUTDIR"


def parse_grid(spec: str) -> np.ndarray:
    """Parse 'start:stop:count' into an inclusive linspace."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:count, got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ValueError(f"bad grid specification {spec!r}: {exc}") from None
    if count < 1:
        raise ValueError(f"grid count must be >= 1, got {count}")
    if count > 1 and stop <= start:
        raise ValueError(f"grid stop must exceed start, got {spec!r}")
    return np.linspace(start, stop, count)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    return p


class _Sink:
    """Write to a file or stdout."""

    def __init__(self, path: Path | None):
        self.path = path

    def write(self, text: str):
        if self.path is None:
            sys.stdout.write(text)
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(text)


def _meta_lines(command: str, meta: dict) -> list[str]:
    lines = [f"# leakyslab {command} v{__version__}"]
    for key in sorted(meta):
        lines.append(f"# {key}={_fmt(meta[key])}")
    return lines


def _split_complex(name: str, col: np.ndarray) -> list[tuple[str, np.ndarray]]:
    if np.iscomplexobj(col):
        return [(f"re_{name}", col.real), (f"im_{name}", col.imag)]
    return [(name, col)]


def curve_to_csv(curve: Curve, command: str, meta: dict) -> str:
    cols = [(curve.labels[0], curve.abscissa)]
    values = curve.values if curve.values.ndim == 2 else curve.values[:, None]
    for j, name in enumerate(curve.labels[1:]):
        cols.extend(_split_complex(name, values[:, j]))
    lines = _meta_lines(command, meta)
    lines.append(",".join(name for name, _ in cols))
    for i in range(len(curve.abscissa)):
        lines.append(",".join(_fmt(float(col[i])) for _, col in cols))
    return "\n".join(lines) + "\n"


def curve_to_json(curve: Curve, command: str, meta: dict) -> str:
    cols = [(curve.labels[0], curve.abscissa)]
    values = curve.values if curve.values.ndim == 2 else curve.values[:, None]
    for j, name in enumerate(curve.labels[1:]):
        cols.extend(_split_complex(name, values[:, j]))
    doc = {
        "command": command,
        "meta": {k: meta[k] for k in sorted(meta)},
        "columns": {name: [float(v) for v in col] for name, col in cols},
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def grid_to_csv(grid: FieldGrid, component: str, command: str, meta: dict) -> str:
    comp = _component(grid.amplitudes, component)
    lines = _meta_lines(command, meta)
    lines.append(f"x,z,{component}_E")
    for i, xv in enumerate(grid.x_grid):
        for j, zv in enumerate(grid.z_grid):
            lines.append(f"{_fmt(float(xv))},{_fmt(float(zv))},{_fmt(float(comp[i, j]))}")
    return "\n".join(lines) + "\n"


def grid_to_json(grid: FieldGrid, command: str, meta: dict) -> str:
    doc = {
        "command": command,
        "meta": {k: meta[k] for k in sorted(meta)},
        "x": [float(v) for v in grid.x_grid],
        "z": [float(v) for v in grid.z_grid],
        "re": [[float(v) for v in row] for row in grid.amplitudes.real],
        "im": [[float(v) for v in row] for row in grid.amplitudes.imag],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def field_grid_from_json(path: Path) -> FieldGrid:
    doc = json.loads(path.read_text())
    amps = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    return FieldGrid(
        x_grid=np.asarray(doc["x"], dtype=float),
        z_grid=np.asarray(doc["z"], dtype=float),
        amplitudes=amps,
    )


def _component(amplitudes: np.ndarray, which: str) -> np.ndarray:
    if which == "re":
        return amplitudes.real
    if which == "im":
        return amplitudes.imag
    if which == "abs2":
        return np.abs(amplitudes) ** 2
    raise ValueError(f"component must be re|im|abs2, got {which!r}")


def _slab_from(args) -> SlabConfig:
    return SlabConfig(half_width_A=args.k0a, core_index_U0=args.u0)


def cmd_resonances(args) -> int:
    slab = _slab_from(args)
    modes = approximate_resonances(slab)
    meta = {"k0a": args.k0a, "u0": args.u0, "refine": args.refine}
    if not modes:
        sys.stderr.write(
            "warning: no admissible mode index for this slab (empty interval)\n"
        )
    elif args.refine:
        modes = refine_all(modes, slab)
    header = "m,eps_R,half_width_Gamma,residual,method"
    lines = _meta_lines("resonances", meta)
    lines.append(header)
    for res in modes:
        lines.append(
            f"{res.mode_index_m},{_fmt(res.eigenvalue.eps_R)},"
            f"{_fmt(res.eigenvalue.half_width_Gamma)},{_fmt(res.residual)},{res.method}"
        )
    text = "\n".join(lines) + "\n"
    if args.format == "json":
        doc = {
            "command": "resonances",
            "meta": meta,
            "modes": [
                {
                    "m": res.mode_index_m,
                    "eps_R": res.eigenvalue.eps_R,
                    "half_width_Gamma": res.eigenvalue.half_width_Gamma,
                    "residual": res.residual,
                    "method": res.method,
                }
                for res in modes
            ],
        }
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    _Sink(_resolve_out(args.output)).write(text)
    return 2 if not modes else 0


def _emit_curve(curve: Curve, args, command: str, meta: dict) -> int:
    if args.format == "json":
        text = curve_to_json(curve, command, meta)
    else:
        text = curve_to_csv(curve, command, meta)
    _Sink(_resolve_out(args.output)).write(text)
    return 0


def cmd_transmission(args) -> int:
    slab = _slab_from(args)
    grid = parse_grid(args.eps)
    curve = transmission_sweep(grid, slab)
    return _emit_curve(
        curve, args, "transmission", {"k0a": args.k0a, "u0": args.u0, "eps": args.eps}
    )


def cmd_shift(args) -> int:
    if args.eps is not None and args.k0a_sweep is not None:
        raise ValueError("choose either --eps or --eps-fixed with --k0a-sweep")
    if args.eps is not None:
        slab = _slab_from(args)
        curve = shift_sweep(parse_grid(args.eps), slab)
        meta = {"k0a": args.k0a, "u0": args.u0, "eps": args.eps}
    else:
        if args.eps_fixed is None or args.k0a_sweep is None:
            raise ValueError("width sweep needs both --eps-fixed and --k0a-sweep")
        curve = width_sweep(args.eps_fixed, parse_grid(args.k0a_sweep), args.u0)
        meta = {"eps_fixed": args.eps_fixed, "k0a_sweep": args.k0a_sweep, "u0": args.u0}
    return _emit_curve(curve, args, "shift", meta)


def cmd_fbw(args) -> int:
    line = FbwLine(center_E0=args.e0, width_Gamma=args.gamma)
    grid = parse_grid(args.grid)
    omega = lineshape(line, grid)
    coeff = fourier_coefficient(line, grid)
    curve = Curve(
        abscissa=grid,
        values=np.column_stack([omega, coeff.real, coeff.imag]),
        labels=("E", "omega", "re_C", "im_C"),
    )
    meta = {"e0": args.e0, "gamma": args.gamma, "grid": args.grid}
    return _emit_curve(curve, args, "fbw", meta)


def _refined_mode(slab: SlabConfig, m: int):
    modes = {r.mode_index_m: r for r in approximate_resonances(slab)}
    if m not in modes:
        raise ValueError(
            f"mode index m={m} is not admissible for this slab "
            f"(allowed: {sorted(modes) or 'none'})"
        )
    from .resonances import refine_resonance

    return refine_resonance(modes[m], slab)


def cmd_mode_field(args) -> int:
    slab = _slab_from(args)
    res = _refined_mode(slab, args.m)
    field = mode_profile(res, slab)
    x_default, z_default = default_render_grids(slab)
    x = parse_grid(args.x) if args.x else x_default
    z = parse_grid(args.z) if args.z else z_default
    grid = propagate_mode(field, x, z)
    meta = {
        "k0a": args.k0a,
        "u0": args.u0,
        "m": args.m,
        "component": args.component,
        "x": args.x or "default",
        "z": args.z or "default",
    }
    if args.format == "json":
        text = grid_to_json(grid, "mode-field", meta)
    else:
        text = grid_to_csv(grid, args.component, "mode-field", meta)
    _Sink(_resolve_out(args.output)).write(text)
    return 0


def cmd_propagate(args) -> int:
    slab = _slab_from(args)
    cfg = BpmConfig.for_slab(
        slab,
        transverse_halfwidth_X=args.X,
        nx=args.nx,
        dz=args.dz,
        absorber_width=args.absorber_width,
        absorber_strength=args.absorber_strength,
    )
    prop = Propagator(cfg)
    meta = {
        "k0a": args.k0a,
        "u0": args.u0,
        "nx": cfg.nx,
        "dz": cfg.dz,
        "X": cfg.transverse_halfwidth_X,
        "absorber_width": cfg.absorber_width,
        "absorber_strength": cfg.absorber_strength,
        "z_max": args.z_max,
    }
    if args.init_field is not None:
        grid_in = field_grid_from_json(Path(args.init_field))
        if len(grid_in.x_grid) != cfg.nx or not np.allclose(
            grid_in.x_grid, prop.x, rtol=0, atol=1e-12
        ):
            raise ValueError("--init-field x grid does not match the propagation grid")
        column = grid_in.amplitudes[:, 0].copy()
        meta["init"] = "file"
    elif args.m is not None:
        res = _refined_mode(slab, args.m)
        column = tapered_mode_column(mode_profile(res, slab), cfg)
        meta["init"] = f"mode-{args.m}"
        meta["m"] = args.m
    elif args.packet is not None:
        x0, width, kx = (float(v) for v in args.packet.split(":"))
        column = np.exp(-((prop.x - x0) ** 2) / (2 * width**2)) * np.exp(
            1j * kx * prop.x
        )
        meta["init"] = "packet"
        meta["packet"] = args.packet
    else:
        raise ValueError("choose an initial condition: --m, --packet or --init-field")

    if args.save_init:
        init_grid = FieldGrid(
            x_grid=prop.x, z_grid=np.array([0.0]), amplitudes=column[:, None]
        )
        _Sink(_resolve_out(args.save_init)).write(grid_to_json(init_grid, "propagate-init", meta))

    nsteps = int(round(args.z_max / cfg.dz))
    every = max(1, nsteps // max(1, args.snapshots - 1)) if args.save_field else nsteps + 1
    zs = [0.0]
    powers = [prop.core_power(column)]
    snaps_z = [0.0]
    snaps = [column.copy()]
    for i in range(nsteps):
        column = prop.step(column)
        zs.append((i + 1) * cfg.dz)
        powers.append(prop.core_power(column))
        if args.save_field and ((i + 1) % every == 0 or i + 1 == nsteps):
            snaps_z.append((i + 1) * cfg.dz)
            snaps.append(column.copy())

    curve = Curve(
        abscissa=np.asarray(zs),
        values=np.asarray(powers),
        labels=("z", "core_power"),
    )
    code = _emit_curve(curve, args, "propagate", meta)
    if args.save_field:
        grid_out = FieldGrid(
            x_grid=prop.x,
            z_grid=np.asarray(snaps_z),
            amplitudes=np.column_stack(snaps),
        )
        _Sink(_resolve_out(args.save_field)).write(grid_to_json(grid_out, "propagate-field", meta))
    return code


def cmd_decay(args) -> int:
    slab = _slab_from(args)
    cfg = BpmConfig.for_slab(
        slab,
        transverse_halfwidth_X=args.X,
        nx=args.nx,
        dz=args.dz,
        absorber_width=args.absorber_width,
        absorber_strength=args.absorber_strength,
    )
    res = _refined_mode(slab, args.m)
    column = tapered_mode_column(mode_profile(res, slab), cfg)
    rate = measure_decay(cfg, column, args.z_max)
    meta = {
        "k0a": args.k0a,
        "u0": args.u0,
        "m": args.m,
        "z_max": args.z_max,
        "nx": cfg.nx,
        "dz": cfg.dz,
    }
    lines = _meta_lines("decay", meta)
    lines.append("m,measured_rate,width_Gamma_refined")
    lines.append(f"{args.m},{_fmt(rate)},{_fmt(res.eigenvalue.width_Gamma)}")
    _Sink(_resolve_out(args.output)).write("\n".join(lines) + "\n")
    return 0


class _Parser(argparse.ArgumentParser):
    # accept option values like -0.999:-0.001:4096 (leading minus + colons)
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-[\d.]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leakyslab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, slab=True):
        if slab:
            p.add_argument("--k0a", type=float, required=True, help="slab half width k0*a")
            p.add_argument("--u0", type=float, required=True, help="core refractive index")
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("resonances", help="leaky-mode eigenvalue table")
    add_common(p)
    p.add_argument("--refine", action="store_true", help="Newton-polish the eigenvalues")
    p.set_defaults(func=cmd_resonances)

    p = sub.add_parser("transmission", help="transmission coefficient sweep")
    add_common(p)
    p.add_argument("--eps", required=True, help="eps_R grid start:stop:count")
    p.set_defaults(func=cmd_transmission)

    p = sub.add_parser("shift", help="longitudinal shift sweeps")
    add_common(p)
    p.add_argument("--eps", default=None, help="eps_R grid start:stop:count")
    p.add_argument("--eps-fixed", type=float, default=None, help="fixed eps_R for a width sweep")
    p.add_argument("--k0a-sweep", default=None, help="width grid start:stop:count")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("fbw", help="Lorentzian lineshape curve")
    add_common(p, slab=False)
    p.add_argument("--e0", type=float, required=True, help="line center")
    p.add_argument("--gamma", type=float, required=True, help="full line width")
    p.add_argument("--grid", required=True, help="energy grid start:stop:count")
    p.set_defaults(func=cmd_fbw)

    p = sub.add_parser("mode-field", help="leaky-mode field on an (x, z) rectangle")
    add_common(p)
    p.add_argument("--m", type=int, required=True, help="mode index")
    p.add_argument("--x", default=None, help="x grid start:stop:count (default -2A:2A:801)")
    p.add_argument("--z", default=None, help="z grid start:stop:count (default 0:200:401)")
    p.add_argument("--component", choices=("re", "im", "abs2"), default="re")
    p.set_defaults(func=cmd_mode_field)

    def add_bpm(p):
        p.add_argument("--X", type=float, default=None, help="transverse half width (default 8A)")
        p.add_argument("--nx", type=int, default=4097)
        p.add_argument("--dz", type=float, default=0.05)
        p.add_argument("--absorber-width", type=float, default=None, help="default X/4")
        p.add_argument("--absorber-strength", type=float, default=0.05)

    p = sub.add_parser("propagate", help="finite-difference propagation of a column")
    add_common(p)
    add_bpm(p)
    p.add_argument("--m", type=int, default=None, help="tapered leaky-mode initial condition")
    p.add_argument("--packet", default=None, help="Gaussian packet x0:width:kx")
    p.add_argument("--init-field", default=None, help="JSON field grid; first z column is used")
    p.add_argument("--z-max", type=float, default=50.0)
    p.add_argument("--save-field", default=None, help="write snapshot field grid (JSON)")
    p.add_argument("--save-init", default=None, help="write the initial column (JSON)")
    p.add_argument("--snapshots", type=int, default=11, help="snapshot count for --save-field")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("decay", help="leaky decay rate via propagation + fit")
    add_common(p)
    add_bpm(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--z-max", type=float, required=True)
    p.set_defaults(func=cmd_decay)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except LeakySlabError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 3


def console() -> None:
    sys.exit(main())
