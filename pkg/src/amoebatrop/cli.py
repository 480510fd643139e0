"""Command-line experiment harness.

Subcommands:

  trop         corner locus of a polynomial's tropicalization (JSON+SVG)
  amoeba       raw amoeba sample of a complex polynomial (CSV+SVG)
  converge-a   scaled amoebae of a fixed hypersurface against its
               trivially-valued tropical curve, one row per scaling factor
  family-b     one-parameter family: specialize t = a, scale by
               1/log(1/|a|), compare against the t-adic tropical curve
  polycircle   sup of |f|^rho on shrinking polycircles against e^{-v(f)}
  moment       compactified panels inside the moment polytope

Each experiment reads an optional JSON config; command-line flags override
config fields.  All tables are CSV with shortest round-trip decimals, so a
fixed config and seed reproduce outputs byte for byte.  Exit status is 0
only when the experiment's monotonicity or threshold criterion holds.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields

from . import converge, render
from .amoeba import sample_amoeba
from .converge import Window
from .hybrid import polycircle_limit_report, report_errors_decrease
from .poly import LaurentFamily, LaurentPolynomial, load_polynomial
from .toric import LatticePolytope, compactify_cloud, trop_moment
from .tropical import corner_locus_2d

DEFAULT_WINDOW = (-2.0, 2.0)
DEFAULT_RHOS = (0.2, 0.1, 0.05, 0.02)
DEFAULT_A_VALUES = (0.5, 0.2, 0.08)
DEFAULT_SAMPLES = 4000
DEFAULT_ALPHA_2D = (1.0, math.sqrt(2.0))


@dataclass
class ExperimentConfig:
    kind: str = ""
    poly: str | None = None
    out: str = "out"
    seed: int = 0
    window: tuple[float, float] = DEFAULT_WINDOW
    samples: int = DEFAULT_SAMPLES
    rhos: tuple[float, ...] | None = None
    a_values: tuple[float, ...] | None = None
    alpha: tuple[float, ...] | None = None
    degree: int | None = None
    polytope: str | None = None
    phase_samples: int = 64
    grid: int = 512

    def validate(self) -> None:
        lo, hi = self.window
        if not lo < hi:
            raise ValueError("window must satisfy lo < hi")
        if self.samples < 1:
            raise ValueError("sample count must be >= 1")
        for name, values in (("rhos", self.rhos), ("a-values", self.a_values)):
            if values is None:
                continue
            if any(v == 0 for v in values):
                raise ValueError(f"{name} must be nonzero")
            mags = [abs(v) for v in values]
            if any(x <= y for x, y in zip(mags, mags[1:])):
                raise ValueError(f"{name} must be strictly decreasing in magnitude")


def _merge_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(
                    f"{args.config}: parse error at line {exc.lineno} "
                    f"column {exc.colno}: {exc.msg}") from exc
    cfg = ExperimentConfig()
    valid = {f.name for f in fields(ExperimentConfig)}
    for key, value in data.items():
        name = key.replace("-", "_")
        if name not in valid:
            raise ValueError(f"unknown config field {key!r}")
        if isinstance(value, list):
            value = tuple(value)
        setattr(cfg, name, value)
    for name in valid:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.kind = args.command
    cfg.validate()
    return cfg


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _parse_window(text: str) -> tuple[float, float]:
    parts = _parse_float_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window must be 'lo,hi'")
    return parts


def _load_poly(cfg: ExperimentConfig):
    if not cfg.poly:
        raise ValueError("no polynomial file given (--poly)")
    return load_polynomial(cfg.poly)


def _require_plain(poly, what: str) -> LaurentPolynomial:
    if isinstance(poly, LaurentFamily):
        if poly.is_constant_in_t():
            return poly.specialize(1.0)
        raise ValueError(f"{what} needs a t-free polynomial; "
                         "specialize the family or use family-b")
    return poly


def _ensure_out(cfg: ExperimentConfig) -> str:
    os.makedirs(cfg.out, exist_ok=True)
    return cfg.out


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def _scaled_sample(f: LaurentPolynomial, factor: float, cfg: ExperimentConfig,
                   seed: int):
    """Sample over the window stretched by 1/factor, then scale down."""
    lo, hi = cfg.window
    head = [(lo / factor, hi / factor)] * (f.dim - 1)
    cloud = sample_amoeba(f, cfg.samples, head, seed)
    return cloud.scaled(factor)


def _distance_rows(comp, window: Window, labelled_clouds, grid: int):
    rows = []
    for label, cloud in labelled_clouds:
        fwd = converge.directed_cloud_to_complex(cloud, comp, window)
        back = converge.directed_complex_to_cloud(cloud, comp, window, grid)
        rows.append((label, max(fwd, back), fwd, back))
    return rows


def _check_decreasing(rows, what: str) -> int:
    distances = [r[1] for r in rows]
    if all(a > b for a, b in zip(distances, distances[1:])):
        return 0
    print(f"error: {what} distances are not strictly decreasing: "
          + ", ".join(repr(d) for d in distances), file=sys.stderr)
    return 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_trop(cfg: ExperimentConfig) -> int:
    poly = _load_poly(cfg)
    if isinstance(poly, LaurentFamily):
        trop = poly.t_valuation()
    else:
        trop = poly.trivial_tropicalization()
    comp = corner_locus_2d(trop)
    out = _ensure_out(cfg)
    comp.save(os.path.join(out, "complex.json"))
    window = Window.square(*cfg.window)
    cells = comp.clipped_segments(window.box())
    _write_csv(os.path.join(out, "complex_cells.csv"), "x0,y0,x1,y1",
               [(a[0], a[1], b[0], b[1]) for a, b in cells])
    canvas = render.SvgCanvas(window.box())
    canvas.frame()
    render.draw_corner_locus(canvas, comp)
    canvas.caption(f"corner locus: {len(comp.vertices)} vertices, "
                   f"{len(comp.segments)} segments, {len(comp.rays)} rays")
    canvas.save(os.path.join(out, "tropical.svg"))
    print(f"wrote {out}/complex.json, complex_cells.csv, tropical.svg")
    return 0


def cmd_amoeba(cfg: ExperimentConfig) -> int:
    f = _require_plain(_load_poly(cfg), "amoeba sampling")
    lo, hi = cfg.window
    head = [(lo, hi)] * (f.dim - 1)
    cloud = sample_amoeba(f, cfg.samples, head, cfg.seed)
    out = _ensure_out(cfg)
    cloud.save_csv(os.path.join(out, "cloud.csv"))
    if f.dim == 2:
        canvas = render.SvgCanvas(Window.square(*cfg.window).box())
        canvas.frame()
        render.draw_points(canvas, cloud.points, render.PALETTE[0])
        canvas.caption(f"amoeba sample: {len(cloud)} points, seed {cfg.seed}")
        canvas.save(os.path.join(out, "amoeba.svg"))
    print(f"wrote {out}/cloud.csv ({len(cloud)} points, "
          f"{cloud.meta.skipped} samples skipped)")
    return 0


def cmd_converge_a(cfg: ExperimentConfig) -> int:
    f = _require_plain(_load_poly(cfg), "the scaling experiment")
    rhos = cfg.rhos or DEFAULT_RHOS
    comp = corner_locus_2d(f.trivial_tropicalization())
    window = Window.square(*cfg.window)
    clouds = [(rho, _scaled_sample(f, rho, cfg, cfg.seed + i))
              for i, rho in enumerate(rhos)]
    rows = _distance_rows(comp, window, clouds, cfg.grid)
    out = _ensure_out(cfg)
    _write_csv(os.path.join(out, "converge_a.csv"),
               "parameter,distance,directed_forward,directed_backward", rows)
    canvas = render.SvgCanvas(window.box())
    canvas.frame()
    for i, (rho, cloud) in enumerate(clouds):
        render.draw_points(canvas, cloud.points,
                           render.PALETTE[i % len(render.PALETTE)])
    render.draw_corner_locus(canvas, comp)
    canvas.caption("scaled amoebae vs tropical curve: rho = "
                   + ", ".join(repr(r) for r in rhos))
    canvas.save(os.path.join(out, "converge_a.svg"))
    for row in rows:
        print("rho={} distance={}".format(row[0], row[1]))
    return _check_decreasing(rows, "scaled-amoeba")


def _lambda_of_parameter(a: float) -> float:
    mag = abs(a)
    if mag >= 1.0:
        raise ValueError("family parameters need 0 < |a| < 1")
    return 1.0 / math.log(1.0 / mag)


def cmd_family_b(cfg: ExperimentConfig) -> int:
    poly = _load_poly(cfg)
    family = poly if isinstance(poly, LaurentFamily) else LaurentFamily.constant(poly)
    a_values = cfg.a_values or DEFAULT_A_VALUES
    for a in a_values:
        if abs(a) > math.exp(-1.0):
            print(f"warning: |a| = {abs(a)!r} exceeds e^-1; "
                  "the scaling normalization is less meaningful there",
                  file=sys.stderr)
    comp = corner_locus_2d(family.t_valuation())
    window = Window.square(*cfg.window)
    out = _ensure_out(cfg)
    rows = []
    panels = []
    for i, a in enumerate(a_values):
        lam = _lambda_of_parameter(a)
        cloud = _scaled_sample(family.specialize(a), lam, cfg, cfg.seed + i)
        fwd = converge.directed_cloud_to_complex(cloud, comp, window)
        back = converge.directed_complex_to_cloud(cloud, comp, window, cfg.grid)
        rows.append((a, lam, max(fwd, back), fwd, back))
        panels.append((a, cloud))
    _write_csv(os.path.join(out, "family_b.csv"),
               "parameter,lambda,distance,directed_forward,directed_backward", rows)
    for i, (a, cloud) in enumerate(panels):
        canvas = render.SvgCanvas(window.box())
        canvas.frame()
        render.draw_points(canvas, cloud.points, render.PALETTE[i % len(render.PALETTE)])
        render.draw_corner_locus(canvas, comp)
        canvas.caption(f"a = {a!r}, scaled by {rows[i][1]!r}")
        canvas.save(os.path.join(out, f"family_b_{i}.svg"))
    canvas = render.SvgCanvas(window.box())
    canvas.frame()
    render.draw_corner_locus(canvas, comp)
    canvas.caption("t-adic tropical curve")
    canvas.save(os.path.join(out, "family_b_trop.svg"))
    for row in rows:
        print("a={} lambda={} distance={}".format(row[0], row[1], row[2]))
    return _check_decreasing([(r[0], r[2]) for r in rows], "family")


def cmd_polycircle(cfg: ExperimentConfig) -> int:
    f = _require_plain(_load_poly(cfg), "the polycircle experiment")
    alpha = cfg.alpha
    if alpha is None:
        if f.dim != 2:
            raise ValueError("provide --alpha for dimensions other than 2")
        alpha = DEFAULT_ALPHA_2D
    rhos = cfg.rhos or DEFAULT_RHOS
    rows = polycircle_limit_report(f, alpha, rhos,
                                   phase_samples=cfg.phase_samples, seed=cfg.seed)
    out = _ensure_out(cfg)
    _write_csv(os.path.join(out, "polycircle.csv"), "rho,sup,target,abs_error", rows)
    for row in rows:
        print("rho={} sup={} target={} abs_error={}".format(*row))
    if report_errors_decrease(rows):
        return 0
    print("error: polycircle error column is not non-increasing "
          "(10% slack) in the dominant-term regime", file=sys.stderr)
    return 1


def cmd_moment(cfg: ExperimentConfig) -> int:
    poly = _load_poly(cfg)
    family = poly if isinstance(poly, LaurentFamily) else LaurentFamily.constant(poly)
    if family.dim != 2:
        raise ValueError("moment panels are rendered for dimension 2 only")
    if cfg.polytope:
        polytope = LatticePolytope.load(cfg.polytope)
        if polytope.dim != 2:
            raise ValueError("moment panels need a 2-dimensional polytope")
    else:
        degree = cfg.degree
        if degree is None:
            if any(e < 0 for m in family.support() for e in m):
                raise ValueError("negative exponents: provide an explicit polytope")
            degree = max(sum(m) for m in family.support())
        polytope = LatticePolytope.dilated_simplex(degree, 2)
    comp = corner_locus_2d(family.t_valuation())
    a_values = cfg.a_values or DEFAULT_A_VALUES
    out = _ensure_out(cfg)

    box = tuple((min(v[i] for v in polytope.vertices) - 0.2,
                 max(v[i] for v in polytope.vertices) + 0.2) for i in range(2))
    hull = polytope.vertices
    # Order hull vertices by angle around their centroid for the outline.
    cx = sum(v[0] for v in hull) / len(hull)
    cy = sum(v[1] for v in hull) / len(hull)
    outline = sorted(hull, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
    trop_samples = comp.sample_points(((-30.0, 30.0), (-30.0, 30.0)), 0.02)
    trop_mapped = [trop_moment(polytope, w) for w in trop_samples]
    barycenter = trop_moment(polytope, (0.0, 0.0))

    for i, a in enumerate(a_values):
        lam = _lambda_of_parameter(a)
        cloud = _scaled_sample(family.specialize(a), lam, cfg, cfg.seed + i)
        mapped = compactify_cloud(cloud, polytope)
        mapped.save_csv(os.path.join(out, f"moment_{i}.csv"))
        canvas = render.SvgCanvas(box)
        canvas.polygon(outline)
        render.draw_points(canvas, trop_mapped, "#111111", radius_px=0.8, opacity=0.8)
        render.draw_points(canvas, mapped.points, render.PALETTE[i % len(render.PALETTE)])
        canvas.circle(barycenter, radius_px=3.0, fill="#d62728")
        canvas.caption(f"a = {a!r} in the moment polytope")
        canvas.save(os.path.join(out, f"moment_{i}.svg"))
    print(f"wrote {len(a_values)} moment panels to {out}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

_COMMANDS = {
    "trop": cmd_trop,
    "amoeba": cmd_amoeba,
    "converge-a": cmd_converge_a,
    "family-b": cmd_family_b,
    "polycircle": cmd_polycircle,
    "moment": cmd_moment,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amoebatrop",
        description="amoeba / tropical curve experiments for Laurent hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file; flags override its fields")
        p.add_argument("--poly", help="polynomial document (JSON)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, help="base random seed")
        p.add_argument("--window", type=_parse_window, help="comparison window 'lo,hi'")
        p.add_argument("--samples", type=int, help="amoeba sample count")
        p.add_argument("--rhos", type=_parse_float_list, help="scaling factors r1,r2,...")
        p.add_argument("--as", dest="a_values", type=_parse_float_list,
                       help="family parameters a1,a2,...")
        p.add_argument("--alpha", type=_parse_float_list, help="valuation weights a1,a2")
        p.add_argument("--degree", type=int, help="plane-curve degree for the default polytope")
        p.add_argument("--polytope", help="lattice polytope document (JSON)")
        p.add_argument("--phase-samples", dest="phase_samples", type=int,
                       help="phases per axis for polycircle sampling")
        p.add_argument("--grid", type=int, help="complex discretization steps per window diagonal")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
