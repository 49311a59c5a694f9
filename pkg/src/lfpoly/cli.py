"""Command-line workbench: ``lfpoly <subcommand> [options]``.

Options can also come from a flat ``key = value`` file passed with
``--config``; flags given on the command line win.  Exit status is 0 on
success, 2 for invalid input and 3 for computational failures, with a JSON
error object on stderr.
"""
import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from . import io
from .builders import DEFAULT_CAP, build_polytope, lf_vertices, lhv_vertices, ns_facets
from .errors import LFPolyError, ValidationError
from .inequalities import LIBRARY, get, load_inequality
from .lp import lp_membership, verify_certificate
from .quantum import behavior_from_strategy, rho_mu
from .reps import HRepresentation
from .scenario import (
    Scenario,
    behavior_to_json,
    check_no_signalling,
    load_behavior,
    to_exact_collins_gisin,
)
from .seesaw import MeasurementAngles, mu_sweep, seesaw_maximize, white_noise_tolerance
from .slice import SlicePlane, run_slice, slice_csv_lines

log = logging.getLogger("lfpoly")

MODELS = ("lhv", "lf", "ns")
DEFAULT_MUS = (0.0, 0.74, 0.80, 0.81, 0.87, 0.92, 0.99)


def parse_pair(text, name):
    try:
        parts = [int(p) for p in str(text).split(",")]
    except ValueError:
        raise ValidationError(f"{name} must be two comma-separated integers, got {text!r}") from None
    if len(parts) != 2:
        raise ValidationError(f"{name} must have two entries, got {text!r}")
    return tuple(parts)


def parse_floats(text, name):
    try:
        return tuple(float(p) for p in str(text).split(",") if p.strip())
    except ValueError:
        raise ValidationError(f"{name} must be comma-separated numbers, got {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Validated settings shared by the subcommands."""

    scenario: Scenario = Scenario(3, 2)
    model: str = "lf"
    angles: MeasurementAngles = MeasurementAngles()
    mus: tuple = DEFAULT_MUS
    restarts: object = None
    seed: int = 0
    dims: tuple = (2, 2)
    threads: int = 1
    out: str = "."
    cap: int = DEFAULT_CAP

    @classmethod
    def from_args(cls, ns):
        kw = {}
        if getattr(ns, "scenario", None) is not None:
            n, o = parse_pair(ns.scenario, "scenario")
            kw["scenario"] = Scenario(n, o)
        if getattr(ns, "model", None) is not None:
            if ns.model not in MODELS:
                raise ValidationError(f"model must be one of {MODELS}, got {ns.model!r}")
            kw["model"] = ns.model
        if getattr(ns, "angles", None) is not None:
            vals = parse_floats(ns.angles, "angles")
            if len(vals) != 4:
                raise ValidationError("angles are phi1,phi2,phi3,beta in degrees")
            kw["angles"] = MeasurementAngles(vals[:3], vals[3])
        if getattr(ns, "mu", None) is not None:
            mus = parse_floats(ns.mu, "mu")
            if any(not 0 <= m <= 1 for m in mus):
                raise ValidationError("every mu must lie in [0, 1]")
            kw["mus"] = mus
        if getattr(ns, "dims", None) is not None:
            dims = parse_pair(ns.dims, "dims")
            if min(dims) < 2:
                raise ValidationError("local dimensions must be at least 2")
            kw["dims"] = dims
        for name in ("restarts", "seed", "threads", "cap"):
            val = getattr(ns, name, None)
            if val is not None:
                try:
                    kw[name] = int(val)
                except ValueError:
                    raise ValidationError(f"{name} must be an integer, got {val!r}") from None
        if kw.get("restarts", 1) < 1 or kw.get("threads", 1) < 1 or kw.get("cap", 1) < 1:
            raise ValidationError("restarts, threads and cap must be positive")
        if getattr(ns, "out", None) is not None:
            kw["out"] = ns.out
        return cls(**kw)


def read_config(path):
    """Flat ``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    values = {}
    try:
        fh = open(path)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _out_path(cfg, name):
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


def _facets_for(kind, scenario, cap):
    if kind == "ns":
        return ns_facets(scenario)
    return build_polytope(kind, scenario, cap=cap, validate=False).facets


def _vertices_for(kind, scenario):
    if kind == "lhv":
        return lhv_vertices(scenario)
    if kind == "lf":
        return lf_vertices(scenario).vrep
    return build_polytope("ns", scenario, validate=False).vertices


# subcommands ---------------------------------------------------------------

def cmd_enumerate(cfg, ns):
    poly = build_polytope(cfg.model, cfg.scenario, cap=cfg.cap)
    manifest = io.write_polytope(cfg.out, poly)
    print(f"{cfg.model.upper()}{cfg.scenario.settings, cfg.scenario.outcomes}: "
          f"{manifest['vertices']} vertices, {manifest['facets']} facets -> {cfg.out}")
    return manifest


def _scenario_for_facets(path, cfg, ns):
    manifest = os.path.join(os.path.dirname(os.path.abspath(path)), "manifest.json")
    if ns.scenario is None and os.path.exists(manifest):
        with open(manifest) as fh:
            n, o = json.load(fh)["scenario"]
        return Scenario(n, o)
    return cfg.scenario


def cmd_classify(cfg, ns):
    from .symmetry import classify

    facets = io.read_facets(ns.facets)
    scenario = _scenario_for_facets(ns.facets, cfg, ns)
    if facets.dimension != scenario.cg_dimension:
        raise ValidationError(f"facet rows have {facets.dimension} coefficients, "
                              f"scenario needs {scenario.cg_dimension}")
    classes = classify(facets, scenario, strict=not ns.lenient)
    io.write_classes(_out_path(cfg, "classes.json"), classes)
    width = max(len(c.label) for c in classes)
    print(f"{'class':<{width}}  bound  multiplicity  canonical form")
    for c in classes:
        rep = str(c.representative).split(" <= ")[0]
        print(f"{c.label:<{width}}  {c.representative.bound:>5}  {c.multiplicity:>12}  {rep}")
    print(f"{'total':<{width}}  {'':>5}  {sum(c.multiplicity for c in classes):>12}")
    return classes


def cmd_membership(cfg, ns):
    behavior = load_behavior(ns.behavior)
    if behavior.scenario != cfg.scenario and ns.scenario is not None:
        raise ValidationError(f"behavior is {behavior.scenario}, requested {cfg.scenario}")
    scenario = behavior.scenario
    report = check_no_signalling(behavior)
    if not report.ok:
        from .errors import NotNoSignalling

        raise NotNoSignalling(f"marginal deviation {report.deviation:.3g}")
    point, radius = to_exact_collins_gisin(behavior, 10 ** 9)
    vertices = _vertices_for(cfg.model, scenario)
    facets = io.read_facets(ns.facets) if ns.facets else None
    cert = lp_membership(point, vertices.vertices)
    if not cert.inside:
        if facets is None:
            facets = _facets_for(cfg.model, scenario, cfg.cap)
        cert = lp_membership(point, vertices.vertices, facets=facets)
    if radius:
        cert = replace(cert, rounding_radius=radius)
    if not verify_certificate(cert, point, vertices.vertices):
        raise LFPolyError("certificate failed independent verification")
    out = cert.to_json()
    out.update({"model": cfg.model, "scenario": [scenario.settings, scenario.outcomes]})
    if cert.separator is not None:
        from .inequalities import Inequality
        from .symmetry import classify

        row = cert.separator
        out["separator_correlator"] = Inequality.from_collins_gisin(row, scenario.settings).to_json() \
            if scenario.outcomes == 2 else None
        if scenario.outcomes == 2:
            cls = classify(HRepresentation([row]), scenario, strict=False)
            out["separator_class"] = cls[0].label
    with open(_out_path(cfg, "certificate.json"), "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")
    print(json.dumps({"verdict": out["verdict"], "separator_class": out.get("separator_class"),
                      "rounding_radius": out.get("rounding_radius")}))
    return out


SWEEP_COLUMNS = ["mu", "label", "lhs", "bound", "violated"]


def cmd_sweep(cfg, ns):
    rows = mu_sweep(cfg.angles, cfg.mus)
    with open(_out_path(cfg, "sweep.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([f"{r['mu']:.6g}", r["label"], f"{r['lhs']:.12g}", r["bound"],
                        str(r["violated"]).lower()])
    if ns.behaviors:
        for mu in cfg.mus:
            b = behavior_from_strategy(rho_mu(mu), cfg.angles.alice(), cfg.angles.bob())
            with open(_out_path(cfg, f"behavior_mu{mu:.2f}.json"), "w") as fh:
                json.dump(behavior_to_json(b), fh)
                fh.write("\n")
    for mu in cfg.mus:
        hits = [r["label"] for r in rows if r["mu"] == mu and r["violated"]]
        print(f"mu={mu:.2f}: violated {', '.join(hits) if hits else 'none'}")
    return rows


def cmd_seesaw(cfg, ns):
    ineq = load_inequality(ns.ineq_file) if ns.ineq_file else get(ns.ineq)
    dA, dB = cfg.dims
    result = seesaw_maximize(ineq, dA, dB, restarts=cfg.restarts, seed=cfg.seed, workers=cfg.threads)
    report = {"inequality": ineq.to_json()}
    report.update(result.to_json())
    if result.value > ineq.bound + 1e-9:
        report["white_noise_tolerance"] = white_noise_tolerance(ineq, result.state, result.alice, result.bob)
    with open(_out_path(cfg, "seesaw.json"), "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")
    schmidt = ", ".join(f"{s:.5f}" for s in result.schmidt)
    print(f"{ineq.label}: {result.value:.9f} (bound {ineq.bound}), Schmidt ({schmidt})")
    if "white_noise_tolerance" in report:
        print(f"white-noise tolerance {report['white_noise_tolerance']:.6f}")
    return report


def cmd_slice(cfg, ns):
    lo, hi = parse_floats(ns.range, "range") if ns.range else (-0.5, 1.5)
    plane = SlicePlane.default(int(ns.resolution), Fraction(str(lo)), Fraction(str(hi)))
    s = Scenario(3, 2)
    hreps = [build_polytope("lhv", s, validate=False).facets,
             build_polytope("lf", s, validate=False).facets, ns_facets(s)]
    rows = run_slice(plane, *hreps, threads=cfg.threads)
    with open(_out_path(cfg, "slice.csv"), "w") as fh:
        fh.write("\n".join(slice_csv_lines(rows)) + "\n")
    print(f"slice: {len(rows)} grid points -> {cfg.out}")
    return rows


# parser --------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory (default: current directory)")
    common.add_argument("--threads", help="worker count")
    common.add_argument("--seed", help="random seed")
    common.add_argument("--config", help="flat key = value file; flags override it")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="lfpoly", description="Local Friendliness polytope workbench")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="vertices and facets of a polytope")
    e.add_argument("--scenario", help="N,O (default 3,2)")
    e.add_argument("--model", help="lhv, lf or ns")
    e.add_argument("--cap", help="vertex cap")

    c = sub.add_parser("classify", parents=[common], help="relabeling classes of a facet file")
    c.add_argument("facets")
    c.add_argument("--scenario", help="N,O; read from manifest.json next to the file if omitted")
    c.add_argument("--lenient", action="store_true", help="report unmatched orbits instead of failing")

    m = sub.add_parser("membership", parents=[common], help="certified polytope membership")
    m.add_argument("behavior")
    m.add_argument("--model")
    m.add_argument("--scenario")
    m.add_argument("--facets", help="facet file used to pick a separator")
    m.add_argument("--cap")

    w = sub.add_parser("sweep", parents=[common], help="example inequalities against mu")
    w.add_argument("--angles", help="phi1,phi2,phi3,beta in degrees")
    w.add_argument("--mu", help="comma-separated mu values")
    w.add_argument("--behaviors", action="store_true", help="also write each behavior as JSON")

    s = sub.add_parser("seesaw", parents=[common], help="lower bound on the quantum maximum")
    s.add_argument("--ineq", default="genuine-lf-1", help=f"library name: {', '.join(LIBRARY)}")
    s.add_argument("--ineq-file", help="inequality JSON file")
    s.add_argument("--dims", help="dA,dB")
    s.add_argument("--restarts")

    sl = sub.add_parser("slice", parents=[common], help="two-dimensional slice of the (3,2) space")
    sl.add_argument("--resolution", default="201")
    sl.add_argument("--range", help="lo,hi for both s and t")
    return p


COMMANDS = {
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "membership": cmd_membership,
    "sweep": cmd_sweep,
    "seesaw": cmd_seesaw,
    "slice": cmd_slice,
}


def parse(argv):
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.config:
        for key, value in read_config(ns.config).items():
            if not hasattr(ns, key):
                raise ValidationError(f"unknown config key {key!r} for {ns.command}")
            if getattr(ns, key) is None or getattr(ns, key) == parser_default(parser, ns.command, key):
                if f"--{key.replace('_', '-')}" not in argv:
                    setattr(ns, key, value)
    return ns


def parser_default(parser, command, key):
    sub = parser._subparsers._group_actions[0].choices[command]
    return sub.get_default(key)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = parse(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        cfg = RunConfig.from_args(ns)
        COMMANDS[ns.command](cfg, ns)
    except LFPolyError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code},
                  sys.stderr)
        sys.stderr.write("\n")
        return exc.exit_code
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc), "exit_code": 2}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
