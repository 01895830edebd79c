"""Command-line front end: ``dimertunnel <command> [flags]``.

Every command writes CSV whose first line is ``# {json config}``; floats use
17 significant digits so identical configurations give byte-identical files.
J, U and gamma are angular frequencies (the ``-hz`` flag names follow the
usual lab labelling); a splitting dE corresponds to dE/(2 pi) cycles per second.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import DimerError
from .meanfield import DimerParams, PhaseSpacePoint
from . import dissipative, quantum, semiclassical

MAX_WORKERS_ENV = "DIMERTUNNEL_MAX_WORKERS"
SOURCES = ("exact", "semiclassical", "closed-form", "zero")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing helpers

def _parse_list(text, kind=float):
    """'a,b,c' or 'start:stop:count' (inclusive linspace) or 'a:b' (integer range)."""
    if text is None:
        return None
    if isinstance(text, (int, float)):
        return [kind(text)]
    if isinstance(text, list):
        return [kind(v) for v in text]
    text = str(text)
    if ":" in text:
        parts = text.split(":")
        if len(parts) == 2 and kind is int:
            a, b = int(parts[0]), int(parts[1])
            return list(range(a, b + 1))
        if len(parts) != 3:
            raise UsageError(f"bad range {text!r}; use start:stop:count")
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise UsageError("range count must be >= 1")
        vals = np.linspace(a, b, n)
        return [kind(v) for v in vals]
    vals = [kind(float(v)) if kind is int else kind(v) for v in text.split(",") if v.strip()]
    return vals


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def _write_csv(path, config, columns, rows):
    echo = {k: v for k, v in config.items() if k not in ("out", "config")}
    header = "# " + json.dumps(echo, sort_keys=True) + "\n"
    body = header + ",".join(columns) + "\n" + "".join(
        ",".join(_fmt(v) for v in row) + "\n" for row in rows)
    if path in (None, "-"):
        sys.stdout.write(body)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".dimertunnel-", dir=d)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(body)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _max_workers():
    try:
        n = int(os.environ.get(MAX_WORKERS_ENV, "0"))
    except ValueError:
        n = 0
    return n if n > 0 else min(8, os.cpu_count() or 1)


def _pmap(fn, items):
    """Parallel map with results in input order."""
    workers = _max_workers()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _params(N, lam, J, U) -> DimerParams:
    if N is None:
        raise UsageError("--n is required")
    if N < 1:
        raise UsageError(f"N must be a positive integer (got {N})")
    if lam is not None:
        if (J is None) == (U is None):
            raise UsageError("with --lambda give exactly one of --j-hz or --u-hz")
        if lam <= 0:
            raise UsageError("Lambda must be > 0")
        return DimerParams.from_lambda(N, lam, J=J, U=U)
    if J is None or U is None:
        raise UsageError("give --lambda with one of --j-hz/--u-hz, or both --j-hz and --u-hz")
    return DimerParams(J=J, U=U, N=N)


def _grid(text):
    text = str(text)
    if "x" in text:
        a, b = text.split("x")
        nz, nphi = int(a), int(b)
    else:
        nz = nphi = int(text)
    if nz < 2 or nphi < 2:
        raise UsageError("grid needs at least 2 points per axis")
    return nz, nphi


def _initial_point(cfg, params):
    if cfg["z0"] is not None:
        return PhaseSpacePoint(cfg["z0"], cfg["phi0"] if cfg["phi0"] is not None else math.pi)
    return quantum.self_trapping_point(params)


def _splitting(params, source):
    if source == "exact":
        return quantum.exact_splitting(params)
    if source == "semiclassical":
        return semiclassical.splitting_semiclassical(params).deltaE
    if source == "closed-form":
        return semiclassical.approx_splitting_closed_form(params)
    raise UsageError(f"source {source!r} gives no splitting here")


# ---------------------------------------------------------------------------
# commands

def cmd_spectrum(cfg):
    p = _params(cfg["n"], cfg["lambda"], cfg["j_hz"], cfg["u_hz"])
    spec = quantum.spectrum(p)
    rows = [(i, e) for i, e in enumerate(spec.energies)]
    _write_csv(cfg["out"], cfg, ["index", "energy"], rows)


SWEEP_COLUMNS = ["N", "Lambda", "E_root", "e", "S_w", "S_eps", "deltaE_semiclassical",
                 "deltaE_closed_form", "deltaE_exact", "deltaE_closed_form_e0",
                 "deltaE_full_quantization", "valid"]


def _sweep_row(args):
    N, lam, J, U, with_exact = args
    p = DimerParams.from_lambda(N, lam, J=J, U=U)
    nan = float("nan")
    E = e = S_w = S_eps = d_sc = d_fq = nan
    valid = False
    try:
        res = semiclassical.splitting_semiclassical(p)
        E, e, S_w, S_eps, d_sc = res.E, res.e, res.S_w, res.S_eps, res.deltaE
        d_fq = semiclassical.solve_full_quantization(p).deltaE_direct
        valid = True
    except DimerError:
        pass
    if p.Lambda_semiclassical > 1:
        d_cf = semiclassical.approx_splitting_closed_form(p)
        d_cf0 = semiclassical.approx_splitting_closed_form(p, use_e_correction=False)
    else:
        d_cf = d_cf0 = nan
    d_ex = quantum.exact_splitting(p) if with_exact else nan
    return (N, lam, E, e, S_w, S_eps, d_sc, d_cf, d_ex, d_cf0, d_fq, valid)


def cmd_splitting_sweep(cfg):
    Ns = _parse_list(cfg["n"], int)
    lams = _parse_list(cfg["lambda"], float)
    if not Ns or not lams:
        raise UsageError("empty sweep range: give --n and --lambda values")
    if any(n < 1 for n in Ns):
        raise UsageError("N must be a positive integer")
    if any(l <= 0 for l in lams):
        raise UsageError("Lambda values must be > 0")
    J, U = cfg["j_hz"], cfg["u_hz"]
    if (J is None) == (U is None):
        raise UsageError("give exactly one of --j-hz or --u-hz for a Lambda sweep")
    items = [(N, lam, J, U, not cfg["no_exact"]) for N in Ns for lam in lams]
    rows = _pmap(_sweep_row, items)
    _write_csv(cfg["out"], cfg, SWEEP_COLUMNS, rows)


def cmd_husimi(cfg):
    p = _params(cfg["n"], cfg["lambda"], cfg["j_hz"], cfg["u_hz"])
    nz, nphi = _grid(cfg["grid"])
    p0 = _initial_point(cfg, p)
    if cfg["times"] is not None:
        times = _parse_list(cfg["times"], float)
    else:
        T = 2 * math.pi / _splitting(p, cfg["source"])
        times = [i * T / 4 for i in range(5)]
    spec = quantum.spectrum(p)
    psi0 = quantum.coherent_state(p, p0)
    z_axis = np.linspace(-1.0, 1.0, nz)
    phi_axis = np.linspace(0.0, 2 * math.pi, nphi)
    rows = []
    for k, t in enumerate(times):
        g = quantum.husimi(quantum.evolve(psi0, spec, t), z_axis, phi_axis)
        for i, z in enumerate(z_axis):
            for j, ph in enumerate(phi_axis):
                rows.append((k, t, z, ph, g.Q[i, j]))
    _write_csv(cfg["out"], cfg, ["frame", "t", "z", "phi", "Q"], rows)


def cmd_dissipate(cfg):
    if cfg["gamma_hz"] is None:
        raise UsageError("--gamma-hz is required")
    gamma = cfg["gamma_hz"]
    if gamma < 0:
        raise UsageError("gamma must be >= 0")
    p = _params(cfg["n"], cfg["lambda"], cfg["j_hz"], cfg["u_hz"])
    if p.N < 2:
        raise UsageError("dissipate needs N >= 2")
    source = cfg["source"]
    h = dissipative.effective_two_level(p, gamma, source)
    h0 = dissipative.effective_two_level(p, gamma, "zero")
    if cfg["t_end"] is not None:
        t_end = cfg["t_end"]
    elif gamma > 0:
        t_end = 5.0 / gamma
    else:
        t_end = 4 * 2 * math.pi / max(quantum.exact_splitting(p), 1e-300)
    series = dissipative.survival_master_equation(p, gamma, _initial_point(cfg, p), t_end,
                                                  cfg["dt"])
    n = len(series)
    stride = max(1, (n - 1) // max(1, cfg["samples"] - 1))
    idx = np.arange(0, n, stride)
    t = series.times[idx]
    rows = zip(t, series.samples[idx], dissipative.survival_two_level(h, t),
               dissipative.survival_two_level(h0, t))
    _write_csv(cfg["out"], cfg, ["t", "P_master", "P_twolevel", "P_twolevel_noDeltaE"],
               list(rows))


def _weights_rows(args):
    N, lam, J, U, max_states = args
    p = DimerParams.from_lambda(N, lam, J=J, U=U)
    w = np.sort(quantum.overlap_weights(p, quantum.self_trapping_point(p)))[::-1]
    cum = np.minimum(np.cumsum(w), 1.0)
    m = N + 1 if max_states is None else min(max_states, N + 1)
    return [(N, k + 1, cum[k]) for k in range(m)]


def cmd_weights(cfg):
    Ns = _parse_list(cfg["n"], int)
    if not Ns:
        raise UsageError("empty N range")
    if min(Ns) < 2:
        raise UsageError("weights needs N >= 2 for every point")
    lam = cfg["lambda"]
    if lam is None or lam <= 1:
        raise UsageError("weights needs --lambda > 1 (self-trapping)")
    J, U = cfg["j_hz"], cfg["u_hz"]
    if (J is None) == (U is None):
        raise UsageError("give exactly one of --j-hz or --u-hz")
    blocks = _pmap(_weights_rows, [(N, lam, J, U, cfg["max_states"]) for N in Ns])
    rows = [r for b in blocks for r in b]
    _write_csv(cfg["out"], cfg, ["N", "n", "weight"], rows)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "splitting-sweep": cmd_splitting_sweep,
    "husimi": cmd_husimi,
    "dissipate": cmd_dissipate,
    "weights": cmd_weights,
}

DEFAULTS = {"source": "exact", "grid": "61x61", "samples": 501, "no_exact": False,
            "phi0": None, "z0": None, "times": None, "max_states": None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimertunnel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        list_n = name in ("splitting-sweep", "weights")
        sp.add_argument("--n", type=str if list_n else int, default=None,
                        help="particle number" + (" (list a,b,c or range a:b)" if list_n else ""))
        sp.add_argument("--lambda", dest="lambda", default=None,
                        type=str if name == "splitting-sweep" else float,
                        help="U N / (2 J)" + (" (list or start:stop:count)"
                                              if name == "splitting-sweep" else ""))
        sp.add_argument("--j-hz", type=float, default=None, help="hopping J (angular)")
        sp.add_argument("--u-hz", type=float, default=None, help="interaction U (angular)")
        sp.add_argument("--out", default=None, help="output CSV path (stdout if omitted)")
        sp.add_argument("--config", default=None, help="JSON file with default flag values")
        if name in ("husimi", "dissipate"):
            sp.add_argument("--z0", type=float, default=None)
            sp.add_argument("--phi0", type=float, default=None)
            sp.add_argument("--source", choices=SOURCES, default=None)
        if name == "husimi":
            sp.add_argument("--grid", default=None, help="NZxNPHI or N")
            sp.add_argument("--times", default=None, help="comma list of times")
        if name == "dissipate":
            sp.add_argument("--gamma-hz", type=float, default=None)
            sp.add_argument("--t-end", type=float, default=None)
            sp.add_argument("--dt", type=float, default=None)
            sp.add_argument("--samples", type=int, default=None)
        if name == "splitting-sweep":
            sp.add_argument("--no-exact", action="store_true", default=None)
        if name == "weights":
            sp.add_argument("--max-states", type=int, default=None)
    return parser


def resolve_config(ns: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in vars(ns).items() if k != "config"}
    if ns.config:
        with open(ns.config) as fh:
            file_cfg = json.load(fh)
        for k, v in file_cfg.items():
            key = k.replace("-", "_")
            if key in cfg and cfg[key] is None:  # flags win
                cfg[key] = v
    for k, v in DEFAULTS.items():
        if k in cfg and cfg[k] is None:
            cfg[k] = v
    if cfg.get("command") == "husimi" and cfg.get("source") == "zero" and cfg.get("times") is None:
        raise UsageError("--source zero has no tunneling period; pass --times")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
        COMMANDS[cfg["command"]](cfg)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (DimerError, OSError, ValueError) as exc:
        print(f"dimertunnel: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
