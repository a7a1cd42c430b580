"""Command-line front end.

    dnaqpu SUBCOMMAND [--config FILE] [--set section.key=value ...]
                      [--output PATH] [--format csv|json]

Exit codes: 0 success, 2 configuration error (E_CONFIG), 3 physics or
validation error (E_PHYSICS), 4 I/O error (E_IO).  Errors are reported as
one ``ERROR <code>: <message>`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from . import __version__
from .circuits import BELL_VARIANTS, bell_input, bell_prep, bell_target
from .dynamics import (
    RAMSEY_PROTOCOLS,
    DephasingRates,
    lindblad_dephase,
    ramsey_entangle,
    series_from_states,
    transition_spectrum,
)
from .errors import DnaQpuError
from .fermion import load_integrals, taper_two_qubit, vqe, VQEOptions, build_fermion_h, exact_ground
from .hamiltonians import SpinSystemParams, ZfsParams, secular_h
from .kinetics import KineticsParams, summary
from .qmath import concurrence, dm, eigh, fidelity_up_to_phase
from .states import SpatialModel, singlet, spatial_two_proton, zeeman_triplets, zfs_triplets

SUBCOMMANDS = ("evolve", "ramsey", "bell", "spectrum", "vqe", "kinetics", "spatial")

EXIT_CONFIG, EXIT_PHYSICS, EXIT_IO = 2, 3, 4


class ConfigError(Exception):
    pass


# --- units ------------------------------------------------------------------------

_UNITS = {
    "frequency": {"rad/s": 1.0, "Hz": 2 * np.pi, "kHz": 2e3 * np.pi, "MHz": 2e6 * np.pi},
    "coupling_hz": {"Hz": 1.0, "kHz": 1e3, "rad/s": 1 / (2 * np.pi)},
    "rate": {"1/s": 1.0, "Hz": 1.0},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6},
    "length": {"angstrom": 1.0, "nm": 10.0, "pm": 0.01},
    "energy": {"eV": 1.0, "meV": 1e-3},
    "wavenumber": {"cm^-1": 1.0},
    "temperature": {"K": 1.0},
}


def quantity(section: dict, key: str, kind: str, default: float | None = None,
             required: bool = True, section_name: str = "") -> float | None:
    """Read ``section[key]`` as ``{"value", "units"}`` or a bare number plus
    a section-level ``units`` field, converted to the internal unit of ``kind``."""
    where = f"{section_name}.{key}" if section_name else key
    if key not in section:
        if default is not None or not required:
            return default
        raise ConfigError(f"missing required quantity {where}")
    raw = section[key]
    if isinstance(raw, dict):
        value, units = raw.get("value"), raw.get("units")
    else:
        value, units = raw, section.get("units")
    if units is None:
        raise ConfigError(f"{where} has no units; add a 'units' field")
    table = _UNITS[kind]
    if units not in table:
        raise ConfigError(f"{where}: unsupported units {units!r} for {kind} (use one of {sorted(table)})")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    return float(value) * table[units]


def _section(cfg: dict, name: str) -> dict:
    s = cfg.get(name, {})
    if not isinstance(s, dict):
        raise ConfigError(f"section {name!r} must be an object")
    return s


def spin_params(cfg: dict) -> SpinSystemParams:
    s = _section(cfg, "spin")
    if not s:
        raise ConfigError("missing section 'spin'")
    return SpinSystemParams(
        omega0=quantity(s, "omega0", "frequency", default=0.0, section_name="spin"),
        # j_hz carries its unit in its name; a bare number is always Hz
        j_hz=quantity({**s, "units": "Hz"} if not isinstance(s.get("j_hz"), dict) else s,
                      "j_hz", "coupling_hz", default=0.0, section_name="spin"),
        d=quantity(s, "d", "frequency", default=0.0, section_name="spin"),
    )


def zfs_params(cfg: dict) -> ZfsParams:
    s = _section(cfg, "zfs")
    if not s:
        raise ConfigError("missing section 'zfs'")
    return ZfsParams(D=quantity(s, "D", "frequency", section_name="zfs"),
                     E=quantity(s, "E", "frequency", default=0.0, section_name="zfs"))


def time_grid(cfg: dict) -> np.ndarray:
    s = _section(cfg, "times")
    if "values" in s:
        scale = _UNITS["time"].get(s.get("units"))
        if scale is None:
            raise ConfigError("times.values needs 'units' (s, ms or us)")
        return np.asarray(s["values"], dtype=float) * scale
    start = quantity(s, "start", "time", default=0.0, section_name="times")
    stop = quantity(s, "stop", "time", section_name="times")
    count = s.get("count", 200)
    if not isinstance(count, int) or count < 1:
        raise ConfigError("times.count must be a positive integer")
    return np.linspace(start, stop, count)


# --- config assembly ----------------------------------------------------------------

def _parse_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_override(cfg: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"--set expects section.key=value, got {assignment!r}")
    path, value = assignment.split("=", 1)
    keys = [k for k in path.strip().split(".") if k]
    if not keys:
        raise ConfigError(f"--set has an empty key in {assignment!r}")
    node = cfg
    for k in keys[:-1]:
        nxt = node.setdefault(k, {})
        if not isinstance(nxt, dict):
            raise ConfigError(f"--set {path}: {k!r} is not a section")
        node = nxt
    node[keys[-1]] = _parse_value(value)


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return cfg


# --- subcommands -------------------------------------------------------------------------

_INITIAL = {
    "uu": lambda: np.array([1, 0, 0, 0], dtype=complex),
    "ud": lambda: np.array([0, 1, 0, 0], dtype=complex),
    "du": lambda: np.array([0, 0, 1, 0], dtype=complex),
    "dd": lambda: np.array([0, 0, 0, 1], dtype=complex),
    "T+": lambda: zeeman_triplets()[0].vector,
    "T0": lambda: zeeman_triplets()[1].vector,
    "T-": lambda: zeeman_triplets()[2].vector,
    "S": lambda: singlet().vector,
    "Tx": lambda: zfs_triplets()[0].vector,
    "Ty": lambda: zfs_triplets()[1].vector,
    "Tz": lambda: zfs_triplets()[2].vector,
}


def run_evolve(cfg: dict, fmt: str):
    p = spin_params(cfg)
    times = time_grid(cfg)
    s = _section(cfg, "evolve")
    name = s.get("initial", "ud")
    if name not in _INITIAL:
        raise ConfigError(f"evolve.initial must be one of {sorted(_INITIAL)}")
    psi0 = _INITIAL[name]()
    h = secular_h(p)
    deph = s.get("dephasing")
    if deph:
        rates = DephasingRates(
            quantity(deph, "gamma1", "rate", default=0.0, section_name="evolve.dephasing"),
            quantity(deph, "gamma2", "rate", default=0.0, section_name="evolve.dephasing"),
        )
        steps = int(s.get("steps", 200))
        rho = dm(psi0)
        states, t_prev = [], 0.0
        for t in times:
            if t < t_prev:
                raise ConfigError("times must be non-decreasing when dephasing is enabled")
            if t > t_prev:
                rho = lindblad_dephase(h, rho, rates, t - t_prev, steps=steps)
            states.append(rho)
            t_prev = t
    else:
        w, v = eigh(h)
        c0 = v.conj().T @ psi0
        states = [v @ (np.exp(-1j * w * t) * c0) for t in times]
    return _series_output(series_from_states(times, states), fmt)


def run_ramsey(cfg: dict, fmt: str):
    p = spin_params(cfg)
    times = time_grid(cfg)
    protocol = _section(cfg, "ramsey").get("protocol", "selective_pi")
    if protocol not in RAMSEY_PROTOCOLS:
        raise ConfigError(f"ramsey.protocol must be one of {RAMSEY_PROTOCOLS}")
    return _series_output(ramsey_entangle(p, times, protocol), fmt)


def _series_output(ts, fmt):
    if fmt == "csv":
        return ts.to_csv()
    rows = [dict(zip(ts.CSV_HEADER, map(float, r))) for r in ts.rows()]
    return _json({"columns": list(ts.CSV_HEADER), "rows": rows})


def _amps(v):
    return [[float(z.real), float(z.imag)] for z in v]


def run_bell(cfg: dict, fmt: str):
    variant = _section(cfg, "bell").get("variant", "Tz")
    if variant not in BELL_VARIANTS:
        raise ConfigError(f"bell.variant must be one of {BELL_VARIANTS}")
    if fmt != "json":
        raise ConfigError("bell writes JSON only")
    circ = bell_prep(variant)
    psi_in = bell_input(variant)
    out = circ.apply(psi_in)
    target = bell_target(variant)
    return _json({
        "variant": variant,
        "input": "|" + format(int(np.argmax(np.abs(psi_in))), "02b") + ">",
        "circuit": circ.to_text().splitlines(),
        "output": _amps(out),
        "target": _amps(target),
        "fidelity": fidelity_up_to_phase(out, target),
        "concurrence": concurrence(out),
    })


def run_spectrum(cfg: dict, fmt: str):
    source = _section(cfg, "spectrum").get("source", "zfs" if "zfs" in cfg else "spin")
    if source == "zfs":
        lines = transition_spectrum(zfs_params(cfg))
    elif source == "spin":
        lines = transition_spectrum(spin_params(cfg))
    else:
        raise ConfigError("spectrum.source must be 'zfs' or 'spin'")
    if fmt == "csv":
        body = "".join(f"{t.frequency:.17g},{t.lower},{t.upper}\n" for t in lines)
        return "frequency_rad_s,lower,upper\n" + body
    return _json({"source": source, "units": "rad/s", "transitions": [
        {"frequency": t.frequency, "lower": t.lower, "upper": t.upper} for t in lines]})


def run_vqe(cfg: dict, fmt: str):
    s = _section(cfg, "vqe")
    path = s.get("integrals")
    if not path:
        raise ConfigError("vqe.integrals (path to the integrals file) is required")
    if fmt != "json":
        raise ConfigError("vqe writes JSON only")
    ints = load_integrals(path)
    encoding = s.get("encoding", "jw")
    if encoding not in ("jw", "bk"):
        raise ConfigError("vqe.encoding must be 'jw' or 'bk'")
    tapered = taper_two_qubit(ints, encoding=encoding)
    res = vqe(tapered, VQEOptions(seed=int(cfg.get("seed", 0))))
    e_fock, _ = exact_ground(build_fermion_h(ints), 2, 0.0)
    return _json({
        "encoding": encoding,
        "g": list(tapered.g),
        "energy": res.energy,
        "theta": res.theta,
        "iterations": res.iterations,
        "exact_energy": res.exact_energy,
        "sector_ground_energy": e_fock,
        "in_manifold": res.in_manifold,
    })


def run_kinetics(cfg: dict, fmt: str):
    s = _section(cfg, "kinetics")
    kw = {}
    for key, kind in (("nu_tilde", "wavenumber"), ("R", "length"), ("r", "length"),
                      ("deltaE", "energy"), ("deltaE_star", "energy"), ("gap", "energy")):
        val = quantity(s, key, kind, required=False, section_name="kinetics")
        if val is not None:
            kw[key] = val
    params = KineticsParams(**kw)
    temperature = quantity(s, "temperature", "temperature", default=300.0, section_name="kinetics") \
        if "temperature" in s else 300.0
    p_target = s.get("occupation_target", 1.73e-4 if params.gap is None else None)
    if fmt != "json":
        raise ConfigError("kinetics writes JSON only")
    return _json(summary(params, temperature, p_target))


def run_spatial(cfg: dict, fmt: str):
    s = dict(_section(cfg, "spatial"))
    if fmt != "csv":
        raise ConfigError("spatial writes CSV only")
    kw = {}
    for key, name in (("separation", "separation"), ("width", "width"),
                      ("x_min", "x_min"), ("x_max", "x_max")):
        if key in s:
            kw[name] = quantity(s, key, "length", section_name="spatial")
    if "points" in s:
        kw["points"] = int(s["points"])
    if "parity" in s:
        kw["parity"] = int(s["parity"])
    grid = spatial_two_proton(SpatialModel(**kw))
    import io

    buf = io.StringIO()
    grid.to_csv(buf)
    return buf.getvalue()


RUNNERS = {
    "evolve": run_evolve, "ramsey": run_ramsey, "bell": run_bell, "spectrum": run_spectrum,
    "vqe": run_vqe, "kinetics": run_kinetics, "spatial": run_spatial,
}
DEFAULT_FORMAT = {"evolve": "csv", "ramsey": "csv", "spatial": "csv", "spectrum": "json",
                  "bell": "json", "vqe": "json", "kinetics": "json"}


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


# --- entry point ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"ERROR E_CONFIG: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dnaqpu", description="Two-proton spin qubit simulator for DNA base pairs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--config", "-c", help="JSON configuration file")
    ap.add_argument("--set", dest="overrides", action="append", default=[],
                    metavar="SECTION.KEY=VALUE", help="override a config entry (repeatable)")
    ap.add_argument("--output", "-o", help="output file (default: stdout)")
    ap.add_argument("--format", "-f", choices=("csv", "json"))
    ap.add_argument("--seed", type=int)
    ap.add_argument("--variant", choices=BELL_VARIANTS, help="shortcut for bell.variant")
    ap.add_argument("--integrals", help="shortcut for vqe.integrals")
    ap.add_argument("--protocol", choices=RAMSEY_PROTOCOLS, help="shortcut for ramsey.protocol")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        for ov in args.overrides:
            apply_override(cfg, ov)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.variant:
            cfg.setdefault("bell", {})["variant"] = args.variant
        if args.integrals:
            cfg.setdefault("vqe", {})["integrals"] = args.integrals
        if args.protocol:
            cfg.setdefault("ramsey", {})["protocol"] = args.protocol
        out_cfg = _section(cfg, "output")
        fmt = args.format or out_cfg.get("format") or DEFAULT_FORMAT[args.subcommand]
        if fmt not in ("csv", "json"):
            raise ConfigError("output.format must be csv or json")
        output = args.output or out_cfg.get("path")
        text = RUNNERS[args.subcommand](cfg, fmt)
        if output:
            with open(output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except ConfigError as exc:
        sys.stderr.write(f"ERROR E_CONFIG: {exc}\n")
        return EXIT_CONFIG
    except (DnaQpuError, ValueError) as exc:
        sys.stderr.write(f"ERROR E_PHYSICS: {exc}\n")
        return EXIT_PHYSICS
    except OSError as exc:
        sys.stderr.write(f"ERROR E_IO: {exc}\n")
        return EXIT_IO
    return 0


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
