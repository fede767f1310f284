"""Unified command-line front end.

Subcommands: mac-sim (channel-access latency studies), phy (modem BER),
loc (localization Monte-Carlo), nlos (synthetic CIR sets and the
feature-subset study), repro (the canned study sweeps). Every CSV written
is accompanied by a manifest JSON carrying the resolved configuration,
seed, and toolkit version, which is enough to reproduce it byte for byte.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:                      # Python < 3.11
    import tomli as tomllib

from . import __version__
from .gfdm import GfdmConfig, awgn, ber_run, gfdm_modulate, map_resources, \
    bits_to_symbols, build_frame
from .gfdm.channel import noise_sigma_for_ebn0
from .locate import (DEFAULT_ROOM_ANCHORS, Anchor, LocalizationServer,
                     RangingNoise, sample_ms_position)
from .mac import PhyParams, Scenario, sweep, sweep_rows_to_csv
from .mac.core import ar_class, safety_class
from .mac.sweep import parse_range
from .nlos import (ForestParams, SUBSETS, SyntheticCirParams, evaluate_subsets,
                   generate_dataset, read_cirs, write_cirs)


class ConfigError(ValueError):
    pass


# ----------------------------------------------------------- config files

MANIFEST_KEYS = {"subcommand", "version", "seed", "config", "outputs"}


def load_config(path: str | Path) -> dict:
    """Parse a TOML or JSON config file (by extension). A manifest JSON
    written by an earlier run is unwrapped to its embedded config, so any
    output can be reproduced straight from its manifest."""
    cfg, _ = load_config_and_seed(path)
    return cfg


def load_config_and_seed(path: str | Path) -> tuple[dict, int | None]:
    p = Path(path)
    text = p.read_bytes()
    try:
        if p.name.endswith(".json"):
            raw = json.loads(text.decode())
        elif p.suffix.lower() == ".toml":
            raw = tomllib.loads(text.decode())
        else:
            raise ConfigError(
                f"{p}: unsupported config extension (want .toml or .json)")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{p}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{p}: {e}") from e
    if isinstance(raw, dict) and MANIFEST_KEYS <= set(raw):
        return dict(raw["config"]), int(raw["seed"])
    return raw, None


def merge_config(defaults: dict, file_cfg: dict, overrides: dict) -> dict:
    """defaults < config file < explicit CLI flags; unknown keys rejected."""
    unknown = set(file_cfg) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown config key {sorted(unknown)[0]!r} "
                          f"(known: {', '.join(sorted(defaults))})")
    out = dict(defaults)
    out.update(file_cfg)
    out.update({k: v for k, v in overrides.items() if v is not None})
    return out


def write_manifest(csv_path: Path, subcommand: str, config: dict,
                   seed: int, outputs: list[str]) -> None:
    manifest = {
        "subcommand": subcommand,
        "version": __version__,
        "seed": seed,
        "config": config,
        "outputs": outputs,
    }
    man_path = csv_path.with_suffix(csv_path.suffix + ".manifest.json")
    man_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _resolve_out(args, name: str) -> Path:
    out = Path(name)
    if not out.is_absolute() and args.out_dir:
        out = Path(args.out_dir) / out
    out.parent.mkdir(parents=True, exist_ok=True)
    return out


# ------------------------------------------------------------- mac-sim

_PHY_FIELD_NAMES = tuple(f.name for f in dataclasses.fields(PhyParams))

MAC_DEFAULTS = {
    "access": "hcca",
    "scheduler": "ref",
    "n_ar": "5..50:5",
    "n_safety": 2,
    "safety_msi_ms": 8.0,
    "safety_period_ms": 8.0,
    "safety_payload_bytes": 64,
    "ar_msi_ms": 50.0,
    "ar_period_ms": 50.0,
    "ar_payload_bytes": 4200,
    "duration_s": 30.0,
    # PHY timing constants, all overridable
    **{name: getattr(PhyParams(), name) for name in _PHY_FIELD_NAMES},
}


def _scenario_from(cfg: dict, seed: int) -> Scenario:
    phy = PhyParams(**{name: cfg[name] for name in _PHY_FIELD_NAMES})
    return Scenario(
        n_safety=int(cfg["n_safety"]),
        access=cfg["access"],
        scheduler=cfg["scheduler"],
        duration_s=float(cfg["duration_s"]),
        seed=seed,
        phy=phy,
        safety=safety_class(msi_ms=float(cfg["safety_msi_ms"]),
                            payload_bytes=int(cfg["safety_payload_bytes"]),
                            generation_period_ms=float(cfg["safety_period_ms"])),
        ar=ar_class(msi_ms=float(cfg["ar_msi_ms"]),
                    payload_bytes=int(cfg["ar_payload_bytes"]),
                    generation_period_ms=float(cfg["ar_period_ms"])),
    )


def _file_cfg_and_seed(path: str) -> tuple[dict, int | None]:
    return load_config_and_seed(path) if path else ({}, None)


def _resolve_seed(args, manifest_seed: int | None) -> int:
    if args.seed is not None:
        return args.seed
    return manifest_seed if manifest_seed is not None else 1


def cmd_mac_sim(args) -> int:
    file_cfg, man_seed = _file_cfg_and_seed(args.config)
    overrides = {
        "access": args.access, "scheduler": args.scheduler, "n_ar": args.n_ar,
        "safety_msi_ms": args.safety_msi, "duration_s": args.duration,
    }
    cfg = merge_config(MAC_DEFAULTS, file_cfg, overrides)
    seed = _resolve_seed(args, man_seed)
    scenario = _scenario_from(cfg, seed)
    points = parse_range(str(cfg["n_ar"]))
    csv = sweep_rows_to_csv(sweep(scenario, points, workers=args.threads))
    out = _resolve_out(args, args.out)
    out.write_text(csv)
    write_manifest(out, "mac-sim", cfg, seed, [out.name])
    print(f"wrote {out} ({len(points)} points)")
    return 0


# ----------------------------------------------------------------- phy

PHY_DEFAULTS = {
    "k": 512, "m": 1, "pulse": "rect", "rolloff": 0.5,
    "active_subcarriers": None,
    "cp_len": 8, "cs_len": 0, "constellation": "qpsk", "receiver": "zf",
    "preamble_seed": 2024, "preamble_boost_db": 12.0, "window_len": 0,
    "delay_samples": 13,
}


def _gfdm_from(cfg: dict) -> GfdmConfig:
    fields = {f.name for f in dataclasses.fields(GfdmConfig)}
    kwargs = {k: v for k, v in cfg.items() if k in fields}
    if kwargs.get("active_subcarriers") is not None:
        kwargs["active_subcarriers"] = tuple(kwargs["active_subcarriers"])
    return GfdmConfig(**kwargs)


def cmd_phy_ber(args) -> int:
    file_cfg, man_seed = _file_cfg_and_seed(args.config)
    cfg = merge_config(dict(PHY_DEFAULTS, bits="1e6", snr_db="0..8:4"),
                       file_cfg, {"bits": args.bits, "snr_db": args.snr_db})
    seed = _resolve_seed(args, man_seed)
    gfdm = _gfdm_from(cfg)
    grid_spec = str(cfg["snr_db"])
    ebn0_points = [float(v) for v in parse_range(grid_spec)] \
        if ".." in grid_spec else [float(x) for x in grid_spec.split(",")]
    n_bits = int(float(cfg["bits"]))
    rows = ["snr_db,ber,bits"]
    for ebn0 in ebn0_points:
        sigma = noise_sigma_for_ebn0(gfdm, ebn0)
        res = ber_run(gfdm, awgn(sigma, delay=int(cfg["delay_samples"])),
                      n_bits, seed=seed)
        rows.append(f"{ebn0:g},{res.ber:.8f},{res.bit_count}")
    out = _resolve_out(args, args.out)
    out.write_text("\n".join(rows) + "\n")
    outputs = [out.name]
    if args.dump_iq:
        iq_path = _resolve_out(args, args.dump_iq)
        _dump_reference_frame(gfdm, iq_path, seed)
        outputs.append(iq_path.name)
    write_manifest(out, "phy-ber", {**cfg, "bits": n_bits}, seed, outputs)
    print(f"wrote {out} ({len(ebn0_points)} points)")
    return 0


def _dump_reference_frame(gfdm: GfdmConfig, path: Path, seed: int) -> None:
    """Interleaved little-endian float64 I/Q of one modulated frame."""
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, gfdm.bits_per_block)
    grid = map_resources(bits_to_symbols(bits, gfdm.constellation), gfdm)
    samples = build_frame(gfdm_modulate(grid, gfdm), gfdm).samples
    iq = np.empty(2 * samples.size, dtype="<f8")
    iq[0::2] = samples.real
    iq[1::2] = samples.imag
    path.write_bytes(iq.tobytes())


# ----------------------------------------------------------------- loc

def _load_anchors(path) -> list[Anchor]:
    spec = json.loads(Path(path).read_text())
    return [Anchor(int(a["id"]), (float(a["x"]), float(a["y"]), float(a["z"])))
            for a in spec]


def _load_path(path) -> list[tuple[float, float, float]]:
    spec = json.loads(Path(path).read_text())
    out = []
    for p in spec:
        if isinstance(p, dict):
            out.append((float(p["x"]), float(p["y"]), float(p["z"])))
        else:
            out.append((float(p[0]), float(p[1]), float(p[2])))
    return out


def cmd_loc_sim(args) -> int:
    anchors = _load_anchors(args.anchors) if args.anchors \
        else list(DEFAULT_ROOM_ANCHORS)
    waypoints = _load_path(args.path) if args.path else None
    noise = RangingNoise(sigma_d_m=args.sigma_d)
    server = LocalizationServer(anchors=anchors)
    seed = _resolve_seed(args, None)
    rng = np.random.default_rng(seed)
    rows = ["trial,true_x,true_y,true_z,est_x,est_y,est_z,err_m,"
            "residual_rms,iterations"]
    for t in range(args.trials):
        if waypoints:
            p = np.asarray(waypoints[t % len(waypoints)], dtype=float)
        else:
            p = sample_ms_position(rng)
        est = server.locate(ms_id=t, true_position=p, noise=noise, rng=rng)
        err = float(np.linalg.norm(est.position - p))
        e = est.position
        rows.append(f"{t},{p[0]:.6f},{p[1]:.6f},{p[2]:.6f},"
                    f"{e[0]:.6f},{e[1]:.6f},{e[2]:.6f},{err:.6f},"
                    f"{est.residual_rms_m:.6f},{est.iterations}")
    out = _resolve_out(args, args.out)
    out.write_text("\n".join(rows) + "\n")
    cfg = {"sigma_d": args.sigma_d, "trials": args.trials,
           "anchors": [dataclasses.asdict(a) for a in anchors],
           "path": args.path or ""}
    write_manifest(out, "loc-sim", cfg, seed, [out.name])
    print(f"wrote {out} ({args.trials} trials)")
    return 0


# ---------------------------------------------------------------- nlos

NLOS_DEFAULTS = {
    "n_per_class": 1000, "tap_count": 16, "los_k_factor_db": 6.0,
    "los_delay_spread_taps": 2.5, "nlos_delay_spread_taps": 7.5,
    "n_trees": 100, "max_depth": 8, "min_leaf": 2, "train_fraction": 0.7,
}


def cmd_nlos_gen(args) -> int:
    file_cfg, man_seed = _file_cfg_and_seed(args.params)
    cfg = merge_config(NLOS_DEFAULTS, file_cfg, {})
    seed = _resolve_seed(args, man_seed)
    params = SyntheticCirParams(
        n_per_class=int(cfg["n_per_class"]), tap_count=int(cfg["tap_count"]),
        los_k_factor_db=float(cfg["los_k_factor_db"]),
        los_delay_spread_taps=float(cfg["los_delay_spread_taps"]),
        nlos_delay_spread_taps=float(cfg["nlos_delay_spread_taps"]),
        seed=seed)
    cirs, labels = generate_dataset(params)
    out = _resolve_out(args, args.out)
    write_cirs(out, cirs, labels)
    write_manifest(out, "nlos-gen", cfg, seed, [out.name])
    print(f"wrote {out} ({labels.size} records)")
    return 0


def cmd_nlos_eval(args) -> int:
    cirs, labels = read_cirs(args.data)
    subsets = [s.strip().lower() for s in args.subsets.split(",")]
    for s in subsets:
        if s not in SUBSETS:
            raise ConfigError(f"unknown feature subset {s!r}")
    file_cfg, man_seed = _file_cfg_and_seed(args.params)
    file_cfg.pop("subsets", None)        # manifest round-trips carry these
    cfg = merge_config(NLOS_DEFAULTS, file_cfg, {})
    seed = _resolve_seed(args, man_seed)
    params = ForestParams(n_trees=int(cfg["n_trees"]),
                          max_depth=int(cfg["max_depth"]),
                          min_leaf=int(cfg["min_leaf"]))
    accs = evaluate_subsets(cirs, labels, subsets=subsets,
                            train_fraction=float(cfg["train_fraction"]),
                            params=params, seed=seed)
    rows = ["subset,los_acc,nlos_acc,overall"]
    rows += [f"{a.subset},{a.los_acc:.6f},{a.nlos_acc:.6f},{a.overall:.6f}"
             for a in accs]
    out = _resolve_out(args, args.out)
    out.write_text("\n".join(rows) + "\n")
    write_manifest(out, "nlos-eval", {**cfg, "subsets": subsets}, seed,
                   [out.name])
    print(f"wrote {out}")
    return 0


# ---------------------------------------------------------------- repro

def cmd_repro(args) -> int:
    if args.figure == "fig-delay":
        jobs = [("dcf", "ref"), ("pcf", "ref"), ("hcca", "ref")]
        safety_msi = 8.0
    else:  # fig-scheduler
        jobs = [("hcca", "ref"), ("hcca", "edf")]
        safety_msi = 24.0
    seed = _resolve_seed(args, None)
    points = parse_range(args.n_ar)
    outputs = []
    for access, sched in jobs:
        cfg = dict(MAC_DEFAULTS, access=access, scheduler=sched,
                   safety_msi_ms=safety_msi, duration_s=args.duration,
                   n_ar=args.n_ar)
        scenario = _scenario_from(cfg, seed)
        csv = sweep_rows_to_csv(sweep(scenario, points, workers=args.threads))
        name = f"{access}.csv" if args.figure == "fig-delay" \
            else f"{access}_{sched}.csv"
        out = _resolve_out(args, name)
        out.write_text(csv)
        write_manifest(out, f"repro-{args.figure}", cfg, seed, [out.name])
        outputs.append(str(out))
        print(f"wrote {out}")
    return 0


# ----------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default 1, or the manifest's seed "
                             "when --config points at one)")
    common.add_argument("--out-dir", default="")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--config", default="")

    parser = argparse.ArgumentParser(
        prog="indradio",
        description="Industrial WLAN simulation toolkit: channel-access "
                    "latency, waveform BER, localization, NLOS identification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mac-sim", parents=[common],
                       help="channel-access latency sweep")
    p.add_argument("--access", choices=["dcf", "pcf", "hcca"], default=None)
    p.add_argument("--scheduler", choices=["ref", "edf"], default=None)
    p.add_argument("--n-ar", default=None, help="A..B[:step] or single count")
    p.add_argument("--safety-msi", type=float, default=None)
    p.add_argument("--duration", type=float, default=None)
    p.add_argument("--out", default="mac.csv")
    p.set_defaults(func=cmd_mac_sim)

    p = sub.add_parser("phy", parents=[common], help="modem studies")
    phy_sub = p.add_subparsers(dest="phy_command", required=True)
    pb = phy_sub.add_parser("ber", parents=[common])
    pb.add_argument("--snr-db", default=None,
                    help="Eb/N0 grid in dB: A..B[:step] or comma list "
                         "(default 0..8:4)")
    pb.add_argument("--bits", default=None, help="default 1e6")
    pb.add_argument("--out", default="ber.csv")
    pb.add_argument("--dump-iq", default="",
                    help="also dump one modulated frame as float64 I/Q")
    pb.set_defaults(func=cmd_phy_ber)

    p = sub.add_parser("loc", parents=[common], help="localization studies")
    loc_sub = p.add_subparsers(dest="loc_command", required=True)
    ls = loc_sub.add_parser("sim", parents=[common])
    ls.add_argument("--anchors", default="", help="anchors JSON file")
    ls.add_argument("--path", default="", help="MS waypoint JSON file")
    ls.add_argument("--sigma-d", type=float, default=1.0)
    ls.add_argument("--trials", type=int, default=1000)
    ls.add_argument("--out", default="fixes.csv")
    ls.set_defaults(func=cmd_loc_sim)

    p = sub.add_parser("nlos", parents=[common], help="NLOS identification")
    nlos_sub = p.add_subparsers(dest="nlos_command", required=True)
    ng = nlos_sub.add_parser("gen", parents=[common])
    ng.add_argument("--params", default="", help="TOML/JSON parameter file")
    ng.add_argument("--out", default="cirs.bin")
    ng.set_defaults(func=cmd_nlos_gen)
    ne = nlos_sub.add_parser("eval", parents=[common])
    ne.add_argument("--data", required=True)
    ne.add_argument("--subsets", default="s1,s2,s3,s4")
    ne.add_argument("--params", default="", help="TOML/JSON parameter file")
    ne.add_argument("--out", default="acc.csv")
    ne.set_defaults(func=cmd_nlos_eval)

    p = sub.add_parser("repro", parents=[common],
                       help="reproduce the study sweeps")
    p.add_argument("figure", choices=["fig-delay", "fig-scheduler"])
    p.add_argument("--n-ar", default="5..50:5")
    p.add_argument("--duration", type=float, default=30.0)
    p.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
