"""Command line: ``alpfluids run | verify | presets``.

Exit codes: 0 success, 1 a verification check failed, 2 invalid configuration,
3 non-finite state during a run, 4 solver or model-domain failure.
The default output directory may be set with ``ALPFLUIDS_OUTPUT_DIR``.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import dump_config, load_config
from .errors import EXIT_OK, EXIT_VERIFY_FAILED, AlpFluidsError, ConfigError
from .presets import PRESETS, get_preset
from .simulate import run_simulation

OUTPUT_ENV = "ALPFLUIDS_OUTPUT_DIR"


def _resolve_output_dir(args, cfg, stem: str) -> Path:
    if args.output_dir:
        return Path(args.output_dir)
    if cfg.output.dir:
        return Path(cfg.output.dir)
    return Path(os.environ.get(OUTPUT_ENV, "runs")) / stem


def cmd_run(args) -> int:
    if args.preset:
        cfg = get_preset(args.preset).config()
        stem = args.preset
    else:
        cfg = load_config(args.config)
        stem = Path(args.config).stem
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    if args.steps_override is not None:
        if args.steps_override < 0:
            raise ConfigError("--steps-override", "must be non-negative")
        cfg = cfg.with_steps(args.steps_override)
    out_dir = _resolve_output_dir(args, cfg, stem)
    cfg = cfg.with_output_dir(str(out_dir))
    if not args.quiet:
        print("# resolved configuration")
        print(dump_config(cfg), end="")
        print("# end of configuration", flush=True)
    log = None if args.quiet else (lambda msg: print(msg, flush=True))
    res = run_simulation(cfg, log=log)
    if not args.quiet:
        last = res.records[-1]
        print(f"done: {len(res.records)} records, t={last.time:.6g}, h={last.hamiltonian:.12g}")
        print(f"output: {out_dir}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suites

    ok = True
    for res in run_suites(args.suite):
        if not args.quiet:
            print(f"== suite {res.name} ==")
        for c in res.checks:
            if not args.quiet or not c.passed:
                print(c.line())
        if not args.quiet:
            for note in res.notes:
                print(f"  note: {note}")
            print(f"== suite {res.name}: {'PASS' if res.passed else 'FAIL'} "
                  f"({len(res.checks)} checks, {res.seconds:.1f} s) ==")
        ok = ok and res.passed
    print("verify:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_presets(args) -> int:
    if args.dump:
        print(get_preset(args.dump).text, end="")
        return EXIT_OK
    if args.write:
        out = Path(args.write)
        out.mkdir(parents=True, exist_ok=True)
        for name, p in PRESETS.items():
            (out / f"{name}.ini").write_text(p.text)
    width = max(len(n) for n in PRESETS)
    for name, p in PRESETS.items():
        print(f"{name:<{width}}  [{p.runtime_class}]  {p.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alpfluids", description="Affine Lie-Poisson fluid models on periodic boxes.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="integrate a configuration")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("config", nargs="?", help="INI configuration file")
    src.add_argument("--preset", help="run a shipped preset by name")
    run.add_argument("--output-dir", help=f"output directory (default: [output] dir, then ${OUTPUT_ENV}/<name>)")
    run.add_argument("--seed", type=int, help="override the initial-data seed")
    run.add_argument("--steps-override", type=int, help="run exactly this many steps")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", help="run property suites")
    ver.add_argument("suite", choices=["liealg", "affine", "fields", "models", "circulation", "all"])
    ver.add_argument("--quiet", action="store_true", help="print failures and the verdict only")
    ver.set_defaults(func=cmd_verify)

    pre = sub.add_parser("presets", help="list shipped presets")
    pre.add_argument("--dump", metavar="NAME", help="print one preset as INI")
    pre.add_argument("--write", metavar="DIR", help="write every preset to DIR/<name>.ini")
    pre.set_defaults(func=cmd_presets)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AlpFluidsError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
