"""Command-line entry point: `bianchi-padic <command> [options]`."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, List, Optional

from .config import PipelineConfig
from .exceptions import ConfigError, StageError
from .pipeline import COMMANDS, run
from .reporting import RunReport, render_text, to_json, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_STAGE_ERROR = 2

LOG_FORMAT = "ts=%(asctime)s level=%(levelname)s logger=%(name)s %(message)s"

# (flag, section, key, type)
_OVERRIDES = (
    ("--D", "field", "D", int),
    ("--p", "field", "p", int),
    ("--seed", "field", "iota_seed", int),
    ("--uniformizer-unit", "field", "uniformizer_unit", int),
    ("--phi-power", "character", "phi_power", int),
    ("--N", "precision", "N", int),
    ("--M", "precision", "M", int),
    ("--T", "precision", "T", int),
    ("--digits", "precision", "digits", int),
    ("--max-t", "selection", "max_t", int),
    ("--max-s", "selection", "max_s", int),
    ("--cache-dir", "runtime", "cache_dir", str),
    ("--output", "runtime", "output", str),
    ("--text-output", "runtime", "text_output", str),
    ("--workers", "runtime", "workers", int),
)


def configure_logging(level: str) -> None:
    """Root logger with key=value lines on stderr."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.INFO))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bianchi-padic",
        description="p-adic L-functions of base-change Bianchi forms of CM Hecke characters.",
    )
    parser.add_argument("command", choices=COMMANDS, help="Stage to run; prerequisite stages run first.")
    parser.add_argument("--config", help="YAML configuration file (validated against the config schema).")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default: INFO).")
    parser.add_argument("--no-cache", action="store_true", help="Do not read or write the L-value cache.")
    parser.add_argument("--text", action="store_true", help="Print the text rendering instead of JSON.")
    for flag, section, key, kind in _OVERRIDES:
        parser.add_argument(flag, dest=f"{section}__{key}", type=kind, default=None, help=f"Override {section}.{key}.")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, dict[str, Any]]:
    data: dict[str, dict[str, Any]] = {}
    for _, section, key, _ in _OVERRIDES:
        value = getattr(args, f"{section}__{key}")
        if value is not None:
            data.setdefault(section, {})[key] = value
    if args.no_cache:
        data.setdefault("runtime", {})["use_cache"] = False
    if args.log_level:
        data.setdefault("runtime", {})["log_level"] = args.log_level.upper()
    return data


def load_config(args: argparse.Namespace) -> PipelineConfig:
    config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    overrides = _overrides(args)
    return PipelineConfig.from_mapping(overrides, base=config) if overrides else config


def exit_code(report: RunReport) -> int:
    if report.error is not None:
        return EXIT_STAGE_ERROR
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ConfigError as exc:
        configure_logging(args.log_level or "INFO")
        logger.error("stage=config error=%s", exc.message)
        return EXIT_STAGE_ERROR
    configure_logging(config.runtime.log_level)
    try:
        report = run(args.command, config)
    except StageError as exc:
        logger.error("stage=%s error=%s", exc.stage, exc.cause)
        return EXIT_STAGE_ERROR
    if config.runtime.output:
        write_json(report, config.runtime.output)
    if config.runtime.text_output:
        with open(config.runtime.text_output, "w", encoding="utf-8") as handle:
            handle.write(render_text(report))
    sys.stdout.write((render_text(report) if args.text else to_json(report)) + "\n")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
