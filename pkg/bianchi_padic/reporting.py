"""Machine-readable run reports and their text rendering."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Optional

import jsonschema
from jinja2 import Environment, FileSystemLoader, StrictUndefined

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
SCHEMA_PATH = Path(__file__).resolve().parent / "schemas" / "report.schema.json"
TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"

# Kinds whose skipped records fail the run.
REQUIRED_KINDS = frozenset({"interpolation", "katz"})


def regression_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    command: str
    config: dict
    timings: dict[str, float] = dataclass_field(default_factory=dict)
    sections: dict[str, Any] = dataclass_field(default_factory=dict)
    checks: list[dict] = dataclass_field(default_factory=list)
    regression_hashes: dict[str, str] = dataclass_field(default_factory=dict)
    error: Optional[dict] = None

    @staticmethod
    def passes(check: dict) -> bool:
        if check.get("skipped"):
            return check.get("kind") not in REQUIRED_KINDS
        return bool(check.get("ok", False))

    @property
    def ok(self) -> bool:
        if self.error is not None:
            return False
        return all(self.passes(check) for check in self.checks)

    @property
    def counts(self) -> dict[str, int]:
        skipped = sum(1 for check in self.checks if check.get("skipped"))
        passed = sum(1 for check in self.checks if not check.get("skipped") and check.get("ok", False))
        return {"passed": passed, "failed": len(self.checks) - passed - skipped, "skipped": skipped}

    def add_check(self, record: dict) -> None:
        self.checks.append(record)

    def add_hash(self, label: str, canonical: str) -> None:
        self.regression_hashes[label] = regression_hash(canonical)

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "ok": self.ok,
            "counts": self.counts,
            "config": self.config,
            "timings": {stage: round(seconds, 6) for stage, seconds in self.timings.items()},
            "sections": self.sections,
            "checks": sorted(self.checks, key=lambda c: (c.get("kind", ""), c.get("fingerprint", ""), c.get("name", ""))),
            "regression_hashes": dict(sorted(self.regression_hashes.items())),
            "error": self.error,
        }


def validate_report(payload: dict) -> None:
    with open(SCHEMA_PATH, "r", encoding="utf-8") as handle:
        schema = json.load(handle)
    try:
        jsonschema.validate(instance=payload, schema=schema)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"report does not match schema version {SCHEMA_VERSION}: {exc.message}") from exc


def to_json(report: RunReport) -> str:
    payload = report.as_dict()
    validate_report(payload)
    return json.dumps(payload, indent=2, sort_keys=True, default=str)


def write_json(report: RunReport, path: str | Path) -> None:
    text = to_json(report)
    Path(path).write_text(text + "\n", encoding="utf-8")
    logger.info("report written to %s", path)


def render_text(report: RunReport, template_name: str = "report.txt.j2") -> str:
    """Render with Jinja2 StrictUndefined (fail fast)."""
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
    )
    return env.get_template(template_name).render(report=report.as_dict())
