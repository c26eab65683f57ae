"""Run reports: pass/fail semantics, schema validation and text rendering."""

import json
import tempfile
import unittest
from pathlib import Path

from bianchi_padic.exceptions import ConfigError
from bianchi_padic.reporting import RunReport, regression_hash, render_text, to_json, validate_report, write_json

CONFIG = {
    "field": {"D": 4, "p": 5, "iota_seed": 2},
    "precision": {"N": 4, "M_effective": 5, "T": 1, "digits": 50},
}


def sample_report(**kwargs):
    report = RunReport(command="verify-interp", config=CONFIG, **kwargs)
    report.timings["field"] = 0.25
    report.add_check({"kind": "interpolation", "label": "trivial", "fingerprint": "ab", "ok": True, "valuation": 3, "required": 2})
    report.add_check({"kind": "avatar", "label": "psi", "fingerprint": "cd", "ok": False, "skipped": "no avatar"})
    report.add_hash("lambda/ab", "1/128")
    return report


class TestRunReport(unittest.TestCase):
    def test_skipped_optional_checks_pass(self):
        report = sample_report()
        self.assertTrue(report.ok)
        self.assertEqual(report.counts, {"passed": 1, "failed": 0, "skipped": 1})

    def test_skipped_required_checks_fail(self):
        for kind in ("interpolation", "katz"):
            with self.subTest(kind=kind):
                report = RunReport(command="verify-all", config=CONFIG)
                report.add_check({"kind": kind, "label": "psi", "ok": False, "skipped": "no embedding"})
                self.assertFalse(report.ok)
                self.assertEqual(report.counts["skipped"], 1)

    def test_failed_check_or_error_fails(self):
        report = sample_report()
        report.add_check({"kind": "lift", "ok": False})
        self.assertFalse(report.ok)
        self.assertFalse(sample_report(error={"stage": "lift", "message": "boom"}).ok)

    def test_payload(self):
        payload = sample_report().as_dict()
        self.assertEqual(payload["schema_version"], "1")
        self.assertEqual([check["kind"] for check in payload["checks"]], ["avatar", "interpolation"])
        self.assertEqual(payload["counts"]["skipped"], 1)
        self.assertEqual(payload["regression_hashes"]["lambda/ab"], regression_hash("1/128"))
        validate_report(payload)

    def test_schema_violation(self):
        payload = sample_report().as_dict()
        payload["regression_hashes"]["bad"] = "not-a-digest"
        with self.assertRaises(ConfigError):
            validate_report(payload)

    def test_json_output(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "report.json"
            write_json(sample_report(), path)
            written = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(written["checks"], json.loads(to_json(sample_report()))["checks"])
        self.assertTrue(written["ok"])

    def test_text_rendering(self):
        text = render_text(sample_report(error={"stage": "katz", "message": "boom"}))
        self.assertIn("status: FAIL", text)
        self.assertIn("checks: passed=1 failed=0 skipped=1", text)
        self.assertIn("field: D=4 p=5 iota seed=2", text)
        self.assertIn("[ok] interpolation trivial valuation=3/2", text)
        self.assertIn("[skip] avatar psi", text)
        self.assertIn("error: stage=katz boom", text)


if __name__ == "__main__":
    unittest.main()
