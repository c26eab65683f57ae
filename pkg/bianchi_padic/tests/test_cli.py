"""Command-line entry point: exit codes, overrides and output channels."""

import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
from unittest import mock

import yaml

from bianchi_padic import cli
from bianchi_padic.reporting import RunReport

CONFIG = {
    "field": {"D": 4, "p": 5, "iota_seed": 2, "uniformizer_unit": 0},
    "character": {"phi_power": 1},
    "precision": {"N": 1, "M": 0, "T": 1, "digits": 50},
    "selection": {"max_t": 1, "max_s": 1, "infinity_types": [[0, 0]]},
    "runtime": {"workers": 1, "use_cache": False, "output": "", "text_output": ""},
}


@mock.patch("bianchi_padic.cli.configure_logging")
class TestMain(unittest.TestCase):
    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.addCleanup(self._directory.cleanup)
        self.directory = Path(self._directory.name)
        self.config_path = self.directory / "run.yaml"
        self.config_path.write_text(yaml.safe_dump(CONFIG), encoding="utf-8")

    def invoke(self, *argv):
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = cli.main(["--config", str(self.config_path), *argv])
        return code, buffer.getvalue()

    def test_field_info(self, _logging):
        code, output = self.invoke("field-info")
        self.assertEqual(code, cli.EXIT_OK)
        report = json.loads(output)
        field = report["sections"]["field"]
        self.assertEqual((field["class_number"], field["w"]), (1, 4))
        self.assertEqual(field["splitting"]["kind"], "split")
        self.assertTrue(report["ok"])

    def test_character_table(self, _logging):
        code, output = self.invoke("char-table")
        self.assertEqual(code, cli.EXIT_OK)
        report = json.loads(output)
        self.assertEqual(len(report["sections"]["char_table"]["characters"]), 7)
        self.assertEqual(len([c for c in report["checks"] if c["kind"] == "gauss_norm"]), 4)

    def test_text_and_file_outputs(self, _logging):
        target = self.directory / "report.json"
        code, output = self.invoke("field-info", "--text", "--output", str(target))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("status: PASS", output)
        self.assertEqual(json.loads(target.read_text(encoding="utf-8"))["command"], "field-info")

    def test_invalid_override_is_a_config_error(self, _logging):
        code, output = self.invoke("field-info", "--N", "0")
        self.assertEqual(code, cli.EXIT_STAGE_ERROR)
        self.assertEqual(output, "")

    def test_failing_stage_is_reported(self, _logging):
        code, output = self.invoke("field-info", "--D", "20", "--p", "3")
        self.assertEqual(code, cli.EXIT_STAGE_ERROR)
        self.assertEqual(json.loads(output)["error"]["stage"], "config")

    def test_unknown_command(self, _logging):
        with self.assertRaises(SystemExit):
            self.invoke("frobnicate")


class TestExitCode(unittest.TestCase):
    def test_codes(self):
        report = RunReport(command="verify-all", config={})
        self.assertEqual(cli.exit_code(report), cli.EXIT_OK)
        report.add_check({"kind": "katz", "ok": False})
        self.assertEqual(cli.exit_code(report), cli.EXIT_CHECK_FAILED)
        report.error = {"stage": "lift", "message": "boom"}
        self.assertEqual(cli.exit_code(report), cli.EXIT_STAGE_ERROR)


if __name__ == "__main__":
    unittest.main()
