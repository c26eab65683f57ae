"""Configuration loading, schema validation and static run checks."""

import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from bianchi_padic import config as config_module
from bianchi_padic.config import PipelineConfig, acceptance_enabled
from bianchi_padic.exceptions import ConfigError

BASE = {
    "field": {"D": 4, "p": 5, "iota_seed": 2, "uniformizer_unit": 0},
    "character": {"phi_power": 1, "curve": [-1, 0]},
    "precision": {"N": 1, "M": 0, "T": 1, "digits": 50},
    "selection": {"max_t": 1, "max_s": 1, "infinity_types": [[0, 0]]},
    "runtime": {"workers": 1, "use_cache": False},
}


def base_config(**sections):
    config = PipelineConfig.from_mapping(BASE)
    return PipelineConfig.from_mapping(sections, base=config) if sections else config


class TestEnvironmentHelpers(unittest.TestCase):
    def test_flags(self):
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_FLAG": "Yes"}):
            self.assertTrue(config_module._env_flag("BIANCHI_PADIC_FLAG", False))
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_FLAG": "off"}):
            self.assertFalse(config_module._env_flag("BIANCHI_PADIC_FLAG"))

    def test_integers_fall_back_on_garbage(self):
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_NUMBER": "many"}):
            self.assertEqual(config_module._env_int("BIANCHI_PADIC_NUMBER", 7), 7)
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_NUMBER": " 12 "}):
            self.assertEqual(config_module._env_int("BIANCHI_PADIC_NUMBER", 7), 12)

    def test_pairs(self):
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_PAIRS": "0:0, 1:0,"}):
            self.assertEqual(config_module._env_pairs("BIANCHI_PADIC_PAIRS", ()), ((0, 0), (1, 0)))
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_PAIRS": "0-0"}):
            self.assertEqual(config_module._env_pairs("BIANCHI_PADIC_PAIRS", ((0, 0),)), ((0, 0),))

    def test_acceptance_gate(self):
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_RUN_ACCEPTANCE": "1"}):
            self.assertTrue(acceptance_enabled())
        with mock.patch.dict(os.environ, {"BIANCHI_PADIC_RUN_ACCEPTANCE": "0"}):
            self.assertFalse(acceptance_enabled())


class TestLoading(unittest.TestCase):
    def test_sections_override_the_base(self):
        config = base_config(precision={"N": 3})
        self.assertEqual(config.precision.N, 3)
        self.assertEqual(config.precision.T, 1)
        self.assertEqual(config.field.D, 4)
        self.assertEqual(config.M, 4)

    def test_schema_rejects_unknown_keys(self):
        with self.assertRaises(ConfigError):
            PipelineConfig.from_mapping({"field": {"discriminant": 4}})
        with self.assertRaises(ConfigError):
            PipelineConfig.from_mapping({"lattice": {}})

    def test_schema_rejects_bad_values(self):
        with self.assertRaises(ConfigError):
            PipelineConfig.from_mapping({"precision": {"N": "four"}})
        with self.assertRaises(ConfigError):
            PipelineConfig.from_mapping({"runtime": {"log_level": "LOUD"}})

    def test_yaml_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "run.yaml"
            path.write_text("field:\n  D: 3\n  p: 7\nprecision:\n  N: 2\n", encoding="utf-8")
            config = PipelineConfig.from_file(path, base=base_config())
        self.assertEqual((config.field.D, config.field.p, config.precision.N), (3, 7, 2))

    def test_unreadable_files(self):
        with tempfile.TemporaryDirectory() as directory:
            listing = Path(directory) / "list.yaml"
            listing.write_text("- 1\n- 2\n", encoding="utf-8")
            with self.assertRaises(ConfigError):
                PipelineConfig.from_file(listing)
            with self.assertRaises(ConfigError):
                PipelineConfig.from_file(Path(directory) / "missing.yaml")

    def test_echo(self):
        echo = base_config(character={"phi_power": 2}, selection={"infinity_types": [[0, 1]]}).as_dict()
        self.assertEqual(echo["character"]["k"], 1)
        self.assertEqual(echo["precision"]["M_effective"], 3)
        self.assertEqual(echo["selection"]["infinity_types"], [[0, 1]])
        self.assertEqual(echo["character"]["curve"], [-1, 0])


class TestValidation(unittest.TestCase):
    def test_reference_configuration(self):
        config = base_config()
        self.assertIs(config.validate(), config)

    def test_field_conditions(self):
        cases = (
            {"field": {"D": 16}},
            {"field": {"p": 7}},
            {"field": {"D": 20, "p": 3}},
        )
        for sections in cases:
            with self.subTest(sections=sections), self.assertRaises(ConfigError):
                base_config(**sections).validate()

    def test_precision_conditions(self):
        cases = (
            {"character": {"phi_power": 2}, "precision": {"M": 1}},
            {"precision": {"T": 0}},
            {"selection": {"infinity_types": [[1, 0]]}},
        )
        for sections in cases:
            with self.subTest(sections=sections), self.assertRaises(ConfigError):
                base_config(**sections).validate()

    def test_shallow_depth_warns(self):
        with self.assertLogs("bianchi_padic.config", "WARNING") as captured:
            base_config(precision={"N": 4}).validate()
        self.assertIn("T=1 < N=4", captured.output[0])


if __name__ == "__main__":
    unittest.main()
