"""End-to-end runs of the Q(i), p = 5, N = T = 4 reference instance.

These take several minutes and only run with BIANCHI_PADIC_RUN_ACCEPTANCE=1.
"""

import tempfile
import unittest

from bianchi_padic.config import PipelineConfig, acceptance_enabled
from bianchi_padic.pipeline import run

REFERENCE = {
    "field": {"D": 4, "p": 5, "iota_seed": 2, "uniformizer_unit": 0},
    "character": {"phi_power": 1},
    "precision": {"N": 4, "M": 5, "T": 4, "digits": 50},
    "selection": {"max_t": 2, "max_s": 2, "infinity_types": [[0, 0]]},
    "runtime": {"workers": 1, "use_cache": True},
}


def status(check):
    if check.get("skipped"):
        return "skip"
    return "pass" if check["ok"] else "fail"


def verdicts(report):
    return sorted(
        (check["kind"], check.get("fingerprint", ""), status(check))
        for check in report.checks
        if check.get("kind") in {"interpolation", "katz"}
    )


@unittest.skipUnless(acceptance_enabled(), "set BIANCHI_PADIC_RUN_ACCEPTANCE=1 to run")
class TestReferenceInstance(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls._directory = tempfile.TemporaryDirectory()
        cls.base = PipelineConfig.from_mapping(REFERENCE)
        cls.base = PipelineConfig.from_mapping({"runtime": {"cache_dir": cls._directory.name}}, base=cls.base)
        cls.report = run("verify-all", cls.base)

    @classmethod
    def tearDownClass(cls):
        cls._directory.cleanup()

    def test_every_record_passes(self):
        failing = [check for check in self.report.checks if not self.report.passes(check)]
        self.assertIsNone(self.report.error)
        self.assertEqual(failing, [])
        self.assertTrue(self.report.ok)

    def test_eigenvalue_and_ordinarity(self):
        stabilization = self.report.sections["character"]["stabilization"]
        oracle = [check for check in self.report.checks if check["kind"] == "eigenvalue_oracle"]
        self.assertTrue(oracle and oracle[0]["ok"])
        self.assertEqual(oracle[0]["details"]["point_count"], -2)
        self.assertEqual((stabilization["alpha_slope"], stabilization["beta_slope"]), (1, 0))

    def test_character_coverage(self):
        for kind in ("interpolation", "katz"):
            with self.subTest(kind=kind):
                records = [check for check in self.report.checks if check["kind"] == kind]
                self.assertEqual([check["label"] for check in records if check.get("skipped")], [])
                self.assertGreaterEqual(len(records), 8)
                self.assertTrue(all(check["valuation"] >= 2 for check in records))

    def test_second_power_conductors(self):
        levels = {(check["t"], check["s"]) for check in self.report.checks if check["kind"] == "forward"}
        self.assertTrue({(2, 0), (0, 2), (2, 1), (1, 2), (2, 2)} <= levels)
        self.assertEqual(self.report.counts["failed"], 0)

    def test_hecke_records(self):
        hecke = {check["label"]: check for check in self.report.checks if check["kind"] == "hecke"}
        self.assertEqual(set(hecke), {"U_p", "U_pbar", "T_q N(q)=13"})
        self.assertTrue(all(check["ok"] for check in hecke.values()))
        self.assertEqual(hecke["T_q N(q)=13"]["details"]["a_q"], "Q(zeta_1)[6]")

    def test_lift_checks(self):
        measure = [check for check in self.report.checks if check["kind"] == "lift"]
        self.assertTrue(measure and all(check["ok"] for check in measure))

    def test_verdicts_survive_convention_changes(self):
        expected = verdicts(self.report)
        for sections in ({"field": {"iota_seed": 3}}, {"field": {"uniformizer_unit": 1}}):
            with self.subTest(sections=sections):
                rerun = run("verify-all", PipelineConfig.from_mapping(sections, base=self.base))
                self.assertEqual(verdicts(rerun), expected)


if __name__ == "__main__":
    unittest.main()
