"""The checksummed L-value cache."""

import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from bianchi_padic.arith import CycNum
from bianchi_padic.cache import CACHE_FILE, LValueCache, decode_number, encode_number
from bianchi_padic.exceptions import CacheError

KEY = {"D": 4, "p": 5, "phi": "phi", "psi": "trivial", "digits": 50}


class TestLValueCache(unittest.TestCase):
    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.addCleanup(self._directory.cleanup)
        self.directory = Path(self._directory.name)

    def test_round_trip_across_instances(self):
        value = CycNum.gaussian(Fraction(4, 400), Fraction(3, 400))
        LValueCache(self.directory).put_number(KEY, value)
        reopened = LValueCache(self.directory)
        self.assertEqual(reopened.get_number(KEY), value)
        self.assertEqual(len(reopened), 1)
        self.assertIsNone(reopened.get({**KEY, "digits": 60}))

    def test_last_entry_wins(self):
        cache = LValueCache(self.directory)
        cache.put(KEY, {"first": True})
        cache.put(KEY, {"first": False})
        self.assertEqual(LValueCache(self.directory).get(KEY), {"first": False})

    def test_key_order_does_not_matter(self):
        reordered = dict(reversed(list(KEY.items())))
        self.assertEqual(LValueCache.key_of(KEY), LValueCache.key_of(reordered))

    def test_corrupt_lines_are_skipped(self):
        cache = LValueCache(self.directory)
        cache.put(KEY, {"value": 1})
        path = self.directory / CACHE_FILE
        with open(path, "a", encoding="utf-8") as handle:
            handle.write("0000\t{\"key\": \"x\", \"value\": 2}\n")
        reopened = LValueCache(self.directory)
        with self.assertLogs("bianchi_padic.cache", "WARNING"):
            self.assertEqual(reopened.get(KEY), {"value": 1})
        self.assertEqual(reopened.corrupt_lines, 1)

    def test_malformed_number_is_recomputed(self):
        cache = LValueCache(self.directory)
        cache.put(KEY, {"conductor": "four"})
        with self.assertLogs("bianchi_padic.cache", "WARNING"):
            self.assertIsNone(cache.get_number(KEY))


class TestNumberCodec(unittest.TestCase):
    def test_encoding_is_minimal(self):
        payload = encode_number(CycNum.rational(Fraction(1, 128)))
        self.assertEqual(payload["conductor"], 1)
        self.assertEqual(payload["coeffs"], ["1/128"])

    def test_bad_payload(self):
        with self.assertRaises(CacheError):
            decode_number({"coeffs": ["1"]})


if __name__ == "__main__":
    unittest.main()
