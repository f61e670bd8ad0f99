import unittest
import sys
import os
import io
import json
import tempfile
from contextlib import redirect_stdout

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from humphreys import cache
from humphreys.cli import cmd_affine, cmd_char, cmd_humphreys, main, parse_weight, parse_word
from humphreys.config import CACHE_FILE, SCHEMA_VERSION
from humphreys.errors import BoxExhausted, InputError, InvariantBreach
from humphreys.reports import ErrorReport
from humphreys.root_data import sl


def run_main(argv):
    """Run the CLI with a throwaway cache; returns (exit code, stdout)."""
    out = io.StringIO()
    with tempfile.TemporaryDirectory() as tmp, redirect_stdout(out):
        code = main(["--cache-dir", tmp] + argv)
    return code, out.getvalue()


class TestHumphreysCommand(unittest.TestCase):
    def test_trivial_weight(self):
        report = cmd_humphreys(2, 5, [0, 0])
        self.assertEqual(report.orbit, [2])
        self.assertEqual(report.nontrivial_conditions, [])
        self.assertEqual(report.orbit_dimension, 2)
        self.assertIn(report.calibration.orientation, ("identity", "transpose"))

    def test_steinberg_block(self):
        report = cmd_humphreys(2, 5, [4, 0])
        self.assertEqual(report.orbit, [1, 1])
        self.assertEqual(report.nontrivial_conditions, [[1, 0]])
        self.assertEqual(report.orbit_dimension, 0)
        self.assertTrue(report.block_labels)

    def test_input_checks(self):
        with self.assertRaises(InputError):
            cmd_humphreys(2, 4, [0, 0])
        with self.assertRaises(InputError):
            cmd_humphreys(3, 3, [0, 0, 0])
        with self.assertRaises(InputError):
            cmd_humphreys(2, 5, [0, 3])
        with self.assertRaises(InputError):
            cmd_humphreys(2, 5, [0])
        with self.assertRaises(BoxExhausted):
            cmd_humphreys(2, 5, [8, 0], box=0)


class TestAffineCommand(unittest.TestCase):
    def test_commands(self):
        datum = sl(2)
        self.assertEqual(cmd_affine("len", datum, ["s0,s1"]).result, 2)
        self.assertEqual(cmd_affine("wmin", datum, ["-1"]).result["length"], 0)
        self.assertEqual(cmd_affine("order", datum, ["0", "1"]).result, "incomparable")
        self.assertEqual(cmd_affine("order", datum, ["0", "2"]).result, "leq")
        self.assertEqual(cmd_affine("order", datum, ["2", "2"]).result, "equal")
        self.assertTrue(cmd_affine("bruhat", datum, ["s1", "s1,s0"]).result)

    def test_parsers(self):
        self.assertEqual(parse_weight("4, 0"), [4, 0])
        with self.assertRaises(InputError):
            parse_weight("a,b")
        with self.assertRaises(InputError):
            parse_word(sl(2), "s7")
        with self.assertRaises(InputError):
            cmd_affine("order", sl(2), ["0"])


class TestCharCommand(unittest.TestCase):
    def setUp(self):
        cache.clear()

    def test_aj_report(self):
        report = cmd_char("aj", sl(2), [0], 4)
        self.assertEqual(report.root_sign, 1)
        weights = [term.weight for term in report.terms]
        self.assertEqual(weights, [[4], [2], [0]])
        self.assertEqual(report.terms[1].poly, {"2": 1})
        self.assertEqual(report.terms[1].poly_t, {"-2": 1})

    def test_freecheck_and_triangular(self):
        self.assertTrue(cmd_char("freecheck", sl(2), [1], 4).holds)
        report = cmd_char("triangular", sl(2), [0], 4, bound=2)
        self.assertEqual(report.labels, [[0], [1], [2]])
        self.assertTrue(report.triangular)
        self.assertFalse(report.unitriangular)
        self.assertEqual(report.diagonal, [{"0": 1}, {"0": 1, "2": 1}, {"0": 1, "2": 1}])


class TestMain(unittest.TestCase):
    def setUp(self):
        cache.clear()

    def test_json_report(self):
        code, out = run_main(["humphreys", "--n", "2", "--p", "5", "--mu", "4,0"])
        payload = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(payload["schema"], SCHEMA_VERSION)
        self.assertEqual(payload["orbit"], [1, 1])

    def test_error_exit_codes(self):
        code, out = run_main(["humphreys", "--n", "2", "--p", "4", "--mu", "0,0"])
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(out)["code"], "input_error")
        code, out = run_main(["humphreys", "--n", "2", "--p", "5", "--mu", "8,0", "--box", "0"])
        self.assertEqual(code, 4)
        self.assertEqual(json.loads(out)["status"], "error")

    def test_text_output(self):
        code, out = run_main(["--text", "affine", "len", "s0"])
        self.assertEqual(code, 0)
        self.assertIn("result: 1", out)
        self.assertIn("status: ok", out)
        code, out = run_main(["--json", "affine", "len", "s0"])
        self.assertEqual(json.loads(out)["result"], 1)

    def test_cotstruct_verify(self):
        code, out = run_main(["cotstruct", "verify", "--algebra", "a2.alg", "--sample-width", "2", "--sample-twist", "0"])
        payload = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(payload["sampled_objects"], 5 + 15)
        self.assertEqual(payload["verdict"], "exceptional")
        self.assertTrue(payload["dualizable"])
        self.assertEqual(payload["cotstructure_violations"], [])

    def test_datum_file(self):
        path = os.path.join(os.path.dirname(__file__), '..', 'humphreys', 'fixtures', 'sl3.datum')
        code, out = run_main(["affine", "len", "s0", "--datum", path])
        payload = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(payload["group"], sl(3).name)
        self.assertEqual(payload["result"], 1)
        code, out = run_main(["affine", "len", "e", "--datum", "nowhere.datum"])
        self.assertEqual(code, 2)

    def test_missing_algebra(self):
        code, out = run_main(["cotstruct", "verify", "--algebra", "nowhere.alg"])
        self.assertEqual(code, 2)


class TestCacheAndReports(unittest.TestCase):
    def setUp(self):
        cache.clear()

    def test_cache_persists(self):
        with tempfile.TemporaryDirectory() as tmp:
            cache.store("q_kostant", "k", {"0": 1})
            self.assertEqual(cache.save_cache(tmp), 1)
            with open(os.path.join(tmp, CACHE_FILE), 'a', encoding='utf-8') as f:
                f.write("not json\n")
            cache.clear()
            self.assertEqual(cache.load_cache(tmp), 1)
            self.assertEqual(cache.lookup("q_kostant", "k"), {"0": 1})
            self.assertEqual(cache.save_cache(tmp), 0)

    def test_error_report(self):
        error = InvariantBreach("broken", {"where": "here"})
        self.assertEqual(error.exit_code, 5)
        report = ErrorReport(code=error.code, message=error.message, details=error.details)
        payload = json.loads(report.to_json())
        self.assertEqual(payload["schema"], SCHEMA_VERSION)
        self.assertEqual(payload["code"], "invariant_breach")
        self.assertEqual(payload["details"], {"where": "here"})


if __name__ == '__main__':
    unittest.main()
