"""
Command-line integration tests

Drives cli.main.run with in-memory streams and checks output and exit codes.
"""
import contextlib
import io
import os
import tempfile
import unittest

from cli.main import run
from config.settings import PROJECT_ROOT

DATA = PROJECT_ROOT / "data"


def invoke(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stderr(stderr):
        code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class TestCatalogCommands(unittest.TestCase):
    """catalog, chartab, wedge and decompose."""

    def test_catalog(self):
        code, out, _ = invoke("catalog")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("A5 = "))
        self.assertIn("rho4", out)

    def test_chartab_machine(self):
        code, out, _ = invoke("--machine", "chartab", "A5")
        self.assertEqual(code, 0)
        rows = [line.split("\t") for line in out.splitlines()]
        self.assertEqual(rows[0][0], "classes")
        self.assertEqual(len(rows[0]), 6)
        self.assertEqual([r[1] for r in rows[1:]], ["1", "rho4", "rho5", "rho6"])

    def test_wedge_machine(self):
        code, out, _ = invoke("--machine", "wedge", "A5", "rho4")
        self.assertEqual(code, 0)
        self.assertEqual(out, "wedge\tA5\trho4\t6\trho6: 1\n")

    def test_tensor(self):
        code, out, _ = invoke("decompose", "A5", "tensor", "rho4", "x", "rho5")
        self.assertEqual(code, 0)
        self.assertIn("[degree 20]", out)

    def test_unknown_group(self):
        code, out, err = invoke("wedge", "Q8", "rho4")
        self.assertEqual(code, 1)
        self.assertEqual(out, "")
        self.assertIn("error: ContractError: Unknown group 'Q8'", err)

    def test_unknown_label(self):
        code, _, err = invoke("wedge", "A5", "rho7")
        self.assertEqual(code, 1)
        self.assertTrue(err.startswith("error: "))


class TestBoundsCommands(unittest.TestCase):
    """bounds subcommands."""

    def test_e_bound(self):
        code, out, _ = invoke("bounds", "e", "4", "2")
        self.assertEqual(code, 0)
        self.assertEqual(out, "e_4(2) = 7\n")

    def test_gcd_machine(self):
        code, out, _ = invoke("--machine", "bounds", "gcd", "2", "3", "10")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("gcd\t2\t3\t10\t24\t"))

    def test_simple(self):
        code, out, _ = invoke("bounds", "simple", "4")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("A5"))

    def test_wrong_arity_is_usage_error(self):
        code, _, err = invoke("bounds", "e", "4")
        self.assertEqual(code, 2)
        self.assertIn("usage: bounds e n p", err)


class TestPipelineCommands(unittest.TestCase):
    """enumerate, exclude and report."""

    def test_enumerate_small_bound(self):
        code, out, _ = invoke("--machine", "enumerate", "--hmax", "8")
        self.assertEqual(code, 0)
        self.assertTrue(all(line.startswith("candidate\t") for line in out.splitlines()))

    def test_enumerate_out_of_range(self):
        code, _, err = invoke("enumerate", "--hmax", "20")
        self.assertEqual(code, 1)
        self.assertIn("OutOfScopeError", err)

    def test_exclude_missing_facts(self):
        code, _, err = invoke("exclude", "--facts", str(DATA / "missing.txt"))
        self.assertEqual(code, 1)
        self.assertIn("FactTableError", err)

    def test_report_machine(self):
        code, out, _ = invoke("--machine", "report")
        self.assertEqual(code, 0)
        self.assertIn("surplus\tsurviving-types\tSL25\t12\t1", out.splitlines())


class TestCrystalCommands(unittest.TestCase):
    """bieberbach and nilpotent verify."""

    def test_klein_bottle(self):
        code, out, _ = invoke("bieberbach", str(DATA / "crystals" / "klein_bottle.crystal"))
        self.assertEqual(code, 0)
        self.assertIn("klein_bottle: torsion-free (Bieberbach)", out)

    def test_split_crystal_machine(self):
        code, out, _ = invoke("--machine", "bieberbach", str(DATA / "crystals" / "a5_split.crystal"))
        self.assertEqual(code, 0)
        self.assertTrue(out.splitlines()[-1].endswith("\t0"))

    def test_undecodable_crystal(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.crystal")
            with open(path, "wb") as f:
                f.write(b"group C2\n\xff\n")
            code, _, err = invoke("bieberbach", path)
        self.assertEqual(code, 1)
        self.assertIn("FormatError", err)

    def test_nilpotent_verify(self):
        code, out, _ = invoke("--machine", "nilpotent", "verify", str(DATA / "a5-f4.spec"))
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "basis\t4\t3\t4\t6\t20")
        self.assertIn("hirsch\t14", lines)


class TestUsage(unittest.TestCase):
    """argparse failures."""

    def test_unknown_command(self):
        code, _, _ = invoke("frobnicate")
        self.assertEqual(code, 2)

    def test_missing_command(self):
        code, _, _ = invoke()
        self.assertEqual(code, 2)


if __name__ == "__main__":
    unittest.main()
