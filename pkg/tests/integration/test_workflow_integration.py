"""
Pipeline integration tests

Runs the full enumerate -> extend -> exclude -> report workflow on the
shipped fact table and checks the surviving types and run statistics.
"""
import os
import shutil
import tempfile
import unittest

from services.workflow import STAGES, ClassificationPipeline
from storage.fact_table import default_facts
from utils.models import Verdict

SURVIVING_PAIRS = (
    [("A5", m, n) for m, n in ((4, 6), (5, 6), (6, 4), (6, 5), (6, 6), (8, 6), (9, 5),
                                (10, 1), (10, 4), (12, 1), (12, 2), (13, 1))]
    + [("PSL27", 7, 7), ("PSL27", 8, 6), ("SL25", 12, 1), ("SL25", 12, 2)]
)


class TestPipelineIntegration(unittest.TestCase):
    """Full pipeline runs."""

    @classmethod
    def setUpClass(cls):
        cls.pipeline = ClassificationPipeline()
        cls.state = cls.pipeline.run(14, facts=list(default_facts()))

    def test_run_succeeds(self):
        self.assertTrue(self.state["success"], self.state["error_message"])
        self.assertEqual(self.state["current_stage"], "Completed")
        self.assertIsNotNone(self.state["end_time"])

    def test_every_stage_timed(self):
        self.assertEqual(set(self.state["stage_times"]), set(STAGES))

    def test_surviving_pairs(self):
        survivors = sorted({r.candidate.pair for r in self.state["reports"] if r.verdict == Verdict.SURVIVES})
        self.assertEqual(survivors, sorted(SURVIVING_PAIRS))

    def test_report_text(self):
        text = self.state["report_text"]
        self.assertIn("Surviving types", text)
        self.assertIn("SL25 [12,1]", text)
        self.assertEqual(self.state["report"].discrepancies, 19)
        self.assertIn("fourth-layer types: PSL27 [6,1] computed but not listed", text)

    def test_stats(self):
        stats = self.pipeline.get_stats()
        self.assertEqual(stats["total_runs"], 1)
        self.assertEqual(stats["successful_runs"], 1)
        self.assertGreater(stats["average_processing_time"], 0)


class TestPipelineFacts(unittest.TestCase):
    """Fact table handling inside the pipeline."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_missing_fact_table_fails_exclusion(self):
        state = ClassificationPipeline().run(8, facts_path=os.path.join(self.temp_dir, "none.txt"))
        self.assertFalse(state["success"])
        self.assertIn("Exclusion failed", state["error_message"])
        self.assertIn("exclude", state["stage_times"])
        self.assertNotIn("report", state["stage_times"])

    def test_empty_fact_table_excludes_nothing(self):
        path = os.path.join(self.temp_dir, "empty.txt")
        with open(path, "w") as f:
            f.write("# no facts\n")
        state = ClassificationPipeline().run(14, facts_path=path)
        self.assertTrue(state["success"])
        self.assertTrue(all(r.verdict == Verdict.SURVIVES for r in state["reports"]))

    def test_out_of_range_bound(self):
        state = ClassificationPipeline().run(20, facts=[])
        self.assertFalse(state["success"])
        self.assertEqual(set(state["stage_times"]), {"enumerate"})


if __name__ == "__main__":
    unittest.main()
