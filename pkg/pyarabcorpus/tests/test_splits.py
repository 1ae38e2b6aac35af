import os
import random
import tempfile
import unittest

from pyarabcorpus.exceptions import ConfigError, DataError
from pyarabcorpus.manifest import Sample, read_manifest, write_manifest
from pyarabcorpus.pipeline import PipelineConfig, run_pipeline
from pyarabcorpus.splits import load_id_list, matches_ids, parse_id_list, recording_ids, split_by_ids

BA = "\u0628"


class TestIdList(unittest.TestCase):
    def test_parse(self):
        lines = ["# dev videos\n", "\n", "  abc123  \n", "x-Y_9,clean,3.2\n", "zz\t10.5\n"]
        self.assertEqual(frozenset(["abc123", "x-Y_9", "zz"]), parse_id_list(lines))

    def test_load_several_files(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            dev = os.path.join(tmpdir, "dev.txt")
            test = os.path.join(tmpdir, "test.txt")
            with open(dev, "w", encoding="utf-8") as f:
                f.write("\ufeffa\nb\n")
            with open(test, "w", encoding="utf-8") as f:
                f.write("b\nc\n")
            self.assertEqual(frozenset("abc"), load_id_list([dev, test]))
            self.assertEqual(frozenset("bc"), load_id_list(test))

    def test_missing_file(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            with self.assertRaises(DataError):
                load_id_list(os.path.join(tmpdir, "nope.txt"))


class TestRecordingIds(unittest.TestCase):
    def test_audio_and_provenance_names(self):
        sample = Sample("clips/vid01.wav", 1.0, BA, offset=3.0, provenance="vid01.ar.vtt")
        self.assertEqual(("vid01", "vid01.ar"), recording_ids(sample))

    def test_windows_separators(self):
        self.assertEqual(("vid02",), recording_ids(Sample("C:\\data\\vid02.wav", 1.0, BA)))

    def test_matching(self):
        ids = frozenset(["vid01"])
        self.assertTrue(matches_ids(Sample("clips/vid01.wav", 1.0, BA), ids))
        self.assertTrue(matches_ids(Sample("seg_0007.wav", 1.0, BA, provenance="vid01.vtt"), ids))
        self.assertFalse(matches_ids(Sample("clips/vid011.wav", 1.0, BA), ids))
        self.assertFalse(matches_ids(Sample("vid01/seg.wav", 1.0, BA), ids))


class TestSplitByIds(unittest.TestCase):
    def test_partition_keeps_order(self):
        rng = random.Random(5)
        videos = ["v{}".format(i) for i in range(20)]
        listed_ids = frozenset(rng.sample(videos, 6))
        samples = [
            Sample("{}.wav".format(rng.choice(videos)), 1.0, BA, offset=float(i)) for i in range(300)
        ]
        listed, rest = split_by_ids(samples, listed_ids)
        self.assertEqual(len(samples), len(listed) + len(rest))
        self.assertEqual([s for s in samples if s.audio_filepath[:-4] in listed_ids], listed)
        self.assertEqual([s for s in samples if s.audio_filepath[:-4] not in listed_ids], rest)

    def test_empty_id_list(self):
        samples = [Sample("a.wav", 1.0, BA)]
        self.assertEqual(([], samples), split_by_ids(samples, frozenset()))


class TestSplitByIdsStep(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmpdir = self._tmp.name
        self.ids = os.path.join(self.tmpdir, "test_ids.txt")
        with open(self.ids, "w", encoding="utf-8") as f:
            f.write("vid01\n")
        self.input = os.path.join(self.tmpdir, "in.jsonl")
        write_manifest(
            [
                Sample("vid01.wav", 2.0, BA, offset=0.0, provenance="vid01.vtt"),
                Sample("vid02.wav", 2.0, BA, offset=0.0, provenance="vid02.vtt"),
                Sample("vid01.wav", 2.0, BA, offset=2.0, provenance="vid01.vtt"),
            ],
            self.input,
        )

    def tearDown(self):
        self._tmp.cleanup()

    def run_step(self, params):
        out = os.path.join(self.tmpdir, "out.jsonl")
        cfg = PipelineConfig.from_dict({"steps": [{"name": "split_by_ids", "params": params}]})
        summary = run_pipeline(cfg, self.input, out, workers=2)
        return [(s.audio_filepath, s.offset) for s in read_manifest(out)], summary

    def test_keep_listed(self):
        kept, summary = self.run_step({"ids": self.ids})
        self.assertEqual([("vid01.wav", 0.0), ("vid01.wav", 2.0)], kept)
        self.assertEqual({"split_by_ids": {"split": 1}}, summary.ledger.get_drop_counts())

    def test_keep_unlisted(self):
        kept, _ = self.run_step({"ids": [self.ids], "keep": "unlisted"})
        self.assertEqual([("vid02.wav", 0.0)], kept)

    def test_params_are_checked(self):
        for params in [{}, {"ids": self.ids, "keep": "both"}, {"ids": 3}, {"ids": self.ids, "mode": "x"}]:
            with self.assertRaises(ConfigError):
                PipelineConfig.from_dict({"steps": [{"name": "split_by_ids", "params": params}]}).compile()
