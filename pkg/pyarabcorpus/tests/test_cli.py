import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout

from pyarabcorpus import cli
from pyarabcorpus.manifest import Sample, read_manifest, write_manifest

BA = "\u0628"
MEEM = "\u0645"
FATHAH = "\u064e"

VTT = (
    "WEBVTT\n"
    "\n"
    "00:00:00.000 --> 00:00:02.000\n"
    "1. " + BA + " " + MEEM + "\n"
    "\n"
    "00:00:02.500 --> 00:00:04.000\n" + MEEM + " " + BA + "\n"
)


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmpdir = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, *names):
        return os.path.join(self.tmpdir, *names)

    def write_text(self, name, text):
        path = self.path(name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def run_main(self, *argv):
        stdout = io.StringIO()
        with redirect_stdout(stdout):
            code = cli.main(["-q"] + list(argv))
        return code, stdout.getvalue()


class TestProcess(CliTestCase):
    def test_default_config(self):
        write_manifest(
            [Sample("a.wav", 2.0, BA + " " + MEEM + " ?"), Sample("b.wav", 2.0, "hello")], self.path("in.jsonl")
        )
        code, out = self.run_main(
            "process", "--in", self.path("in.jsonl"), "--out", self.path("out.jsonl"), "--format", "machine"
        )
        self.assertEqual(cli.EXIT_OK, code)
        summary = json.loads(out)
        self.assertEqual((2, 1, 1), (summary["input"], summary["kept"], summary["dropped"]))
        self.assertEqual(["a.wav"], [s.audio_filepath for s in read_manifest(self.path("out.jsonl"))])
        self.assertEqual(["b.wav"], [s.audio_filepath for s in read_manifest(self.path("out.audit.jsonl"))])

    def test_flags_option(self):
        write_manifest(
            [Sample("a.wav", 2.0, BA, pred_text=BA), Sample("b.wav", 2.0, MEEM)], self.path("in.jsonl")
        )
        config = self.write_text("cfg.yaml", "steps:\n  - hypothesis\n")
        code, _ = self.run_main(
            "process",
            "--config",
            config,
            "--in",
            self.path("in.jsonl"),
            "--out",
            self.path("out.jsonl"),
            "--flags",
            self.path("flagged.jsonl"),
        )
        self.assertEqual(cli.EXIT_OK, code)
        with open(self.path("flagged.jsonl"), encoding="utf-8") as f:
            [line] = [json.loads(line) for line in f]
        self.assertEqual(("b.wav", "hypothesis"), (line["audio_filepath"], line["flag_step"]))
        self.assertFalse(os.path.exists(self.path("out.flags.jsonl")))

    def test_unknown_step_is_a_config_error(self):
        write_manifest([], self.path("in.jsonl"))
        config = self.write_text("cfg.yaml", "steps: [full, spellcheck]\n")
        code, _ = self.run_main(
            "process", "--config", config, "--in", self.path("in.jsonl"), "--out", self.path("out.jsonl")
        )
        self.assertEqual(cli.EXIT_CONFIG_ERROR, code)
        self.assertFalse(os.path.exists(self.path("out.jsonl")))

    def test_malformed_manifest_is_a_data_error(self):
        self.write_text("in.jsonl", '{"audio_filepath": "a.wav", "duration": 1.0, "text": "x"}\n{not json\n')
        code, _ = self.run_main("process", "--in", self.path("in.jsonl"), "--out", self.path("out.jsonl"))
        self.assertEqual(cli.EXIT_DATA_ERROR, code)


class TestScore(CliTestCase):
    def test_report(self):
        write_manifest(
            [
                Sample("a.wav", 1.0, BA + FATHAH + " " + MEEM, pred_text=BA + " " + MEEM),
                Sample("b.wav", 1.0, MEEM + " " + MEEM, pred_text=MEEM + " " + MEEM),
            ],
            self.path("scored.jsonl"),
        )
        code, out = self.run_main(
            "score",
            "--manifest",
            self.path("scored.jsonl"),
            "--mode",
            "pcd",
            "--per-sample",
            self.path("per_sample.jsonl"),
            "--format",
            "machine",
        )
        self.assertEqual(cli.EXIT_OK, code)
        report = json.loads(out)
        self.assertEqual(25.0, report["wer_percent"])
        with open(self.path("per_sample.jsonl"), encoding="utf-8") as f:
            self.assertEqual(["a.wav", "b.wav"], [json.loads(line)["id"] for line in f])

    def test_missing_hypothesis(self):
        write_manifest([Sample("a.wav", 1.0, BA)], self.path("scored.jsonl"))
        code, _ = self.run_main("score", "--manifest", self.path("scored.jsonl"))
        self.assertEqual(cli.EXIT_DATA_ERROR, code)


class TestSegmentVtt(CliTestCase):
    def test_segments_every_file(self):
        os.mkdir(self.path("vtt"))
        self.write_text(os.path.join("vtt", "talk.vtt"), VTT)
        code, _ = self.run_main("segment-vtt", "--vtt-dir", self.path("vtt"), "--out", self.path("segments.jsonl"))
        self.assertEqual(cli.EXIT_OK, code)
        [segment] = read_manifest(self.path("segments.jsonl"))
        self.assertEqual(self.path("vtt", "talk.wav"), segment.audio_filepath)
        self.assertEqual(4.0, segment.duration)
        self.assertEqual(BA + " " + MEEM + " " + MEEM + " " + BA, segment.text)

    def test_bad_file_is_reported_and_skipped(self):
        os.mkdir(self.path("vtt"))
        self.write_text(os.path.join("vtt", "a.vtt"), "not a subtitle file\n")
        self.write_text(os.path.join("vtt", "b.vtt"), VTT)
        code, _ = self.run_main(
            "segment-vtt", "--vtt-dir", self.path("vtt"), "--out", self.path("segments.jsonl"), "--max-gap", "0.1"
        )
        self.assertEqual(cli.EXIT_DATA_ERROR, code)
        self.assertEqual(2, len(list(read_manifest(self.path("segments.jsonl")))))


class TestDedup(CliTestCase):
    def test_removes_overlapping_lines(self):
        write_manifest([Sample("t.wav", 1.0, BA + FATHAH + " " + MEEM + ".")], self.path("test.jsonl"))
        write_manifest(
            [Sample("a.wav", 1.0, BA + " " + MEEM), Sample("b.wav", 1.0, MEEM)], self.path("train.jsonl")
        )
        code, out = self.run_main(
            "dedup",
            "--target",
            self.path("train.jsonl"),
            "--reference",
            self.path("test.jsonl"),
            "--out",
            self.path("kept.jsonl"),
            "--removed",
            self.path("removed.jsonl"),
        )
        self.assertEqual(cli.EXIT_OK, code)
        self.assertEqual("kept 1, removed 1", out.strip())
        self.assertEqual(["b.wav"], [s.audio_filepath for s in read_manifest(self.path("kept.jsonl"))])
        self.assertEqual(["a.wav"], [s.audio_filepath for s in read_manifest(self.path("removed.jsonl"))])

    def test_missing_reference(self):
        write_manifest([], self.path("train.jsonl"))
        code, _ = self.run_main(
            "dedup",
            "--target",
            self.path("train.jsonl"),
            "--reference",
            self.path("missing.jsonl"),
            "--out",
            self.path("kept.jsonl"),
            "--removed",
            self.path("removed.jsonl"),
        )
        self.assertEqual(cli.EXIT_DATA_ERROR, code)


class TestSplitByIds(CliTestCase):
    def test_partitions_by_listed_ids(self):
        write_manifest(
            [
                Sample("clips/vid01.wav", 1.0, BA, offset=0.0),
                Sample("clips/vid02.wav", 1.0, MEEM, offset=0.0),
                Sample("clips/vid01.wav", 1.0, MEEM, offset=1.0),
            ],
            self.path("all.jsonl"),
        )
        self.write_text("test_ids.txt", "# test split\nvid01\n")
        code, out = self.run_main(
            "split-by-ids",
            "--in",
            self.path("all.jsonl"),
            "--ids",
            self.path("test_ids.txt"),
            "--out",
            self.path("test.jsonl"),
            "--rest",
            self.path("rest.jsonl"),
        )
        self.assertEqual(cli.EXIT_OK, code)
        self.assertEqual("listed 2, rest 1", out.strip())
        self.assertEqual([0.0, 1.0], [s.offset for s in read_manifest(self.path("test.jsonl"))])
        self.assertEqual(["clips/vid02.wav"], [s.audio_filepath for s in read_manifest(self.path("rest.jsonl"))])

    def test_missing_id_list(self):
        write_manifest([], self.path("all.jsonl"))
        code, _ = self.run_main(
            "split-by-ids",
            "--in",
            self.path("all.jsonl"),
            "--ids",
            self.path("missing.txt"),
            "--out",
            self.path("test.jsonl"),
            "--rest",
            self.path("rest.jsonl"),
        )
        self.assertEqual(cli.EXIT_DATA_ERROR, code)


class TestStats(CliTestCase):
    def test_machine_format(self):
        write_manifest([Sample("a.wav", 1800.0, BA + FATHAH + " A")], self.path("in.jsonl"))
        code, out = self.run_main("stats", "--in", self.path("in.jsonl"), "--format", "machine")
        self.assertEqual(cli.EXIT_OK, code)
        stats = json.loads(out)
        self.assertEqual(1, stats["sample_count"])
        self.assertEqual(0.5, stats["total_hours"])
        self.assertIn("U+0041", stats["out_of_alphabet"])

    def test_table_format(self):
        write_manifest([Sample("a.wav", 1.0, BA)], self.path("in.jsonl"))
        code, out = self.run_main("stats", "--in", self.path("in.jsonl"))
        self.assertEqual(cli.EXIT_OK, code)
        self.assertTrue(out.strip())
