# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import io
import json
import os
import shutil
import tempfile
import unittest

import mock
import yaml
from ddt import ddt, data, unpack

from evolvecua.cli import EXIT_CONFIG, EXIT_ENDPOINT, EXIT_FAILURE, EXIT_OK, EXIT_PHASE, create_parser, run
from evolvecua.orchestrator.exceptions import PhaseFailed, RunLocked
from evolvecua.orchestrator.state import Phases
from evolvecua.policy.exceptions import EndpointError
from evolvecua.util import read_json


@ddt
class CliTest(unittest.TestCase):

	def setUp(self):
		self.run_dir = tempfile.mkdtemp()

		self.logging_patcher = mock.patch("evolvecua.logging.setup_logging")
		self.logging_patcher.start()

	def tearDown(self):
		self.logging_patcher.stop()
		shutil.rmtree(self.run_dir)

	def call(self, *argv):
		"""Runs the cli against a fresh settings singleton, returns ``(status, stdout, stderr)``."""
		with mock.patch("evolvecua.settings._instance", None), \
		     mock.patch("sys.stdout", new_callable=io.StringIO) as stdout, \
		     mock.patch("sys.stderr", new_callable=io.StringIO) as stderr:
			status = run(["--run-dir", self.run_dir] + list(argv))
		return status, stdout.getvalue(), stderr.getvalue()

	def configure(self, config):
		with io.open(os.path.join(self.run_dir, "config.yaml"), "w", encoding="utf-8") as f:
			f.write(yaml.safe_dump(config, default_flow_style=False))

	def test_parser(self):
		args = create_parser().parse_args(["evolve", "--mode", "distill_exp", "--iterations", "3", "--seed", "7"])
		self.assertEqual("evolve", args.verb)
		self.assertEqual("distill_exp", args.mode)
		self.assertEqual(3, args.iterations)
		self.assertEqual(7, args.seed)

		args = create_parser().parse_args(["--debug", "report"])
		self.assertTrue(args.debug)
		self.assertIsNone(args.mode)

	def test_version(self):
		status, stdout, _ = self.call("--version")
		self.assertEqual(EXIT_OK, status)
		self.assertTrue(stdout.startswith("EvolveCUA version "))

	def test_missing_verb(self):
		status, _, stderr = self.call()
		self.assertEqual(EXIT_CONFIG, status)
		self.assertIn("usage: evolvecua", stderr)

	def test_init(self):
		status, stdout, _ = self.call("init")
		self.assertEqual(EXIT_OK, status)
		self.assertEqual(os.path.abspath(self.run_dir), stdout.strip())

		with io.open(os.path.join(self.run_dir, "config.yaml"), "r", encoding="utf-8") as f:
			config = yaml.safe_load(f)
		self.assertEqual("exp_only", config["run"]["mode"])
		self.assertEqual(20, config["generation"]["budget"])
		for folder in ("logs", "store", "iterations"):
			self.assertTrue(os.path.isdir(os.path.join(self.run_dir, folder)))

	def test_init_keeps_configuration(self):
		self.configure(dict(run=dict(iterations=5)))
		self.assertEqual(EXIT_OK, self.call("init")[0])
		with io.open(os.path.join(self.run_dir, "config.yaml"), "r", encoding="utf-8") as f:
			self.assertEqual(dict(run=dict(iterations=5)), yaml.safe_load(f))

	def test_invalid_configuration(self):
		self.configure(dict(run=dict(mode="distill_everything")))
		status, stdout, stderr = self.call("evolve")

		self.assertEqual(EXIT_CONFIG, status)
		self.assertEqual("", stdout)
		error = json.loads(stderr)
		self.assertEqual("ConfigurationInvalid", error["error"])
		self.assertIn("distill_everything", error["message"])
		self.assertIsNone(error["phase"])

	def test_malformed_configuration(self):
		with io.open(os.path.join(self.run_dir, "config.yaml"), "w", encoding="utf-8") as f:
			f.write(u"run:\n  mode: [distill_exp\n")
		status, stdout, stderr = self.call("evolve")

		self.assertEqual(EXIT_CONFIG, status)
		self.assertEqual("", stdout)
		error = json.loads(stderr.strip().splitlines()[-1])
		self.assertEqual("ConfigurationInvalid", error["error"])
		self.assertIn("not valid YAML", error["message"])

	def test_configuration_not_a_mapping(self):
		with io.open(os.path.join(self.run_dir, "config.yaml"), "w", encoding="utf-8") as f:
			f.write(u"- evolve\n- report\n")
		status, _, stderr = self.call("report")

		self.assertEqual(EXIT_CONFIG, status)
		self.assertEqual("ConfigurationInvalid", json.loads(stderr.strip().splitlines()[-1])["error"])

	@mock.patch("evolvecua.cli.Orchestrator")
	def test_unexpected_error(self, mock_orchestrator):
		mock_orchestrator.return_value.run.side_effect = ValueError("bad state")
		status, stdout, stderr = self.call("evolve")

		self.assertEqual(EXIT_FAILURE, status)
		self.assertEqual("", stdout)
		self.assertEqual(dict(error="ValueError", message="bad state", phase="evolve"),
		                 json.loads(stderr.strip().splitlines()[-1]))

	def test_report_on_corrupt_run_dir(self):
		folder = os.path.join(self.run_dir, "iterations", "0")
		os.makedirs(folder)
		with io.open(os.path.join(folder, "profile.json"), "w", encoding="utf-8") as f:
			f.write(u"{truncated")
		status, _, stderr = self.call("report")

		self.assertEqual(EXIT_FAILURE, status)
		error = json.loads(stderr.strip().splitlines()[-1])
		self.assertEqual("report", error["phase"])

	@data(("collect", Phases.ACCUMULATE), ("evaluate", Phases.PLAN_GENERATION), ("evolve", None))
	@unpack
	def test_verbs_stop_after(self, verb, stop_after):
		with mock.patch("evolvecua.cli.Orchestrator") as orchestrator:
			orchestrator.return_value.run.return_value.to_dict.return_value = dict(status="completed")
			status, stdout, _ = self.call(verb)

		self.assertEqual(EXIT_OK, status)
		self.assertEqual(dict(status="completed"), json.loads(stdout))
		orchestrator.return_value.run.assert_called_once_with(stop_after=stop_after)

	def test_global_overrides(self):
		with mock.patch("evolvecua.cli.Orchestrator") as orchestrator:
			orchestrator.return_value.run.return_value.to_dict.return_value = dict()
			self.call("evolve", "--mode", "distill_exp", "--iterations", "2", "--seed", "11")

		config = orchestrator.call_args[0][0]
		self.assertEqual("distill_exp", config.mode)
		self.assertEqual(2, config.iterations)
		self.assertEqual(11, config.seed)

	def test_phase_failed(self):
		with mock.patch("evolvecua.cli.Orchestrator") as orchestrator:
			orchestrator.return_value.run.side_effect = PhaseFailed(Phases.GENERATE_TASKS, 1, "no task validated")
			status, _, stderr = self.call("evolve")

		self.assertEqual(EXIT_PHASE, status)
		self.assertEqual(dict(error="PhaseFailed", phase="generate_tasks",
		                      message="Phase generate_tasks of iteration 1 failed: no task validated"),
		                 json.loads(stderr))

	def test_endpoint_error(self):
		with mock.patch("evolvecua.cli.Orchestrator") as orchestrator:
			orchestrator.return_value.run.side_effect = EndpointError("http://localhost:1", "connection refused")
			status, _, stderr = self.call("evolve")

		self.assertEqual(EXIT_ENDPOINT, status)
		error = json.loads(stderr)
		self.assertEqual("EndpointError", error["error"])
		self.assertEqual("Endpoint http://localhost:1 failed: connection refused", error["message"])
		self.assertIsNone(error["phase"])

	def test_locked(self):
		with mock.patch("evolvecua.cli.Orchestrator") as orchestrator:
			orchestrator.return_value.run.side_effect = RunLocked(os.path.join(self.run_dir, "run.lock"), pid=4711)
			status, _, stderr = self.call("evolve")

		self.assertEqual(EXIT_CONFIG, status)
		self.assertEqual("RunLocked", json.loads(stderr)["error"])

	def test_report_without_evaluation(self):
		status, _, stderr = self.call("report")
		self.assertEqual(EXIT_PHASE, status)
		self.assertEqual("report", json.loads(stderr)["phase"])

	def test_export_without_pool(self):
		status, _, stderr = self.call("export-sft")
		self.assertEqual(EXIT_PHASE, status)
		error = json.loads(stderr)
		self.assertEqual("EmptyPool", error["error"])
		self.assertEqual("export-sft", error["phase"])

	def test_evaluate_report_export(self):
		self.configure(dict(run=dict(taskLimit=4, workers=1)))

		status, stdout, _ = self.call("evaluate")
		self.assertEqual(EXIT_OK, status)
		self.assertTrue(os.path.exists(os.path.join(self.run_dir, "iterations", "0", "plan.json")))

		status, stdout, _ = self.call("report")
		self.assertEqual(EXIT_OK, status)
		self.assertTrue(stdout.startswith("Iteration 0"))
		self.assertEqual(0, read_json(os.path.join(self.run_dir, "report.json"))["iteration"])

		status, stdout, _ = self.call("export-sft")
		self.assertEqual(EXIT_OK, status)
		result = json.loads(stdout)
		self.assertEqual(4, result["samples"])
		self.assertEqual(0, result["skipped"])
		self.assertEqual(os.path.join(self.run_dir, "export", "dataset.jsonl"), result["dataset"])
		self.assertTrue(os.path.exists(result["manifest"]))
