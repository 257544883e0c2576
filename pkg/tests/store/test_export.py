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

from evolvecua.judge import OracleJudge
from evolvecua.model import Action, Step, TerminationReasons, Trajectory
from evolvecua.model.codec import decode_action, encode_action
from evolvecua.policy import PolicyContext, RolloutConfig, RolloutRunner, create_policy
from evolvecua.policy.prompts import observation_message, prompt_base
from evolvecua.sim import Simulator
from evolvecua.sim.library import TaskLibrary
from evolvecua.store import DatasetPool
from evolvecua.store.exceptions import EmptyPool
from evolvecua.store.export import DATASET_FILE, MANIFEST_FILE, REPORT_FILE, SFT_DEFAULTS, TrainingManifest, \
	build_sample, export_sft, verify_dataset
from evolvecua.util import read_json, read_jsonl, sha1_of


class ExportTest(unittest.TestCase):

	@classmethod
	def setUpClass(cls):
		cls.library = TaskLibrary.load()
		cls.tasks = cls.library.tasks()[:6]
		runner = RolloutRunner(cls.library, OracleJudge(cls.library), RolloutConfig.create(attempts=1))
		expert = create_policy("scripted:reference", PolicyContext.create(cls.library))
		cls.trajectories = runner.collect_expert(expert, cls.tasks).trajectories

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.simulator = Simulator()
		self.pool = DatasetPool().accumulate(list(zip(self.tasks, self.trajectories)), 0)
		self.manifest = TrainingManifest.create(base_model="qwen-vl-7b", mode="distill_exp", iteration=0)

	def tearDown(self):
		shutil.rmtree(self.basedir)

	def test_build_sample(self):
		record = self.pool.record("browser-e01")
		tools = self.simulator.tools("mini_browser")
		sample = build_sample(record, tools)

		self.assertEqual("browser-e01:scripted:reference:0:0", sample["id"])
		self.assertEqual("mini_browser", sample["app_id"])
		self.assertEqual(1.0, sample["score"])
		self.assertEqual("seed", sample["origin"])

		messages = sample["messages"]
		steps = record.trajectory.steps
		self.assertEqual(1 + 2 * len(steps), len(messages))
		self.assertEqual(dict(role="system", content=prompt_base(record.task, tools)), messages[0])
		self.assertEqual(observation_message(steps[0].observation, result=None, step=0), messages[1]["content"])
		self.assertEqual(observation_message(steps[1].observation, result=steps[0].result, step=1), messages[3]["content"])
		self.assertEqual(["system", "user", "assistant", "user", "assistant"], [m["role"] for m in messages])
		self.assertEqual("Following the reference solution.", steps[0].reasoning)
		self.assertEqual("Following the reference solution.\n" + encode_action(steps[0].action), messages[2]["content"])

	def test_reasoning_precedes_call(self):
		record = self.pool.record("browser-e01")
		steps = list(record.trajectory.steps)
		steps[0] = steps[0]._replace(reasoning="The shortcut opens the dialog.")
		record = record._replace(trajectory=record.trajectory._replace(steps=tuple(steps)))

		content = build_sample(record, self.simulator.tools("mini_browser"))["messages"][2]["content"]
		self.assertEqual("The shortcut opens the dialog.\n" + encode_action(steps[0].action), content)
		self.assertEqual(steps[0].action, decode_action(content))

	def test_export(self):
		result = export_sft(self.pool, self.basedir, self.manifest, simulator=self.simulator)

		self.assertEqual(6, result.samples)
		self.assertEqual([], result.skipped)
		self.assertEqual(os.path.join(self.basedir, DATASET_FILE), result.dataset)

		samples = read_jsonl(result.dataset)
		self.assertEqual([t.task_id for t in self.tasks], [s["task_id"] for s in samples])
		self.assertEqual([], verify_dataset(result.dataset))

		with io.open(result.dataset, "r", encoding="utf-8") as f:
			content = f.read()
		manifest = read_json(os.path.join(self.basedir, MANIFEST_FILE))
		self.assertEqual(sha1_of(content), manifest["dataset_sha1"])
		self.assertEqual(6, manifest["samples"])
		self.assertEqual("qwen-vl-7b", manifest["base_model"])
		self.assertTrue(manifest["reset_to_base"])
		self.assertEqual(2e-5, manifest["learning_rate"])
		self.assertEqual(8, manifest["lora_rank"])
		self.assertEqual(50176, manifest["image_max_pixels"])
		self.assertEqual(30, manifest["max_images"])
		self.assertEqual(32768, manifest["cutoff_len"])
		self.assertEqual(1.0, manifest["replay_ratio"])

		report = read_json(os.path.join(self.basedir, REPORT_FILE))
		self.assertEqual(dict(exported=6, pool_size=6, view_size=6, skipped=[]), report)

	def test_export_is_reproducible(self):
		first = os.path.join(self.basedir, "first")
		second = os.path.join(self.basedir, "second")
		export_sft(self.pool, first, self.manifest, simulator=self.simulator)
		export_sft(DatasetPool.from_dict(self.pool.to_dict()), second, self.manifest, simulator=self.simulator)

		for name in (DATASET_FILE, MANIFEST_FILE):
			with io.open(os.path.join(first, name), "rb") as a, io.open(os.path.join(second, name), "rb") as b:
				self.assertEqual(a.read(), b.read(), name)

	def test_skips_records_without_observations(self):
		steps = [Step.create(None, "", Action.terminate(), "Task marked as success")]
		blind = Trajectory.create("browser-e01", "mini_browser", steps, TerminationReasons.COMPLETION,
		                          policy_id="scripted:blind", iteration=1)
		blind = blind.with_verdict(self.trajectories[0].judge_verdict)
		pool = DatasetPool().accumulate([(self.tasks[1], self.trajectories[1])], 0) \
			.accumulate([(self.tasks[0], blind)], 1)

		result = export_sft(pool, self.basedir, self.manifest, simulator=self.simulator)
		self.assertEqual(1, result.samples)
		self.assertEqual([dict(task_id="browser-e01", trajectory_id="browser-e01:scripted:blind:1:0",
		                       reason="step 0 holds no observation")], result.skipped)

	def test_replay_ratio(self):
		pool = DatasetPool().accumulate(list(zip(self.tasks[:4], self.trajectories[:4])), 0) \
			.accumulate(list(zip(self.tasks[4:], self.trajectories[4:])), 1)
		result = export_sft(pool, self.basedir, self.manifest, replay_ratio=0.5, simulator=self.simulator)
		self.assertEqual(4, result.samples)
		self.assertEqual(0.5, read_json(result.manifest)["replay_ratio"])

	def test_empty_pool(self):
		self.assertRaises(EmptyPool, export_sft, DatasetPool(), self.basedir, self.manifest)
		self.assertFalse(os.path.exists(os.path.join(self.basedir, DATASET_FILE)))


class VerifyDatasetTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.path = os.path.join(self.basedir, DATASET_FILE)

	def tearDown(self):
		shutil.rmtree(self.basedir)

	def test_reports_broken_turns(self):
		good = encode_action(Action.gui("key_combo", keys="Ctrl+P"))
		samples = [dict(id="a", messages=[dict(role="system", content="prompt"),
		                                  dict(role="user", content="screen"),
		                                  dict(role="assistant", content=good)]),
		           dict(id="b", messages=[dict(role="user", content="screen"),
		                                  dict(role="assistant", content="I will press Ctrl+P.")])]
		with io.open(self.path, "w", encoding="utf-8") as f:
			for sample in samples:
				f.write(json.dumps(sample) + "\n")

		errors = verify_dataset(self.path)
		self.assertEqual(1, len(errors))
		self.assertEqual(("b", 1), errors[0][:2])


class TrainingManifestTest(unittest.TestCase):

	def test_defaults(self):
		manifest = TrainingManifest.create()
		self.assertEqual(list(SFT_DEFAULTS.keys()), list(manifest.hyperparameters.keys()))
		self.assertEqual(dict(SFT_DEFAULTS, base_model=None, mode="distill_exp", iteration=0, reset_to_base=True),
		                 manifest.to_dict())

	def test_overrides(self):
		manifest = TrainingManifest.create(iteration="2", hyperparameters=dict(lora_rank=16))
		self.assertEqual(2, manifest.iteration)
		self.assertEqual(16, manifest.to_dict()["lora_rank"])
		self.assertEqual(3, manifest.to_dict()["attempts_per_task"])
