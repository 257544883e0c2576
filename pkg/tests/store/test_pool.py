# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import os
import shutil
import tempfile
import unittest

from ddt import ddt, data

from evolvecua.model import Action, EnvSetupScript, JudgeVerdict, Step, TaskSpec, TerminationReasons, Trajectory
from evolvecua.store import DatasetPool, PoolRecord, TrajectoryStore


def task(task_id):
	return TaskSpec.create(task_id, "Goal of " + task_id, "mini_browser", "easy", ["navigation_browsing"],
	                       EnvSetupScript.create("mini_browser"), "chk-" + task_id)


def trajectory(task_id, score=1.0, steps=1, iteration=0, policy_id="scripted:reference", verdict=True):
	actions = [Step.create(None, "", Action.gui("screenshot"), "Screenshot taken") for _ in range(steps - 1)]
	actions.append(Step.create(None, "", Action.terminate(), "Task marked as success"))
	result = Trajectory.create(task_id, "mini_browser", actions, TerminationReasons.COMPLETION, policy_id=policy_id,
	                           iteration=iteration)
	if verdict:
		result = result.with_verdict(JudgeVerdict.create(score, score > 0.5))
	return result


def pair(task_id, **kwargs):
	return task(task_id), trajectory(task_id, **kwargs)


class TrajectoryStoreTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.store = TrajectoryStore(os.path.join(self.basedir, "store", "trajectories.jsonl"))

	def tearDown(self):
		shutil.rmtree(self.basedir)

	def test_append_and_read(self):
		self.assertEqual(2, self.store.append([trajectory("t1"), trajectory("t2")], "expert"))
		self.assertEqual(1, self.store.append([trajectory("t1", score=0.0, policy_id="scripted:student")], "evaluation"))

		self.assertEqual(3, len(self.store))
		self.assertEqual(["t1", "t2"], [t.task_id for t in self.store.read("expert")])
		self.assertEqual(["scripted:student"], [t.policy_id for t in self.store.read("evaluation")])
		self.assertEqual(["expert", "expert", "evaluation"], [row["stage"] for row in self.store.rows()])
		self.assertEqual({"t1:scripted:reference:0:0", "t2:scripted:reference:0:0", "t1:scripted:student:0:0"},
		                 self.store.ids())

	def test_append_nothing(self):
		self.assertEqual(0, self.store.append([], "expert"))
		self.assertFalse(os.path.exists(self.store.path))
		self.assertEqual(0, len(self.store))

	def test_round_trip(self):
		original = trajectory("t1", steps=3)
		self.store.append([original], "expert")
		self.assertEqual(original, self.store.read()[0])


@ddt
class DatasetPoolTest(unittest.TestCase):

	def test_accumulate(self):
		first = DatasetPool().accumulate([pair("t1"), pair("t2", steps=3)], 0)
		second = first.accumulate([pair("t2", steps=2, iteration=1), pair("t3", iteration=1)], 1)

		self.assertEqual(2, len(first))
		self.assertEqual(["t1", "t2", "t3"], second.task_ids())
		self.assertEqual(1, second.record("t2").iteration)
		self.assertEqual(2, second.record("t2").trajectory.step_count)
		self.assertEqual(3, first.record("t2").trajectory.step_count)
		self.assertEqual({0: 2, 1: 3}, dict(second.history))
		self.assertIn("t3", second)
		self.assertNotIn("t3", first)

	def test_pool_never_shrinks(self):
		pool = DatasetPool()
		sizes = [0]
		for k, batch in enumerate([[pair("t1"), pair("t2")], [pair("t2", score=0.6)], [], [pair("t3"), pair("t1")]]):
			pool = pool.accumulate(batch, k)
			sizes.append(len(pool))
		self.assertEqual([0, 2, 2, 2, 3], sizes)

	@data(
		(dict(score=0.75), dict(score=1.0), 1),
		(dict(score=1.0, steps=2), dict(score=1.0, steps=3), 0),
		(dict(score=1.0, steps=2), dict(score=1.0, steps=2), 0),
		(dict(score=1.0, steps=4), dict(score=0.75, steps=1), 0),
		(dict(score=1.0, steps=4), dict(score=1.0, steps=1), 1)
	)
	def test_better_record_wins(self, params):
		old, new, expected = params
		pool = DatasetPool().accumulate([pair("t1", **old)], 0).accumulate([pair("t1", iteration=1, **new)], 1)
		self.assertEqual(expected, pool.record("t1").iteration)

	def test_skips_unjudged(self):
		pool = DatasetPool().accumulate([pair("t1", verdict=False), pair("t2")], 0)
		self.assertEqual(["t2"], pool.task_ids())

	def test_provenance(self):
		record = DatasetPool().accumulate([pair("t1", policy_id="scripted:student")], 2).record("t1")
		self.assertEqual("scripted:student", record.policy_id)
		self.assertEqual("seed", record.origin)
		self.assertEqual(dict(task=task("t1").to_dict(), trajectory=record.trajectory.to_dict(), iteration=2,
		                      origin="seed", policy_id="scripted:student"), record.to_dict())
		self.assertEqual(record, PoolRecord.from_dict(record.to_dict()))

	def test_view(self):
		pool = DatasetPool().accumulate([pair("a"), pair("b"), pair("c")], 0).accumulate([pair("d"), pair("e")], 1)
		self.assertEqual(["a", "b", "c", "d", "e"], [r.task_id for r in pool.view()])
		self.assertEqual(["a", "b", "d", "e"], [r.task_id for r in pool.view(replay_ratio=0.5)])
		self.assertEqual(["a", "d", "e"], [r.task_id for r in pool.view(replay_ratio=0.1)])
		self.assertEqual([], DatasetPool().view())

	@data(0.0, -0.5, 1.5)
	def test_view_rejects_ratio(self, ratio):
		self.assertRaises(ValueError, DatasetPool().view, replay_ratio=ratio)

	def test_persistence(self):
		basedir = tempfile.mkdtemp()
		try:
			pool = DatasetPool().accumulate([pair("t1"), pair("t2", steps=2)], 0).accumulate([pair("t3", iteration=1)], 1)
			path = os.path.join(basedir, "pool.json")
			pool.save(path)

			loaded = DatasetPool.load(path)
			self.assertEqual(pool.to_dict(), loaded.to_dict())
			self.assertEqual([0, 1], list(loaded.history.keys()))
			self.assertEqual(pool.records(), loaded.records())
		finally:
			shutil.rmtree(basedir)
