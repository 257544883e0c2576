# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import io
import os
import shutil
import tempfile
import unittest

from evolvecua.orchestrator.exceptions import RunLocked
from evolvecua.orchestrator.state import Phases, RunLock, RunState


class PhasesTest(unittest.TestCase):

	def test_order(self):
		self.assertEqual(Phases.BASELINE, Phases.of(0))
		self.assertEqual(Phases.EVOLUTION, Phases.of(3))
		self.assertNotIn(Phases.GENERATE_TASKS, Phases.BASELINE)
		self.assertEqual([Phases.EVALUATE, Phases.ANALYZE_GAPS, Phases.PLAN_GENERATION, Phases.GENERATE_TASKS],
		                 list(Phases.EVOLUTION[:4]))


class RunStateTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.path = os.path.join(self.basedir, "run_state.json")

	def tearDown(self):
		shutil.rmtree(self.basedir)

	def test_new(self):
		state = RunState.load(self.path, mode="exp_only")
		self.assertEqual("exp_only", state.mode)
		self.assertEqual("new", state.status)
		self.assertEqual([], state.completed)
		self.assertEqual([], state.done(0))
		self.assertFalse(os.path.exists(self.path))

	def test_phases_are_checkpointed(self):
		state = RunState(self.path, mode="distill_exp")
		state.start(0, Phases.COLLECT_EXPERT)
		self.assertEqual(Phases.COLLECT_EXPERT, RunState.load(self.path).current(0))

		state.finish(0, Phases.COLLECT_EXPERT, expert="expert.jsonl", expert_count=3)
		state.finish(0, Phases.ACCUMULATE, pool_size=3)

		loaded = RunState.load(self.path)
		self.assertEqual("distill_exp", loaded.mode)
		self.assertEqual("running", loaded.status)
		self.assertEqual([Phases.COLLECT_EXPERT, Phases.ACCUMULATE], loaded.done(0))
		self.assertTrue(loaded.is_done(0, Phases.ACCUMULATE))
		self.assertFalse(loaded.is_done(0, Phases.EXPORT_SFT))
		self.assertIsNone(loaded.current(0))
		self.assertEqual(dict(expert="expert.jsonl", expert_count=3, pool_size=3), loaded.artifacts(0))
		self.assertEqual(3, loaded.artifact(0, "pool_size"))
		self.assertEqual("fallback", loaded.artifact(0, "dataset", default="fallback"))

	def test_phases_only_move_forward(self):
		state = RunState(self.path)
		state.finish(1, Phases.ANALYZE_GAPS)
		self.assertRaises(ValueError, state.finish, 1, Phases.EVALUATE)
		self.assertRaises(ValueError, state.finish, 1, Phases.ANALYZE_GAPS)
		self.assertRaises(ValueError, state.finish, 0, Phases.GENERATE_TASKS)
		self.assertRaises(ValueError, state.finish, 0, "train")
		state.finish(1, Phases.GENERATE_TASKS)
		self.assertEqual([Phases.ANALYZE_GAPS, Phases.GENERATE_TASKS], state.done(1))

	def test_failure(self):
		state = RunState(self.path)
		state.start(1, Phases.GENERATE_TASKS)
		state.fail(1, Phases.GENERATE_TASKS, "boom")

		loaded = RunState.load(self.path)
		self.assertEqual("failed", loaded.status)
		self.assertEqual(dict(iteration=1, phase=Phases.GENERATE_TASKS, message="boom"), loaded.failure)

		loaded.start(1, Phases.GENERATE_TASKS)
		self.assertIsNone(loaded.failure)
		self.assertEqual("running", loaded.status)

	def test_complete(self):
		state = RunState(self.path)
		state.complete(1)
		state.complete(0)
		state.complete(1)
		self.assertEqual([0, 1], RunState.load(self.path).completed)
		self.assertTrue(state.is_complete(0))
		self.assertFalse(state.is_complete(2))


class RunLockTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.path = os.path.join(self.basedir, "run.lock")

	def tearDown(self):
		shutil.rmtree(self.basedir)

	def test_acquire_and_release(self):
		with RunLock(self.path):
			with io.open(self.path, "r", encoding="utf-8") as f:
				self.assertEqual(str(os.getpid()), f.read())
		self.assertFalse(os.path.exists(self.path))

	def test_release_without_acquire(self):
		with io.open(self.path, "w", encoding="utf-8") as f:
			f.write(u"12")
		RunLock(self.path).release()
		self.assertTrue(os.path.exists(self.path))

	def test_locked_by_live_process(self):
		with io.open(self.path, "w", encoding="utf-8") as f:
			f.write(u"{}".format(os.getppid()))

		with self.assertRaises(RunLocked) as context:
			RunLock(self.path).acquire()
		self.assertEqual(os.getppid(), context.exception.pid)
		self.assertTrue(os.path.exists(self.path))

	def test_takes_over_unreadable_lock(self):
		with io.open(self.path, "w", encoding="utf-8") as f:
			f.write(u"not a pid")

		lock = RunLock(self.path).acquire()
		try:
			with io.open(self.path, "r", encoding="utf-8") as f:
				self.assertEqual(str(os.getpid()), f.read())
		finally:
			lock.release()

	def test_reentrant_for_own_process(self):
		first = RunLock(self.path).acquire()
		second = RunLock(self.path).acquire()
		second.release()
		first.release()
		self.assertFalse(os.path.exists(self.path))
