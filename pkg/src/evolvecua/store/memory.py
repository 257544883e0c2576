# coding=utf-8
"""
Evolution memory: what happened to every task and every iteration of a run.

  * :class:`TaskMemory`: per task outcome history across iterations and the current streak
  * :class:`IterationMemory`: per iteration summary (profile snapshot, pass rate, score, MCP ratio, pool and bank size)
  * :class:`EvolutionMemory`: both of the above plus global patterns per iteration
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections

from evolvecua.util import read_json, write_json

from .exceptions import DuplicateIteration

MEMORY_VERSION = 1

PASS = "pass"
FAIL = "fail"


class TaskMemory(collections.namedtuple("TaskMemory", "task_id, outcomes")):
	"""
	Arguments:
	    task_id (str): The task.
	    outcomes (tuple): ``(iteration, outcome, score)`` per evaluated iteration, ``outcome`` is ``pass`` or ``fail``.
	"""

	__slots__ = ()

	@property
	def history(self):
		return [outcome for _, outcome, _ in self.outcomes]

	@property
	def streak(self):
		"""
		Returns:
		    tuple: ``(outcome, length)`` of the trailing run of equal outcomes, ``(None, 0)`` without outcomes.
		"""
		history = self.history
		if not history:
			return None, 0
		length = 0
		for outcome in reversed(history):
			if outcome != history[-1]:
				break
			length += 1
		return history[-1], length

	def add(self, iteration, success, score):
		return self._replace(outcomes=self.outcomes + ((iteration, PASS if success else FAIL, score),))

	def to_dict(self):
		outcome, length = self.streak
		return dict(task_id=self.task_id,
		            outcomes=[dict(iteration=i, outcome=o, score=s) for i, o, s in self.outcomes],
		            streak=dict(outcome=outcome, length=length))

	@classmethod
	def from_dict(cls, data):
		return cls(data["task_id"], tuple((item["iteration"], item["outcome"], item.get("score", 0.0))
		                                  for item in data.get("outcomes", [])))


class IterationMemory(collections.namedtuple("IterationMemory", "iteration, pass_rate, score_mean, mcp_ratio, pool_size, "
                                                                "bank_size, profile")):
	__slots__ = ()

	def to_dict(self):
		return dict(iteration=self.iteration,
		            pass_rate=self.pass_rate,
		            score_mean=self.score_mean,
		            mcp_ratio=self.mcp_ratio,
		            pool_size=self.pool_size,
		            bank_size=self.bank_size,
		            profile=self.profile)

	@classmethod
	def from_dict(cls, data):
		return cls(data["iteration"], data.get("pass_rate"), data.get("score_mean"), data.get("mcp_ratio"),
		           data.get("pool_size", 0), data.get("bank_size", 0), data.get("profile"))


class EvolutionMemory(object):
	def __init__(self, tasks=None, iterations=None, patterns=None):
		self._tasks = collections.OrderedDict((memory.task_id, memory) for memory in tasks or ())
		self._iterations = collections.OrderedDict((memory.iteration, memory) for memory in iterations or ())
		self._patterns = list(patterns or ())

	def task(self, task_id):
		return self._tasks.get(task_id)

	def tasks(self):
		return list(self._tasks.values())

	def iterations(self):
		return list(self._iterations.values())

	def iteration(self, k):
		return self._iterations.get(k)

	@property
	def patterns(self):
		return list(self._patterns)

	def record(self, profile, pool_size, bank, iteration, evaluated=(), prior_bank=None):
		"""
		Records a completed iteration.

		Arguments:
		    profile (PerformanceProfile): Profile of the iteration's evaluation.
		    pool_size (int): Size of the dataset pool after the iteration.
		    bank (ExperienceBank): Bank snapshot of the iteration.
		    iteration (int): The iteration.
		    evaluated (list): ``(task, trajectory)`` pairs of the evaluation.
		    prior_bank (ExperienceBank): Snapshot of the previous iteration, for the rules learned.

		Returns:
		    EvolutionMemory: The new memory.

		Raises:
		    DuplicateIteration: ``iteration`` has already been recorded.
		"""
		if iteration in self._iterations:
			raise DuplicateIteration(iteration)

		tasks = collections.OrderedDict(self._tasks)
		newly_solved = []
		regressions = []
		for task, trajectory in evaluated:
			memory = tasks.get(task.task_id, TaskMemory(task.task_id, ()))
			previous = memory.history[-1] if memory.outcomes else None
			memory = memory.add(iteration, trajectory.success, trajectory.score)
			tasks[task.task_id] = memory
			if previous == FAIL and trajectory.success:
				newly_solved.append(task.task_id)
			elif previous == PASS and not trajectory.success:
				regressions.append(task.task_id)

		persistent = [memory.task_id for memory in tasks.values()
		              if memory.streak[0] == FAIL and memory.streak[1] >= 2]

		known = set(prior_bank.texts()) if prior_bank is not None else set()
		learned = []
		for text in bank.texts():
			if text not in known and text not in learned:
				learned.append(text)

		iterations = collections.OrderedDict(self._iterations)
		iterations[iteration] = IterationMemory(iteration,
		                                        profile.pass_rate.value,
		                                        profile.score_mean.value,
		                                        profile.mcp_ratio,
		                                        pool_size,
		                                        len(bank),
		                                        profile.to_dict())

		patterns = list(self._patterns)
		patterns.append(dict(iteration=iteration,
		                     persistent_failures=persistent,
		                     newly_solved=newly_solved,
		                     regressions=regressions,
		                     rules_learned=learned))
		return EvolutionMemory(tasks.values(), iterations.values(), patterns)

	def to_dict(self):
		return dict(version=MEMORY_VERSION,
		            tasks=[memory.to_dict() for memory in self._tasks.values()],
		            iterations=[memory.to_dict() for memory in self._iterations.values()],
		            patterns=list(self._patterns))

	@classmethod
	def from_dict(cls, data):
		return cls([TaskMemory.from_dict(item) for item in data.get("tasks", [])],
		           [IterationMemory.from_dict(item) for item in data.get("iterations", [])],
		           data.get("patterns", []))

	def save(self, path):
		write_json(path, self.to_dict())

	@classmethod
	def load(cls, path):
		return cls.from_dict(read_json(path))


def record_iteration(memory, profile, pool, bank, iteration, evaluated=(), prior_bank=None):
	return memory.record(profile, len(pool), bank, iteration, evaluated=evaluated, prior_bank=prior_bank)
