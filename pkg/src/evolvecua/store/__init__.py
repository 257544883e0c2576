# coding=utf-8
"""
Persistence of trajectories and the accumulated dataset pool.

.. autoclass:: TrajectoryStore
   :members:

.. autoclass:: DatasetPool
   :members:
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging
import math
import threading

from evolvecua.model import TaskSpec, Trajectory
from evolvecua.util import append_jsonl, read_json, read_jsonl, write_json

from .exceptions import DuplicateIteration, EmptyPool, StoreException

POOL_VERSION = 1


class TrajectoryStore(object):
	"""
	Append-only line delimited JSON store of every judged trajectory of a run. Each line is a serialized
	:class:`~evolvecua.model.Trajectory` plus the ``stage`` it was produced in, e.g. ``expert`` or ``evaluation``.
	"""

	def __init__(self, path):
		self._logger = logging.getLogger(__name__)
		self._path = path
		self._mutex = threading.Lock()

	@property
	def path(self):
		return self._path

	def append(self, trajectories, stage):
		rows = []
		for trajectory in trajectories:
			row = trajectory.to_dict()
			row["stage"] = stage
			rows.append(row)
		if not rows:
			return 0
		with self._mutex:
			append_jsonl(self._path, rows)
		self._logger.debug("Stored {} {} trajectories".format(len(rows), stage))
		return len(rows)

	def rows(self):
		return read_jsonl(self._path)

	def read(self, stage=None):
		return [Trajectory.from_dict(row) for row in self.rows() if stage is None or row.get("stage") == stage]

	def ids(self):
		return set(Trajectory.from_dict(row).trajectory_id for row in self.rows())

	def __len__(self):
		return len(self.rows())


class PoolRecord(collections.namedtuple("PoolRecord", "task, trajectory, iteration")):
	"""
	One training trajectory with its provenance.

	Arguments:
	    task (TaskSpec): The task the trajectory solves.
	    trajectory (Trajectory): The judged trajectory.
	    iteration (int): Iteration the record entered the pool in.
	"""

	__slots__ = ()

	@property
	def task_id(self):
		return self.task.task_id

	@property
	def origin(self):
		return self.task.origin

	@property
	def policy_id(self):
		return self.trajectory.policy_id

	def better_than(self, other):
		"""
		Higher score wins, equal scores go to fewer steps. Equal records are not better than each other.
		"""
		return (self.trajectory.score, -self.trajectory.step_count) > (other.trajectory.score, -other.trajectory.step_count)

	def to_dict(self):
		return dict(task=self.task.to_dict(),
		            trajectory=self.trajectory.to_dict(),
		            iteration=self.iteration,
		            origin=self.origin,
		            policy_id=self.policy_id)

	@classmethod
	def from_dict(cls, data):
		return cls(TaskSpec.from_dict(data["task"]), Trajectory.from_dict(data["trajectory"]), data.get("iteration", 0))


class DatasetPool(object):
	"""
	The accumulated training pool, at most one record per task. Pools are snapshots, :meth:`accumulate` returns a
	new pool.
	"""

	def __init__(self, records=None, history=None):
		self._logger = logging.getLogger(__name__)
		self._records = collections.OrderedDict()
		for record in records or ():
			self._records[record.task_id] = record
		self._history = collections.OrderedDict((int(k), v) for k, v in (history or dict()).items())

	def records(self):
		return list(self._records.values())

	def record(self, task_id):
		return self._records.get(task_id)

	def task_ids(self):
		return list(self._records.keys())

	@property
	def history(self):
		"""
		Pool size after every iteration that accumulated into it.
		"""
		return collections.OrderedDict(self._history)

	def __len__(self):
		return len(self._records)

	def __contains__(self, task_id):
		return task_id in self._records

	def accumulate(self, new, iteration):
		"""
		Adds judged trajectories. A task already in the pool keeps its record unless the new one scores higher or
		scores equally with fewer steps.

		Arguments:
		    new (list): ``(task, trajectory)`` pairs.
		    iteration (int): Iteration the trajectories belong to.

		Returns:
		    DatasetPool: The new pool.
		"""
		records = collections.OrderedDict(self._records)
		added = replaced = 0
		for task, trajectory in new:
			if trajectory.judge_verdict is None:
				self._logger.warning("Not pooling {}, it has no verdict".format(trajectory.trajectory_id))
				continue
			record = PoolRecord(task, trajectory, iteration)
			existing = records.get(task.task_id)
			if existing is None:
				records[task.task_id] = record
				added += 1
			elif record.better_than(existing):
				records[task.task_id] = record
				replaced += 1

		history = collections.OrderedDict(self._history)
		history[int(iteration)] = len(records)
		self._logger.info("Pool of iteration {} holds {} records ({} added, {} replaced)".format(iteration, len(records), added, replaced))
		return DatasetPool(records.values(), history)

	def view(self, replay_ratio=1.0):
		"""
		The exported view: every record of the latest iteration plus the first ``ceil(replay_ratio * n)`` records of
		each earlier iteration, in record order.
		"""
		if not 0.0 < replay_ratio <= 1.0:
			raise ValueError("replay_ratio must lie within (0, 1], got {}".format(replay_ratio))

		records = self.records()
		if not records:
			return []
		latest = max(record.iteration for record in records)

		counts = collections.Counter(record.iteration for record in records if record.iteration != latest)
		quota = dict((iteration, int(math.ceil(replay_ratio * count))) for iteration, count in counts.items())

		result = []
		for record in records:
			if record.iteration != latest:
				if quota[record.iteration] <= 0:
					continue
				quota[record.iteration] -= 1
			result.append(record)
		return result

	##~~ persistence

	def to_dict(self):
		return dict(version=POOL_VERSION,
		            records=[record.to_dict() for record in self._records.values()],
		            history=dict((str(k), v) for k, v in self._history.items()))

	@classmethod
	def from_dict(cls, data):
		return cls([PoolRecord.from_dict(item) for item in data.get("records", [])],
		           collections.OrderedDict(sorted((int(k), v) for k, v in data.get("history", dict()).items())))

	def save(self, path):
		write_json(path, self.to_dict())

	@classmethod
	def load(cls, path):
		return cls.from_dict(read_json(path))


def accumulate(pool, new, iteration):
	return pool.accumulate(new, iteration)


__all__ = ["TrajectoryStore", "PoolRecord", "DatasetPool", "accumulate", "StoreException", "EmptyPool",
           "DuplicateIteration"]
