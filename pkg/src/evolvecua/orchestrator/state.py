# coding=utf-8
"""
Checkpointing of an evolution run.

:class:`RunState` tracks which phases of which iteration are done and where their artifacts live, and is written
to ``run_state.json`` after every phase. :class:`RunLock` keeps a second process out of the run directory.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import errno
import io
import logging
import os

from evolvecua.util import read_json, silent_remove, write_json

from .exceptions import RunLocked

STATE_VERSION = 1


class Phases(object):
	COLLECT_EXPERT = "collect_expert"
	ACCUMULATE = "accumulate"
	EXPORT_SFT = "export_sft"
	EVALUATE = "evaluate"
	ANALYZE_GAPS = "analyze_gaps"
	PLAN_GENERATION = "plan_generation"
	GENERATE_TASKS = "generate_tasks"
	BUILD_BANK = "build_bank"
	RECORD_MEMORY = "record_memory"

	BASELINE = (COLLECT_EXPERT, ACCUMULATE, EXPORT_SFT, EVALUATE, ANALYZE_GAPS, PLAN_GENERATION, BUILD_BANK,
	            RECORD_MEMORY)
	EVOLUTION = (EVALUATE, ANALYZE_GAPS, PLAN_GENERATION, GENERATE_TASKS, COLLECT_EXPERT, ACCUMULATE, EXPORT_SFT,
	             BUILD_BANK, RECORD_MEMORY)

	@classmethod
	def of(cls, iteration):
		"""
		Returns:
		    tuple: The phases of ``iteration`` in execution order.
		"""
		return cls.BASELINE if iteration == 0 else cls.EVOLUTION


class RunState(object):
	"""
	Arguments:
	    path (str): Location of ``run_state.json``.
	    mode (str): Evolution mode the run was started with.
	"""

	def __init__(self, path, mode=None):
		self._logger = logging.getLogger(__name__)
		self._path = path
		self._data = dict(version=STATE_VERSION,
		                  mode=mode,
		                  completed=[],
		                  iterations=dict(),
		                  failure=None,
		                  status="new")

	@classmethod
	def load(cls, path, mode=None):
		state = cls(path, mode=mode)
		if os.path.exists(path):
			state._data.update(read_json(path))
		return state

	def save(self):
		write_json(self._path, self._data)

	@property
	def path(self):
		return self._path

	@property
	def mode(self):
		return self._data.get("mode")

	@property
	def status(self):
		return self._data.get("status")

	@status.setter
	def status(self, value):
		self._data["status"] = value

	@property
	def completed(self):
		return list(self._data["completed"])

	@property
	def failure(self):
		return self._data.get("failure")

	def _iteration(self, k):
		return self._data["iterations"].setdefault(str(k), dict(done=[], artifacts=dict(), current=None))

	def done(self, k):
		return list(self._iteration(k)["done"])

	def is_done(self, k, phase):
		return phase in self._iteration(k)["done"]

	def current(self, k):
		return self._iteration(k)["current"]

	def artifacts(self, k):
		return dict(self._iteration(k)["artifacts"])

	def artifact(self, k, name, default=None):
		return self._iteration(k)["artifacts"].get(name, default)

	def start(self, k, phase):
		self._iteration(k)["current"] = phase
		self._data["failure"] = None
		self._data["status"] = "running"
		self.save()

	def finish(self, k, phase, **artifacts):
		"""
		Marks a phase as done and records its artifacts.

		Raises:
		    ValueError: The phase is unknown for the iteration or not after the last done phase.
		"""
		order = Phases.of(k)
		if phase not in order:
			raise ValueError("{} is no phase of iteration {}".format(phase, k))

		data = self._iteration(k)
		if data["done"] and order.index(phase) <= order.index(data["done"][-1]):
			raise ValueError("{} cannot follow {} in iteration {}".format(phase, data["done"][-1], k))

		data["done"].append(phase)
		data["artifacts"].update(artifacts)
		data["current"] = None
		self.save()

	def fail(self, k, phase, message):
		self._data["failure"] = dict(iteration=k, phase=phase, message=message)
		self._data["status"] = "failed"
		self.save()

	def complete(self, k):
		if k not in self._data["completed"]:
			self._data["completed"].append(k)
			self._data["completed"].sort()
		self.save()

	def is_complete(self, k):
		return k in self._data["completed"]

	def to_dict(self):
		return dict(self._data)


class RunLock(object):
	"""
	Exclusive lock on a run directory through a ``run.lock`` file holding the owner's pid. A lock whose owner is no
	longer alive is taken over.
	"""

	def __init__(self, path):
		self._logger = logging.getLogger(__name__)
		self._path = path
		self._held = False

	@property
	def path(self):
		return self._path

	def acquire(self):
		try:
			self._create()
		except OSError as e:
			if e.errno != errno.EEXIST:
				raise
			pid = self._owner()
			if pid is not None and _alive(pid) and pid != os.getpid():
				raise RunLocked(self._path, pid=pid)
			self._logger.warning("Taking over stale lock {} of process {}".format(self._path, pid))
			silent_remove(self._path)
			self._create()
		self._held = True
		return self

	def release(self):
		if self._held:
			silent_remove(self._path)
			self._held = False

	def _create(self):
		fd = os.open(self._path, os.O_CREAT | os.O_EXCL | os.O_WRONLY, 0o644)
		with os.fdopen(fd, "w") as f:
			f.write(str(os.getpid()))

	def _owner(self):
		try:
			with io.open(self._path, "r", encoding="utf-8") as f:
				return int(f.read().strip())
		except (IOError, OSError, ValueError):
			return None

	def __enter__(self):
		return self.acquire()

	def __exit__(self, exc_type, exc_val, exc_tb):
		self.release()


def _alive(pid):
	try:
		os.kill(pid, 0)
	except OSError as e:
		return e.errno == errno.EPERM
	return True
