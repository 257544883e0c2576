# coding=utf-8
"""
The task library: task specs, their checkers and stored reference solutions.

A library directory holds one ``<app_id>.json`` per application and one ``checkers.json``::

    mini_browser.json   {"app_id": "mini_browser",
                         "tasks": [{"task_id": ..., "goal": ..., "difficulty": ..., "skills": [...],
                                    "setup": {"state": {...}, "expected": [...]}, "checker_id": ...,
                                    "solution": [<tool call payload>, ...], "gui_solution": [...]}]}
    checkers.json       {"<checker_id>": {"app_id": ..., "predicates": [...]}}
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging
import os

from evolvecua.model import Action, EnvSetupScript, TaskOrigins, TaskSpec
from evolvecua.model.exceptions import InvalidAction, InvalidTaskSpec
from evolvecua.util import ensure_dir, read_json, write_json

from .checkers import Checker
from .exceptions import InvalidTask, UnknownChecker

BUNDLED_LIBRARY = os.path.join(os.path.dirname(os.path.realpath(__file__)), "data", "library")

APP_ORDER = ("mini_browser", "mini_sheet")

CHECKERS_FILE = "checkers.json"


class LibraryEntry(collections.namedtuple("LibraryEntry", "task, solution, gui_solution")):
	__slots__ = ()

	def to_dict(self):
		result = self.task.to_dict()
		result["solution"] = [action.to_dict() for action in self.solution]
		if self.gui_solution:
			result["gui_solution"] = [action.to_dict() for action in self.gui_solution]
		return result


def _actions(task_id, payloads):
	try:
		return tuple(Action.from_payload(payload) for payload in payloads or ())
	except InvalidAction as error:
		raise InvalidTask(task_id, "invalid solution step: {}".format(error.reason))


class TaskLibrary(object):
	"""
	Ordered collection of tasks with their checkers. Task order is application order (``mini_browser`` first),
	then file order, generated tasks are appended in registration order.
	"""

	def __init__(self):
		self._logger = logging.getLogger(__name__)
		self._entries = collections.OrderedDict()
		self._checkers = dict()

	@classmethod
	def load(cls, path=None, apps=None):
		"""
		Loads a library directory.

		Arguments:
		    path (str): The library directory, defaults to the bundled seed library.
		    apps (list): Optional subset of application ids to load.

		Raises:
		    InvalidTask: A task record is malformed or references an unknown checker.
		"""
		if path is None:
			path = BUNDLED_LIBRARY

		library = cls()
		checkers = read_json(os.path.join(path, CHECKERS_FILE))
		for checker_id, data in checkers.items():
			try:
				library._checkers[checker_id] = Checker.from_dict(checker_id, data)
			except ValueError as error:
				raise InvalidTask(checker_id, "invalid checker: {}".format(error))

		files = sorted(f for f in os.listdir(path) if f.endswith(".json") and f != CHECKERS_FILE)
		order = dict((app_id, i) for i, app_id in enumerate(APP_ORDER))
		files.sort(key=lambda f: (order.get(f[:-len(".json")], len(order)), f))

		for filename in files:
			data = read_json(os.path.join(path, filename))
			app_id = data.get("app_id")
			if apps is not None and app_id not in apps:
				continue
			for record in data.get("tasks", []):
				library._add_record(app_id, record)

		library._logger.info("Loaded {} tasks and {} checkers from {}".format(len(library._entries), len(library._checkers), path))
		return library

	def _add_record(self, app_id, record):
		task_id = record.get("task_id")
		setup = record.get("setup") or dict()
		try:
			task = TaskSpec.create(task_id,
			                       record.get("goal"),
			                       app_id,
			                       record.get("difficulty"),
			                       record.get("skills"),
			                       EnvSetupScript.create(app_id, state=setup.get("state"), expected=setup.get("expected")),
			                       record.get("checker_id"),
			                       origin=record.get("origin", TaskOrigins.SEED))
		except InvalidTaskSpec as error:
			raise InvalidTask(task_id, error.reason)

		self._add(task, _actions(task_id, record.get("solution")), _actions(task_id, record.get("gui_solution")))

	def _add(self, task, solution, gui_solution=()):
		if task.task_id in self._entries:
			raise InvalidTask(task.task_id, "duplicate task id")
		checker = self._checkers.get(task.checker_id)
		if checker is None:
			raise InvalidTask(task.task_id, "unknown checker {}".format(task.checker_id))
		if checker.app_id != task.app_id:
			raise InvalidTask(task.task_id, "checker {} targets {}".format(checker.checker_id, checker.app_id))
		self._entries[task.task_id] = LibraryEntry(task, tuple(solution), tuple(gui_solution))

	def register(self, task, checker, solution=()):
		"""
		Adds a generated task, its checker and its reference solution.
		"""
		self._checkers[checker.checker_id] = checker
		self._add(task, solution)

	def limit(self, count):
		"""
		Returns:
		    TaskLibrary: A library holding only the first ``count`` tasks.
		"""
		result = TaskLibrary()
		result._checkers = dict(self._checkers)
		for entry in list(self._entries.values())[:count]:
			result._entries[entry.task.task_id] = entry
		return result

	def subset(self, task_ids):
		result = TaskLibrary()
		result._checkers = dict(self._checkers)
		for task_id in task_ids:
			result._entries[task_id] = self._entries[task_id]
		return result

	##~~ queries

	def tasks(self, app_id=None):
		return [entry.task for entry in self._entries.values() if app_id is None or entry.task.app_id == app_id]

	def task(self, task_id):
		entry = self._entries.get(task_id)
		return entry.task if entry is not None else None

	def checker(self, checker_id):
		checker = self._checkers.get(checker_id)
		if checker is None:
			raise UnknownChecker(checker_id)
		return checker

	def solution(self, task_id):
		entry = self._entries.get(task_id)
		return list(entry.solution) if entry is not None else []

	def gui_solution(self, task_id):
		entry = self._entries.get(task_id)
		return list(entry.gui_solution) if entry is not None else []

	def apps(self):
		result = []
		for entry in self._entries.values():
			if entry.task.app_id not in result:
				result.append(entry.task.app_id)
		return result

	def __len__(self):
		return len(self._entries)

	def __contains__(self, task_id):
		return task_id in self._entries

	def __iter__(self):
		return iter(self.tasks())

	##~~ persistence

	def snapshot(self):
		"""
		Returns:
		    tuple: ``(tasks, checkers)`` as JSON serializable structures.
		"""
		tasks = [entry.to_dict() for entry in self._entries.values()]
		used = [entry.task.checker_id for entry in self._entries.values()]
		checkers = collections.OrderedDict((checker_id, self._checkers[checker_id].to_dict()) for checker_id in used)
		return tasks, checkers

	def save(self, folder):
		"""
		Writes ``tasks.json`` and ``checkers.json`` into ``folder``.
		"""
		ensure_dir(folder)
		tasks, checkers = self.snapshot()
		write_json(os.path.join(folder, "tasks.json"), tasks)
		write_json(os.path.join(folder, CHECKERS_FILE), checkers)

	@classmethod
	def read(cls, folder):
		"""
		Reads a folder written by :meth:`save`.
		"""
		library = cls()
		for checker_id, data in read_json(os.path.join(folder, CHECKERS_FILE)).items():
			library._checkers[checker_id] = Checker.from_dict(checker_id, data)
		for record in read_json(os.path.join(folder, "tasks.json")):
			library._add_record(record.get("app_id"), record)
		return library

	def extend(self, other):
		"""
		Returns:
		    TaskLibrary: A new library holding the tasks of this library followed by the tasks of ``other``.
		"""
		result = TaskLibrary()
		result._checkers = dict(self._checkers)
		result._checkers.update(other._checkers)
		for entry in list(self._entries.values()) + list(other._entries.values()):
			if entry.task.task_id in result._entries:
				raise InvalidTask(entry.task.task_id, "duplicate task id")
			result._entries[entry.task.task_id] = entry
		return result
