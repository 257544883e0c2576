# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class SimulationException(Exception):
	pass


class UnknownApplication(SimulationException):
	def __init__(self, app_id, *args, **kwargs):
		SimulationException.__init__(self, app_id, *args, **kwargs)
		self.app_id = app_id
		self.message = "No application registered under {app_id}".format(app_id=app_id)

	def __str__(self):
		return self.message


class SetupError(SimulationException):
	"""
	Raised when an environment setup script cannot be applied: unknown fields, contradictory state or expected
	predicates that do not hold after applying it. ``message`` is meant to be fed back to a task generator.
	"""
	def __init__(self, reason, app_id=None, *args, **kwargs):
		SimulationException.__init__(self, reason, app_id, *args, **kwargs)
		self.reason = reason
		self.app_id = app_id
		if app_id:
			self.message = "Setup of {app_id} failed: {reason}".format(app_id=app_id, reason=reason)
		else:
			self.message = "Setup failed: {reason}".format(reason=reason)

	def __str__(self):
		return self.message


class ActionFailed(SimulationException):
	"""
	Raised when an action cannot be applied to the current application state. A rollout records ``message`` as the
	step's result and continues.
	"""
	def __init__(self, reason, *args, **kwargs):
		SimulationException.__init__(self, reason, *args, **kwargs)
		self.reason = reason
		self.message = "Action failed: {reason}".format(reason=reason)

	def __str__(self):
		return self.message


class UnknownFact(SimulationException):
	def __init__(self, app_id, fact, *args, **kwargs):
		SimulationException.__init__(self, app_id, fact, *args, **kwargs)
		self.app_id = app_id
		self.fact = fact
		self.message = "{app_id} has no fact {fact}".format(app_id=app_id, fact=fact)

	def __str__(self):
		return self.message


class UnknownChecker(SimulationException):
	def __init__(self, checker_id, *args, **kwargs):
		SimulationException.__init__(self, checker_id, *args, **kwargs)
		self.checker_id = checker_id
		self.message = "No checker registered under {checker_id}".format(checker_id=checker_id)

	def __str__(self):
		return self.message


class InvalidTask(SimulationException):
	"""
	Raised while loading a task library whose records are malformed, e.g. reference an unknown checker or carry an
	unknown skill category.
	"""
	def __init__(self, task_id, reason, *args, **kwargs):
		SimulationException.__init__(self, task_id, reason, *args, **kwargs)
		self.task_id = task_id
		self.reason = reason
		self.message = "Invalid task {task_id}: {reason}".format(task_id=task_id, reason=reason)

	def __str__(self):
		return self.message
