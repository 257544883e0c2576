# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class GenerationException(Exception):
	pass


class GenerationFailed(GenerationException):
	"""
	Raised by a task generator that could not produce a task for a request, e.g. because the model response held no
	usable task.
	"""
	def __init__(self, request_id, reason, *args, **kwargs):
		GenerationException.__init__(self, request_id, reason, *args, **kwargs)
		self.request_id = request_id
		self.reason = reason
		self.message = "Could not generate task {request_id}: {reason}".format(request_id=request_id, reason=reason)

	def __str__(self):
		return self.message


class ValidationExhausted(GenerationException):
	"""
	Raised when the environment setup of a generated task did not validate within the allowed number of attempts.

	.. attribute:: attempts

	   List of ``(attempt, error message)`` tuples.
	"""
	def __init__(self, task_id, attempts, *args, **kwargs):
		GenerationException.__init__(self, task_id, attempts, *args, **kwargs)
		self.task_id = task_id
		self.attempts = list(attempts)
		self.message = "Setup of {task_id} did not validate after {count} attempts".format(task_id=task_id,
		                                                                                   count=len(self.attempts))

	def __str__(self):
		return self.message


class UnsolvableTask(GenerationException):
	"""
	Raised when the stored solution of a generated task does not satisfy its checker after a successful setup.
	"""
	def __init__(self, task_id, reason, *args, **kwargs):
		GenerationException.__init__(self, task_id, reason, *args, **kwargs)
		self.task_id = task_id
		self.reason = reason
		self.message = "Solution of {task_id} does not solve it: {reason}".format(task_id=task_id, reason=reason)

	def __str__(self):
		return self.message
