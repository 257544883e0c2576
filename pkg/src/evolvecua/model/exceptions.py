# coding=utf-8
"""
Exceptions raised while encoding, decoding or validating actions.

.. autoclass:: ModelException

.. autoclass:: FormatError
   :show-inheritance:

.. autoclass:: InvalidAction
   :show-inheritance:

.. autoclass:: InvalidTaskSpec
   :show-inheritance:
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class ModelException(Exception):
	"""
	Base exception of all core model related exceptions.
	"""
	pass


class InvalidAction(ModelException, ValueError):
	"""
	Raised when an :class:`~evolvecua.model.Action` is constructed from values that violate its invariants.
	"""
	def __init__(self, reason, *args, **kwargs):
		ModelException.__init__(self, reason, *args, **kwargs)
		self.reason = reason
		self.message = "Invalid action: {reason}".format(reason=reason)

	def __str__(self):
		return self.message


class FormatError(ModelException):
	"""
	Raised if model output text could not be decoded into an action.

	.. attribute:: stage

	   One of ``missing_block``, ``bad_json`` or ``bad_args``, see :class:`FormatStages`.

	.. attribute:: violations

	   List of human readable argument violations, only populated for ``bad_args``.
	"""

	def __init__(self, stage, detail=None, violations=None, *args, **kwargs):
		ModelException.__init__(self, stage, detail, *args, **kwargs)
		self.stage = stage
		self.detail = detail
		self.violations = list(violations) if violations else []

		if detail:
			self.message = "Could not decode tool call ({stage}): {detail}".format(stage=stage, detail=detail)
		else:
			self.message = "Could not decode tool call ({stage})".format(stage=stage)

	def __str__(self):
		return self.message


class FormatStages(object):
	MISSING_BLOCK = "missing_block"
	BAD_JSON = "bad_json"
	BAD_ARGS = "bad_args"

	@classmethod
	def values(cls):
		return [cls.MISSING_BLOCK, cls.BAD_JSON, cls.BAD_ARGS]


class InvalidTaskSpec(ModelException, ValueError):
	"""
	Raised when a task record violates the task invariants, e.g. by referencing an unknown skill category.

	.. attribute:: task_id

	   Identifier of the offending task, if known.
	"""
	def __init__(self, task_id, reason, *args, **kwargs):
		ModelException.__init__(self, task_id, reason, *args, **kwargs)
		self.task_id = task_id
		self.reason = reason
		self.message = "Invalid task {task_id}: {reason}".format(task_id=task_id, reason=reason)

	def __str__(self):
		return self.message
