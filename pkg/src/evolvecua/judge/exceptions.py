# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class JudgeException(Exception):
	pass


class JudgeParseError(JudgeException):
	"""
	Raised when a judge response holds no JSON object carrying all required verdict fields.

	.. attribute:: response

	   The raw judge response.
	"""
	def __init__(self, reason, response=None, *args, **kwargs):
		JudgeException.__init__(self, reason, *args, **kwargs)
		self.reason = reason
		self.response = response
		self.message = "Could not parse judge response: {reason}".format(reason=reason)

	def __str__(self):
		return self.message


class EmptyEvaluation(JudgeException):
	def __init__(self, *args, **kwargs):
		JudgeException.__init__(self, *args, **kwargs)
		self.message = "Cannot compute a profile from an empty evaluation"

	def __str__(self):
		return self.message
