# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class ExperienceException(Exception):
	pass


class ExtractionFailed(ExperienceException):
	"""
	Raised by an extractor or merger whose model response could not be turned into rules.

	.. attribute:: response

	   The raw model response, if any.
	"""
	def __init__(self, reason, response=None, *args, **kwargs):
		ExperienceException.__init__(self, reason, *args, **kwargs)
		self.reason = reason
		self.response = response
		self.message = "Could not extract experience: {reason}".format(reason=reason)

	def __str__(self):
		return self.message
