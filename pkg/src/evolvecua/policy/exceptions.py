# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class PolicyException(Exception):
	pass


class UnknownPolicy(PolicyException):
	"""
	Raised for a policy designation that names no known policy, e.g. ``scripted:nonexistent``.
	"""
	def __init__(self, designation, reason=None, *args, **kwargs):
		PolicyException.__init__(self, designation, reason, *args, **kwargs)
		self.designation = designation
		self.reason = reason
		if reason:
			self.message = "Unknown policy {designation}: {reason}".format(designation=designation, reason=reason)
		else:
			self.message = "Unknown policy {designation}".format(designation=designation)

	def __str__(self):
		return self.message


class EndpointError(PolicyException):
	"""
	Raised when an LLM endpoint cannot be reached or answers with something that is not a completion.
	"""
	def __init__(self, endpoint, reason, *args, **kwargs):
		PolicyException.__init__(self, endpoint, reason, *args, **kwargs)
		self.endpoint = endpoint
		self.reason = reason
		self.message = "Endpoint {endpoint} failed: {reason}".format(endpoint=endpoint, reason=reason)

	def __str__(self):
		return self.message


class ReplayMiss(EndpointError):
	"""
	Raised by the replay client for a request that has no recorded response.
	"""
	def __init__(self, key, *args, **kwargs):
		EndpointError.__init__(self, "replay", "no recorded response for request {}".format(key), *args, **kwargs)
		self.key = key
