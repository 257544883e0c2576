# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class OrchestratorException(Exception):
	pass


class ConfigurationInvalid(OrchestratorException):
	"""
	Raised for a run configuration that cannot be run, e.g. an unknown mode or less than one iteration.
	"""
	def __init__(self, reason, *args, **kwargs):
		OrchestratorException.__init__(self, reason, *args, **kwargs)
		self.reason = reason
		self.message = "Invalid configuration: {reason}".format(reason=reason)

	def __str__(self):
		return self.message


class PhaseFailed(OrchestratorException):
	"""
	Raised when a phase of the evolution loop failed. The run state is checkpointed before, the run can be resumed.

	.. attribute:: cause

	   The exception the phase failed with, if any.
	"""
	def __init__(self, phase, iteration, reason, cause=None, *args, **kwargs):
		OrchestratorException.__init__(self, phase, iteration, reason, *args, **kwargs)
		self.phase = phase
		self.iteration = iteration
		self.reason = reason
		self.cause = cause
		if iteration is None:
			self.message = "Phase {phase} failed: {reason}".format(phase=phase, reason=reason)
		else:
			self.message = "Phase {phase} of iteration {iteration} failed: {reason}".format(phase=phase,
			                                                                               iteration=iteration,
			                                                                               reason=reason)

	def __str__(self):
		return self.message


class RunLocked(OrchestratorException):
	def __init__(self, path, pid=None, *args, **kwargs):
		OrchestratorException.__init__(self, path, pid, *args, **kwargs)
		self.path = path
		self.pid = pid
		self.message = "Run directory is locked by process {pid} ({path})".format(pid=pid if pid is not None else "?",
		                                                                         path=path)

	def __str__(self):
		return self.message
