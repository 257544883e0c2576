# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import logging.handlers
import os
import re
import time


ROLLOUT_FIELDS = ("iteration", "task_id", "attempt", "step", "status")
"""Fields the ``ROLLOUT`` logger passes as ``extra``, records without them show ``-``."""


class BackupCleaner(object):
	"""
	Removes rolled over files beyond ``backupCount``, oldest first. Rolled over files are ``<log>.<suffix>`` with
	a suffix matching ``_backup_pattern``.
	"""

	_backup_pattern = re.compile(r"^\d{4}-\d{2}-\d{2}(_\d{2}-\d{2}-\d{2})?$")

	def backups(self):
		folder, name = os.path.split(self.baseFilename)
		prefix = name + "."
		return sorted(os.path.join(folder, f) for f in os.listdir(folder)
		              if f.startswith(prefix) and self._backup_pattern.match(f[len(prefix):]))

	def getFilesToDelete(self):
		backups = self.backups()
		if self.backupCount <= 0 or len(backups) <= self.backupCount:
			return []
		return backups[:len(backups) - self.backupCount]

	def cleanupFiles(self):
		for path in self.getFilesToDelete():
			os.remove(path)


class CleaningTimedRotatingFileHandler(BackupCleaner, logging.handlers.TimedRotatingFileHandler):
	"""
	The main log, rotated daily. Backups left over from earlier runs are removed on start.
	"""

	def __init__(self, *args, **kwargs):
		logging.handlers.TimedRotatingFileHandler.__init__(self, *args, **kwargs)
		self.cleanupFiles()


class RolloutLogHandler(BackupCleaner, logging.handlers.RotatingFileHandler):
	"""
	File handler of the ``ROLLOUT`` logger, one line per rollout step. The log starts fresh with every run: the
	first record after :meth:`on_run_start` moves the previous run's log aside, suffixed with the time of its
	last line.

	Records are guaranteed to carry the :data:`ROLLOUT_FIELDS`, so formats may reference them directly, e.g.
	``%(task_id)s #%(attempt)s step %(step)s``.
	"""

	_do_rollover = False
	_suffix_template = "%Y-%m-%d_%H-%M-%S"

	@classmethod
	def on_run_start(cls):
		cls._do_rollover = True

	def __init__(self, *args, **kwargs):
		logging.handlers.RotatingFileHandler.__init__(self, *args, **kwargs)
		self.cleanupFiles()

	def emit(self, record):
		for field in ROLLOUT_FIELDS:
			if not hasattr(record, field):
				setattr(record, field, "-")
		logging.handlers.RotatingFileHandler.emit(self, record)

	def shouldRollover(self, record):
		return RolloutLogHandler._do_rollover

	def doRollover(self):
		RolloutLogHandler._do_rollover = False

		if self.stream:
			self.stream.close()
			self.stream = None

		if os.path.exists(self.baseFilename) and os.path.getsize(self.baseFilename) > 0:
			last_write = time.localtime(os.stat(self.baseFilename).st_mtime)
			backup = self.baseFilename + "." + time.strftime(self._suffix_template, last_write)
			if os.path.exists(backup):
				os.remove(backup)
			os.rename(self.baseFilename, backup)

		self.cleanupFiles()
		if not self.delay:
			self.stream = self._open()
