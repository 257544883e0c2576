# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import io
import logging
import os
import shutil
import tempfile
import unittest

import mock

from evolvecua.logging import ROLLOUT_LOGGER, default_config, setup_logging
from evolvecua.logging.handlers import RolloutLogHandler


class SetupLoggingTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.rollout_level = logging.getLogger(ROLLOUT_LOGGER).level

	def tearDown(self):
		logging.getLogger(ROLLOUT_LOGGER).setLevel(self.rollout_level)
		RolloutLogHandler._do_rollover = False
		shutil.rmtree(self.basedir)

	def test_default_config(self):
		config = default_config("/tmp/logs")
		self.assertEqual("INFO", config["root"]["level"])
		self.assertEqual(os.path.join("/tmp/logs", "evolvecua.log"), config["handlers"]["file"]["filename"])
		self.assertEqual(os.path.join("/tmp/logs", "rollout.log"), config["handlers"]["rolloutFile"]["filename"])
		self.assertFalse(config["loggers"][ROLLOUT_LOGGER]["propagate"])

		self.assertEqual("DEBUG", default_config("/tmp/logs", debug=True)["root"]["level"])

	@mock.patch("logging.captureWarnings")
	@mock.patch("logging.config.dictConfig")
	def test_defaults(self, mock_dict_config, mock_capture):
		setup_logging(self.basedir)

		config = mock_dict_config.call_args[0][0]
		self.assertEqual(default_config(os.path.join(self.basedir, "logs")), config)
		self.assertTrue(os.path.isdir(os.path.join(self.basedir, "logs")))
		mock_capture.assert_called_once_with(True)

	@mock.patch("logging.captureWarnings")
	@mock.patch("logging.config.dictConfig")
	def test_logging_yaml(self, mock_dict_config, mock_capture):
		with io.open(os.path.join(self.basedir, "logging.yaml"), "w", encoding="utf-8") as f:
			f.write(u"rollouts: true\nloggers:\n  evolvecua.policy:\n    level: DEBUG\n")

		setup_logging(self.basedir)

		config = mock_dict_config.call_args[0][0]
		self.assertNotIn("rollouts", config)
		self.assertEqual(dict(level="DEBUG"), config["loggers"]["evolvecua.policy"])
		self.assertEqual("CRITICAL", config["loggers"][ROLLOUT_LOGGER]["level"])
		self.assertEqual(logging.DEBUG, logging.getLogger(ROLLOUT_LOGGER).level)

	@mock.patch("logging.captureWarnings")
	@mock.patch("logging.config.dictConfig")
	def test_explicit_logging_config(self, mock_dict_config, mock_capture):
		path = os.path.join(self.basedir, "custom.yaml")
		with io.open(path, "w", encoding="utf-8") as f:
			f.write(u"root:\n  level: WARN\n")

		setup_logging(self.basedir, logConf=path)
		self.assertEqual("WARN", mock_dict_config.call_args[0][0]["root"]["level"])


class RolloutLogHandlerTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.path = os.path.join(self.basedir, "rollout.log")

	def tearDown(self):
		RolloutLogHandler._do_rollover = False
		shutil.rmtree(self.basedir)

	def record(self, message):
		return logging.LogRecord(ROLLOUT_LOGGER, logging.INFO, __file__, 1, message, None, None)

	def test_rollover_once_per_run(self):
		with io.open(self.path, "w", encoding="utf-8") as f:
			f.write(u"previous run\n")

		RolloutLogHandler.on_run_start()
		handler = RolloutLogHandler(self.path, backupCount=3)
		try:
			handler.emit(self.record("step 0"))
			handler.emit(self.record("step 1"))
		finally:
			handler.close()

		with io.open(self.path, "r", encoding="utf-8") as f:
			self.assertEqual(u"step 0\nstep 1\n", f.read())

		rolled = [name for name in os.listdir(self.basedir) if name.startswith("rollout.log.")]
		self.assertEqual(1, len(rolled))

	def test_rollout_fields(self):
		handler = RolloutLogHandler(self.path, backupCount=3)
		handler.setFormatter(logging.Formatter("%(iteration)s %(task_id)s #%(attempt)s step %(step)s - %(status)s - %(message)s"))
		try:
			record = self.record("key:Ctrl+P -> print dialog opened")
			for field, value in dict(iteration=1, task_id="browser-h02", attempt=0, step=3, status="ok").items():
				setattr(record, field, value)
			handler.emit(record)
			handler.emit(self.record("plain"))
		finally:
			handler.close()

		with io.open(self.path, "r", encoding="utf-8") as f:
			self.assertEqual([u"1 browser-h02 #0 step 3 - ok - key:Ctrl+P -> print dialog opened",
			                  u"- - #- step - - - - plain"], f.read().splitlines())

	def test_empty_log_is_not_kept(self):
		io.open(self.path, "w", encoding="utf-8").close()

		RolloutLogHandler.on_run_start()
		handler = RolloutLogHandler(self.path, backupCount=3)
		try:
			handler.emit(self.record("step 0"))
		finally:
			handler.close()

		self.assertEqual(["rollout.log"], sorted(name for name in os.listdir(self.basedir)))

	def test_cleanup_keeps_backup_count(self):
		for suffix in ("2026-01-01_10-00-00", "2026-01-02_10-00-00", "2026-01-03_10-00-00", "not-a-date"):
			with io.open(self.path + "." + suffix, "w", encoding="utf-8") as f:
				f.write(u"old\n")

		handler = RolloutLogHandler(self.path, backupCount=2)
		handler.close()

		self.assertEqual(["rollout.log.2026-01-02_10-00-00", "rollout.log.2026-01-03_10-00-00", "rollout.log.not-a-date"],
		                 sorted(name for name in os.listdir(self.basedir) if name.startswith("rollout.log.")))
