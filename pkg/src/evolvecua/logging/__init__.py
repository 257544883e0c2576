# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import io
import logging
import logging.config
import os

import yaml

from evolvecua.util import dict_merge, ensure_dir

from . import handlers

ROLLOUT_LOGGER = "ROLLOUT"


def default_config(log_folder, debug=False):
	config = {
		"version": 1,
		"disable_existing_loggers": False,
		"formatters": {
			"simple": {
				"format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
			},
			"rollout": {
				"format": "%(asctime)s - %(iteration)s %(task_id)s #%(attempt)s step %(step)s - %(status)s - %(message)s"
			}
		},
		"handlers": {
			"console": {
				"class": "logging.StreamHandler",
				"level": "DEBUG",
				"formatter": "simple",
				"stream": "ext://sys.stderr"
			},
			"file": {
				"class": "evolvecua.logging.handlers.CleaningTimedRotatingFileHandler",
				"level": "DEBUG",
				"formatter": "simple",
				"when": "D",
				"backupCount": 6,
				"filename": os.path.join(log_folder, "evolvecua.log")
			},
			"rolloutFile": {
				"class": "evolvecua.logging.handlers.RolloutLogHandler",
				"level": "DEBUG",
				"formatter": "rollout",
				"backupCount": 3,
				"filename": os.path.join(log_folder, "rollout.log")
			}
		},
		"loggers": {
			ROLLOUT_LOGGER: {
				"level": "CRITICAL",
				"handlers": ["rolloutFile"],
				"propagate": False
			},
			"urllib3": {
				"level": "WARN"
			}
		},
		"root": {
			"level": "INFO",
			"handlers": ["console", "file"]
		}
	}

	if debug:
		config["root"]["level"] = "DEBUG"

	return config


def setup_logging(basedir, debug=False, logConf=None, rollouts=False):
	"""
	Configures logging for a run directory.

	The default configuration logs to the console and to ``<basedir>/logs/evolvecua.log``. An optional
	``logging.yaml`` (by default looked up in ``basedir``) is deep-merged on top of it.

	Arguments:
	    basedir (str): The run directory.
	    debug (bool): Whether to log on debug level and to enable the ``ROLLOUT`` logger.
	    logConf (str): Path of a logging configuration overriding the default location.
	    rollouts (bool): Whether to enable the ``ROLLOUT`` logger without enabling debug logging.
	"""
	log_folder = ensure_dir(os.path.join(basedir, "logs"))
	defaultConfig = default_config(log_folder, debug=debug)

	if logConf is None:
		logConf = os.path.join(basedir, "logging.yaml")

	configFromFile = {}
	if os.path.exists(logConf) and os.path.isfile(logConf):
		with io.open(logConf, "r", encoding="utf-8") as f:
			configFromFile = yaml.safe_load(f) or {}

	rollouts = rollouts or bool(configFromFile.pop("rollouts", False))

	config = dict_merge(defaultConfig, configFromFile)
	logging.config.dictConfig(config)
	logging.captureWarnings(True)

	handlers.RolloutLogHandler.on_run_start()
	if debug or rollouts:
		# enable step logging to rollout.log
		logging.getLogger(ROLLOUT_LOGGER).setLevel(logging.DEBUG)
