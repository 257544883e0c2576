# coding=utf-8
"""
This module represents EvolveCUA's settings management. Within this module the default settings of a run are
defined and the instance of the :class:`Settings` is held, which offers getter and setter methods for the raw
configuration values of a run directory's ``config.yaml``.

.. autodata:: default_settings
   :annotation: = dict(...)

.. autodata:: environment_overrides

.. autofunction:: settings

.. autoclass:: Settings
   :members:
   :undoc-members:
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import copy
import io
import logging
import os

import yaml

from evolvecua.util import atomic_write, dict_merge

_instance = None


def settings(init=False, basedir=None, configfile=None):
	"""
	Factory method for initially constructing and consecutively retrieving the :class:`~evolvecua.settings.Settings`
	singleton.

	Arguments:
	    init (boolean): A flag indicating whether this is the initial call to construct the singleton (True) or not
	        (False, default). If this is set to True and the settings have already been initialized, a
	        :class:`ValueError` will be raised. The same will happen if the settings have not yet been initialized
	        and this is set to False.
	    basedir (str): Path of the run directory. Defaults to the current working directory.
	    configfile (str): Path of the configuration file (``config.yaml``) to work on. If not set the default will
	        be used: ``<basedir>/config.yaml``.

	Returns:
	    Settings: The fully initialized :class:`Settings` instance.

	Raises:
	    ValueError: ``init`` is True but settings are already initialized or vice versa.
	"""
	global _instance
	if _instance is not None:
		if init:
			raise ValueError("Settings Manager already initialized")

	else:
		if init:
			_instance = Settings(configfile=configfile, basedir=basedir)
		else:
			raise ValueError("Settings not initialized yet")

	return _instance


default_settings = {
	"run": {
		"mode": "exp_only",
		"iterations": 1,
		"seed": 0,
		"library": None,
		"apps": None,
		"taskLimit": None,
		"workers": 4,
		"pauseForStudent": False
	},
	"rollout": {
		"maxSteps": 25,
		"attempts": 3,
		"successThreshold": 0.5,
		"experienceInjection": True
	},
	"evaluation": {
		"attempts": 3
	},
	"thresholds": {
		"mcpTarget": 0.5,
		"difficulty": {
			"easy": 0.6,
			"medium": 0.6,
			"hard": 0.6
		},
		"skill": {
			"data_retrieval": 0.6,
			"data_manipulation": 0.6,
			"search_query": 0.6,
			"execution_automation": 0.6,
			"navigation_browsing": 0.6,
			"configuration_settings": 0.6
		}
	},
	"generation": {
		"budget": 20,
		"epsilon": 0.02,
		"retries": 3,
		"generator": "template"
	},
	"bank": {
		"capacity": 8,
		"maxRuleLength": 300,
		"overLength": "truncate",
		"extractor": "deterministic",
		"merger": "recency"
	},
	"pool": {
		"includeStudent": True,
		"replayRatio": 1.0
	},
	"policies": {
		"expert": "scripted:reference",
		"students": ["scripted:student"],
		"judge": "oracle",
		"studentGaps": None
	},
	"llm": {
		"endpoint": None,
		"model": None,
		"timeout": 60,
		"tokenEnv": "EVOLVECUA_API_TOKEN",
		"fixtures": None,
		"record": None
	},
	"sft": {
		"baseModel": None,
		"learningRate": 2e-5,
		"loraRank": 8,
		"imageMaxPixels": 50176,
		"maxImages": 30,
		"cutoffLen": 32768
	}
}
"""The default settings of a run."""

environment_overrides = {
	("llm", "endpoint"): "EVOLVECUA_LLM_ENDPOINT",
	("llm", "model"): "EVOLVECUA_LLM_MODEL",
	("llm", "timeout"): "EVOLVECUA_LLM_TIMEOUT"
}
"""Settings paths that may be overridden through environment variables."""

valid_boolean_trues = [True, "true", "yes", "y", "1"]
""" Values that are considered to be equivalent to the boolean ``True`` value, used for type conversion in various places."""


class NoSuchSettingsPath(BaseException):
	pass


class Settings(object):
	"""
	The :class:`Settings` class manages the configuration of one run directory. It loads ``config.yaml``, persists
	changes to disk and provides access methods for getting and setting specific values from the overall settings
	structure via paths.

	A path is a list or tuple of keys to follow down into the settings. For a configuration like::

	    rollout:
	        maxSteps: 25
	        attempts: 3
	    thresholds:
	        difficulty:
	            hard: 0.6

	``["rollout", "maxSteps"]`` yields ``25`` and ``["thresholds", "difficulty"]`` yields ``{"hard": 0.6, ...}``
	merged with the defaults if requested via ``merged=True``. ``["rollout", "maxSteps", "value"]`` is an invalid
	path.
	"""

	def __init__(self, configfile=None, basedir=None, environ=None):
		self._logger = logging.getLogger(__name__)

		self._config = None
		self._dirty = False
		self._mtime = None
		self._environ = environ if environ is not None else os.environ

		self._basedir = os.path.abspath(basedir if basedir is not None else os.getcwd())
		if not os.path.isdir(self._basedir):
			os.makedirs(self._basedir)

		if configfile is not None:
			self._configfile = configfile
		else:
			self._configfile = os.path.join(self._basedir, "config.yaml")
		self.load()

	@property
	def basedir(self):
		return self._basedir

	@property
	def configfile(self):
		return self._configfile

	@property
	def effective(self):
		result = dict_merge(default_settings, self._config)
		for path, variable in environment_overrides.items():
			value = self._environ.get(variable)
			if value:
				result[path[0]][path[1]] = value
		return result

	#~~ load and save

	def load(self):
		if os.path.exists(self._configfile) and os.path.isfile(self._configfile):
			from evolvecua.orchestrator.exceptions import ConfigurationInvalid
			try:
				with io.open(self._configfile, "r", encoding="utf-8") as f:
					self._config = yaml.safe_load(f)
			except yaml.YAMLError as error:
				raise ConfigurationInvalid("{} is not valid YAML: {}".format(self._configfile, error))
			if self._config is not None and not isinstance(self._config, dict):
				raise ConfigurationInvalid("{} must hold a mapping".format(self._configfile))
			self._mtime = self.last_modified
		# changed from else to handle cases where the file exists, but is empty / 0 bytes
		if not self._config:
			self._config = {}

	def save(self, force=False):
		if not self._dirty and not force:
			return False

		try:
			with atomic_write(self._configfile, "w", prefix="evolvecua-config-", suffix=".yaml", permissions=0o600, max_permissions=0o666) as configFile:
				yaml.safe_dump(self._config, configFile, default_flow_style=False, indent=4, allow_unicode=True)
				self._dirty = False
		except Exception:
			self._logger.exception("Error while saving config.yaml!")
			raise
		else:
			self.load()
			return True

	@property
	def last_modified(self):
		"""
		Returns:
		    float: The last modification time of the configuration file.
		"""
		stat = os.stat(self._configfile)
		return stat.st_mtime

	##~~ Internal getter

	def _get_value(self, path, config=None, defaults=None, merged=False, incl_defaults=True):
		path = list(path)
		if len(path) == 0:
			raise NoSuchSettingsPath()

		override = environment_overrides.get(tuple(path))
		if override is not None and self._environ.get(override):
			return self._environ.get(override)

		if config is None:
			config = self._config
		if defaults is None:
			defaults = default_settings

		while len(path) > 1:
			key = path.pop(0)
			if isinstance(config, dict) and key in config:
				config = config[key]
				defaults = defaults.get(key, dict()) if isinstance(defaults, dict) else dict()
			elif incl_defaults and isinstance(defaults, dict) and key in defaults:
				config = {}
				defaults = defaults[key]
			else:
				raise NoSuchSettingsPath()

		key = path.pop(0)
		if isinstance(config, dict) and key in config:
			value = config[key]
			if merged and isinstance(defaults, dict) and key in defaults:
				value = dict_merge(defaults[key], value)
		elif incl_defaults and isinstance(defaults, dict) and key in defaults:
			value = defaults[key]
		else:
			raise NoSuchSettingsPath()

		return copy.deepcopy(value)

	#~~ has

	def has(self, path, **kwargs):
		try:
			self._get_value(path, **kwargs)
		except NoSuchSettingsPath:
			return False
		else:
			return True

	#~~ getter

	def get(self, path, **kwargs):
		error_on_path = kwargs.pop("error_on_path", False)

		try:
			return self._get_value(path, **kwargs)
		except NoSuchSettingsPath:
			if error_on_path:
				raise
			else:
				return None

	def getInt(self, path, **kwargs):
		value = self.get(path, **kwargs)
		if value is None:
			return None

		try:
			return int(value)
		except (TypeError, ValueError):
			self._logger.warning("Could not convert %r to a valid integer when getting option %r" % (value, path))
			return None

	def getFloat(self, path, **kwargs):
		value = self.get(path, **kwargs)
		if value is None:
			return None

		try:
			return float(value)
		except (TypeError, ValueError):
			self._logger.warning("Could not convert %r to a valid float when getting option %r" % (value, path))
			return None

	def getBoolean(self, path, **kwargs):
		value = self.get(path, **kwargs)
		if value is None:
			return None
		if isinstance(value, bool):
			return value
		if isinstance(value, (int, float)):
			return value != 0
		if isinstance(value, str):
			return value.lower() in valid_boolean_trues
		return value is not None

	def getBaseFolder(self, type, create=True):
		if type == "base":
			return self._basedir

		if type not in ("logs", "store", "iterations"):
			return None

		folder = os.path.join(self._basedir, type)
		if not os.path.isdir(folder):
			if create:
				os.makedirs(folder)
			else:
				raise IOError("No such folder: {folder}".format(folder=folder))
		return folder

	#~~ remove

	def remove(self, path, config=None):
		path = list(path)
		if config is None:
			config = self._config

		while len(path) > 1:
			key = path.pop(0)
			if not isinstance(config, dict) or key not in config:
				return
			config = config[key]

		key = path.pop(0)
		if isinstance(config, dict) and key in config:
			del config[key]
			self._dirty = True

	#~~ setter

	def set(self, path, value, force=False, defaults=None, config=None):
		path = list(path)
		if len(path) == 0:
			return

		if self._mtime is not None and os.path.exists(self._configfile) and self.last_modified != self._mtime:
			self.load()

		if config is None:
			config = self._config
		if defaults is None:
			defaults = default_settings

		while len(path) > 1:
			key = path.pop(0)
			if key in config and key in defaults:
				config = config[key]
				defaults = defaults[key]
			elif key in defaults:
				config[key] = {}
				config = config[key]
				defaults = defaults[key]
			else:
				return

		key = path.pop(0)

		if not force and key in defaults and key in config and defaults[key] == value:
			del config[key]
			self._dirty = True
		elif force or (key not in config and key in defaults and defaults[key] != value) or (key in config and config[key] != value):
			if value is None and key in config:
				del config[key]
			else:
				config[key] = value
			self._dirty = True
