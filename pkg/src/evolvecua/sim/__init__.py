# coding=utf-8
"""
Deterministic simulated desktop applications.

Every :func:`reset` creates an isolated :class:`EnvHandle` from an :class:`~evolvecua.model.EnvSetupScript`.
Actions are applied through :func:`apply`, final states are judged against ground truth checkers with
:func:`check`. The module level functions operate on a default :class:`Simulator` holding the bundled
applications ``mini_browser`` and ``mini_sheet``.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging

from .browser import Browser
from .checkers import Checker, OracleVerdict, describe, evaluate_predicate, validate_predicate
from .exceptions import ActionFailed, SetupError, UnknownApplication
from .sheet import Spreadsheet

__all__ = ["Simulator", "EnvHandle", "Checker", "OracleVerdict", "simulator", "reset", "apply", "check"]


class EnvHandle(object):
	"""
	One live application instance. Handles never share state, a handle is driven by a single rollout.
	"""

	def __init__(self, app, setup):
		self._app = app
		self._setup = setup
		self._closed = False

	@property
	def app_id(self):
		return self._app.APP_ID

	@property
	def setup(self):
		return self._setup

	def observe(self):
		return self._app.render()

	def tools(self):
		return self._app.tools()

	def tool_registry(self):
		return self._app.tool_registry()

	def apply(self, action):
		"""
		Applies an action.

		Returns:
		    tuple: ``(result, screen)``, the result text and the rendered state after the action.

		Raises:
		    ActionFailed: The action was rejected, the state is unchanged.
		"""
		if self._closed:
			raise ActionFailed("environment is closed")
		result = self._app.apply(action)
		return result, self._app.render()

	def check(self, checker):
		if checker.app_id != self.app_id:
			return OracleVerdict(0.0, False, (), len(checker.predicates))
		return checker.check(self._app)

	def fact(self, name):
		return self._app.fact(name)

	def snapshot(self):
		return self._app.snapshot()

	def close(self):
		self._closed = True


class Simulator(object):
	def __init__(self, applications=None):
		self._logger = logging.getLogger(__name__)
		self._applications = collections.OrderedDict()
		for app_class in (applications if applications is not None else (Browser, Spreadsheet)):
			self.register(app_class)

	def register(self, app_class):
		self._applications[app_class.APP_ID] = app_class

	def apps(self):
		return list(self._applications.keys())

	def app_class(self, app_id):
		app_class = self._applications.get(app_id)
		if app_class is None:
			raise UnknownApplication(app_id)
		return app_class

	def tools(self, app_id):
		return self.app_class(app_id).tools()

	def tool_registry(self, app_id):
		return self.app_class(app_id).tool_registry()

	def reset(self, setup):
		"""
		Creates a fresh environment from a setup script and verifies its expected predicates.

		Arguments:
		    setup (EnvSetupScript): The setup script.

		Returns:
		    EnvHandle: The isolated environment.

		Raises:
		    UnknownApplication: The script targets an unregistered application.
		    SetupError: Unknown fields, contradictory state or an expected predicate that does not hold.
		"""
		app = self.app_class(setup.app_id)(setup.state)

		for predicate in setup.expected:
			try:
				validate_predicate(predicate)
			except ValueError as error:
				raise SetupError("invalid expected predicate: {}".format(error), app_id=setup.app_id)
			if not evaluate_predicate(app, predicate):
				raise SetupError("predicate unsatisfied: {}".format(describe(predicate)), app_id=setup.app_id)

		return EnvHandle(app, setup)


_simulator = None


def simulator():
	global _simulator
	if _simulator is None:
		_simulator = Simulator()
	return _simulator


def reset(setup):
	return simulator().reset(setup)


def apply(env, action):
	return env.apply(action)


def check(env, checker):
	return env.check(checker)
