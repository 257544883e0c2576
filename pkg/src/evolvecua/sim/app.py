# coding=utf-8
"""
Base class of the simulated applications.

An application is a small deterministic state machine. It is constructed from the ``state`` part of an
:class:`~evolvecua.model.EnvSetupScript`, renders itself as a :class:`~evolvecua.model.ScreenState`, exposes a
registry of MCP tools and answers fact queries for checkers. Subclasses implement:

  * ``_setup(state)``: applies the declarative initial state, raising :class:`SetupError` on unknown fields or
    contradictions
  * ``_elements()``: the rendered element list, bottom to top
  * ``on_click``, ``on_type``, ``on_key``, ``on_scroll``: GUI handlers returning the result text
  * ``tool_<name>`` methods for every registered tool
  * ``_fact(name)`` and ``snapshot()``
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import copy
import logging

from evolvecua.model import ActionTypes, Element, ScreenState, ToolSchema
from evolvecua.model.codec import validate_arguments

from .exceptions import ActionFailed, SetupError, UnknownFact

_modifier_aliases = {
	"ctrl": "Ctrl",
	"control": "Ctrl",
	"ctl": "Ctrl",
	"alt": "Alt",
	"option": "Alt",
	"shift": "Shift",
	"meta": "Meta",
	"cmd": "Meta",
	"command": "Meta"
}
_modifier_order = ["Ctrl", "Alt", "Shift", "Meta"]

_named_keys = {
	"escape": "Escape",
	"esc": "Escape",
	"enter": "Enter",
	"return": "Enter",
	"tab": "Tab",
	"delete": "Delete",
	"del": "Delete",
	"backspace": "Backspace",
	"home": "Home",
	"end": "End",
	"pageup": "PageUp",
	"pagedown": "PageDown",
	"up": "Up",
	"down": "Down",
	"left": "Left",
	"right": "Right",
	"space": "Space"
}


def normalize_keys(keys):
	"""
	Normalizes a key chord to its canonical spelling.

	    >>> normalize_keys("shift+ctrl+t")
	    'Ctrl+Shift+T'
	    >>> normalize_keys("control + pagedown")
	    'Ctrl+PageDown'
	"""
	parts = [part.strip() for part in keys.split("+") if part.strip()]
	modifiers = set()
	key = None
	for part in parts:
		lower = part.lower()
		if lower in _modifier_aliases:
			modifiers.add(_modifier_aliases[lower])
		elif lower in _named_keys:
			key = _named_keys[lower]
		elif len(part) == 1:
			key = part.upper()
		else:
			key = part[0].upper() + part[1:]
	ordered = [m for m in _modifier_order if m in modifiers]
	if key is not None:
		ordered.append(key)
	return "+".join(ordered)


def element(element_id, role, label, bounds, *flags):
	return Element(element_id, role, label, tuple(bounds), tuple(f for f in flags if f))


class AppModel(object):
	APP_ID = None
	WIDTH = 1280
	HEIGHT = 800

	TOOL_DEFINITIONS = ()
	"""Tuples ``(name, description, [parameter dicts])``, turned into :class:`ToolSchema` instances."""

	SETUP_FIELDS = ()
	FACTS = ("answer",)

	_tool_cache = None

	def __init__(self, state=None):
		self._logger = logging.getLogger(__name__)
		self._answer = None
		self._setup(copy.deepcopy(state) if state else dict())

	@classmethod
	def tools(cls):
		"""
		Returns:
		    list: The :class:`~evolvecua.model.ToolSchema` of every MCP tool of the application, in registration order.
		"""
		if cls.__dict__.get("_tool_cache") is None:
			cls._tool_cache = [ToolSchema.create(name, description, parameters, cls.APP_ID)
			                   for name, description, parameters in cls.TOOL_DEFINITIONS]
		return list(cls._tool_cache)

	@classmethod
	def tool_registry(cls):
		return dict((schema.tool_name, schema) for schema in cls.tools())

	#~~ rendering

	def render(self):
		return ScreenState.create(self.APP_ID, self._elements(), focus=self._focus())

	def _elements(self):
		return []

	def _focus(self):
		return None

	#~~ actions

	def apply(self, action):
		"""
		Applies one action.

		Arguments:
		    action (Action): The action to apply.

		Returns:
		    str: Text describing the effect.

		Raises:
		    ActionFailed: The action could not be applied, the state is unchanged.
		"""
		if action.is_mcp:
			return self._call_tool(action)

		if action.action_type in (ActionTypes.CLICK, ActionTypes.DOUBLE_CLICK):
			x, y = action.coordinates
			if not (0 <= x < self.WIDTH and 0 <= y < self.HEIGHT):
				raise ActionFailed("coordinates {},{} are outside the screen".format(x, y))
			target = self.render().hit_test(x, y)
			if target is None:
				raise ActionFailed("no element at location {},{}".format(x, y))
			return self.on_click(target, double=action.action_type == ActionTypes.DOUBLE_CLICK)
		elif action.action_type == ActionTypes.TYPE_TEXT:
			return self.on_type(action.parameters["text"])
		elif action.action_type == ActionTypes.KEY_COMBO:
			return self.on_key(normalize_keys(action.parameters["keys"]))
		elif action.action_type == ActionTypes.SCROLL:
			return self.on_scroll(action.parameters["direction"])
		elif action.action_type == ActionTypes.SCREENSHOT:
			return "Screenshot taken"
		elif action.action_type == ActionTypes.TERMINATE:
			self._answer = action.parameters.get("answer")
			return "Task marked as {}".format(action.parameters["status"])

		raise ActionFailed("unsupported action {}".format(action.action_type))

	def _call_tool(self, action):
		schema = self.tool_registry().get(action.tool_name)
		if schema is None:
			raise ActionFailed("unknown tool {}".format(action.tool_name))

		violations = validate_arguments(action, schema)
		if violations:
			raise ActionFailed("bad arguments for {}: {}".format(action.tool_name, "; ".join(violations)))

		handler = getattr(self, "tool_" + action.tool_name)
		return handler(**action.arguments)

	def on_click(self, target, double=False):
		raise ActionFailed("{} is not clickable".format(target.label))

	def on_type(self, text):
		raise ActionFailed("no focused text field")

	def on_key(self, keys):
		raise ActionFailed("unsupported key combination {}".format(keys))

	def on_scroll(self, direction):
		return "Scrolled {}".format(direction)

	#~~ facts

	def fact(self, name):
		"""
		Returns the current value of a named fact about the application state, e.g. ``print_dialog_open``.

		Raises:
		    UnknownFact: The application has no such fact.
		"""
		if name == "answer":
			return self._answer
		try:
			return self._fact(name)
		except KeyError:
			raise UnknownFact(self.APP_ID, name)

	def _fact(self, name):
		raise KeyError(name)

	def snapshot(self):
		return dict(answer=self._answer)

	#~~ helpers

	def _reject_unknown_fields(self, state, known):
		unknown = sorted(set(state.keys()) - set(known))
		if unknown:
			raise SetupError("unknown field {}".format(", ".join(unknown)), app_id=self.APP_ID)
