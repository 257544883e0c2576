# coding=utf-8
"""
Shared domain types of EvolveCUA.

All types are immutable value objects (named tuples) and serialize to plain JSON compatible dictionaries through
``to_dict`` and back through ``from_dict``. The field names of those dictionaries are stable, they are what ends up
in the trajectory store, the task library and every report inside a run directory.

.. autoclass:: Action
   :members:

.. autoclass:: Element

.. autoclass:: ScreenState
   :members:

.. autoclass:: Step

.. autoclass:: Trajectory
   :members:

.. autoclass:: JudgeVerdict

.. autoclass:: EnvSetupScript

.. autoclass:: TaskSpec
   :members:

.. autoclass:: ToolSchema
   :members:
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import copy
import re

from .exceptions import InvalidAction, InvalidTaskSpec

TOOL_NAME_PATTERN = re.compile(r"^[a-z0-9_]+$")

# reserved tool name under which all GUI actions travel through the tool call codec
GUI_TOOL_NAME = "computer"


class ConstantSet(object):
	@classmethod
	def values(cls):
		return [getattr(cls, name) for name in cls.__dict__ if name.isupper()]


class Modalities(ConstantSet):
	MCP = "mcp"
	GUI = "gui"


class ActionTypes(ConstantSet):
	CLICK = "click"
	DOUBLE_CLICK = "double_click"
	TYPE_TEXT = "type_text"
	KEY_COMBO = "key_combo"
	SCROLL = "scroll"
	SCREENSHOT = "screenshot"
	TERMINATE = "terminate"


class SkillCategories(ConstantSet):
	DATA_RETRIEVAL = "data_retrieval"
	DATA_MANIPULATION = "data_manipulation"
	SEARCH_QUERY = "search_query"
	EXECUTION_AUTOMATION = "execution_automation"
	NAVIGATION_BROWSING = "navigation_browsing"
	CONFIGURATION_SETTINGS = "configuration_settings"


class Difficulties(ConstantSet):
	EASY = "easy"
	MEDIUM = "medium"
	HARD = "hard"


class KnowledgeTypes(ConstantSet):
	STRATEGY = "strategy"
	ENVIRONMENT_KNOWLEDGE = "environment_knowledge"
	TOOL_PATTERN = "tool_pattern"
	ERROR_RECOVERY = "error_recovery"


class TerminationReasons(ConstantSet):
	COMPLETION = "completion"
	STEP_CAP = "step_cap"
	ERROR = "error"


class StepStatus(ConstantSet):
	OK = "ok"
	FAILED = "failed"
	FORMAT_ERROR = "format_error"


class TaskOrigins(ConstantSet):
	SEED = "seed"
	GAP_GENERATED = "gap_generated"


class VerdictSources(ConstantSet):
	ORACLE = "oracle"
	LLM = "llm"


class TerminateStatus(ConstantSet):
	SUCCESS = "success"
	FAILURE = "failure"


_GUI_RESERVED_KEYS = ("action", "coordinate")


##~~ Actions


class Action(collections.namedtuple("Action", "modality, tool_name, arguments, action_type, coordinates, parameters")):
	"""
	A single hybrid action, either a structured MCP tool call or a GUI input event.

	Use :meth:`mcp` and :meth:`gui` to construct instances, both validate the action invariants and raise
	:class:`~evolvecua.model.exceptions.InvalidAction` on violation.

	Arguments:
	    modality (str): One of :class:`Modalities`.
	    tool_name (str): Name of the MCP tool, ``None`` for GUI actions.
	    arguments (dict): Arguments of the MCP tool call, ``None`` for GUI actions.
	    action_type (str): One of :class:`ActionTypes`, ``None`` for MCP actions.
	    coordinates (tuple): Optional integer ``(x, y)`` pixel pair of GUI actions.
	    parameters (dict): Further parameters of GUI actions, e.g. ``text`` or ``keys``.
	"""

	__slots__ = ()

	@classmethod
	def mcp(cls, tool_name, arguments=None):
		if not isinstance(tool_name, str) or not TOOL_NAME_PATTERN.match(tool_name):
			raise InvalidAction("tool name {!r} does not match [a-z0-9_]+".format(tool_name))
		if tool_name == GUI_TOOL_NAME:
			raise InvalidAction("tool name {} is reserved for GUI actions".format(GUI_TOOL_NAME))
		if arguments is None:
			arguments = dict()
		if not isinstance(arguments, dict):
			raise InvalidAction("arguments must be a JSON object")
		return cls(Modalities.MCP, tool_name, copy.deepcopy(arguments), None, None, None)

	@classmethod
	def gui(cls, action_type, coordinates=None, **parameters):
		return cls.gui_from_parameters(action_type, coordinates, parameters)

	@classmethod
	def gui_from_parameters(cls, action_type, coordinates, parameters):
		if action_type not in ActionTypes.values():
			raise InvalidAction("unknown GUI action type {!r}".format(action_type))

		if coordinates is not None:
			if not isinstance(coordinates, (list, tuple)) or len(coordinates) != 2 \
					or not all(isinstance(c, int) and not isinstance(c, bool) for c in coordinates):
				raise InvalidAction("coordinates must be an integer pixel pair")
			coordinates = (coordinates[0], coordinates[1])

		for key in _GUI_RESERVED_KEYS:
			if key in parameters:
				raise InvalidAction("parameter name {} is reserved".format(key))

		if action_type in (ActionTypes.CLICK, ActionTypes.DOUBLE_CLICK) and coordinates is None:
			raise InvalidAction("{} requires coordinates".format(action_type))
		elif action_type == ActionTypes.KEY_COMBO:
			keys = parameters.get("keys")
			if not isinstance(keys, str) or not keys.strip():
				raise InvalidAction("key_combo requires a non-empty chord string")
		elif action_type == ActionTypes.TYPE_TEXT:
			if not isinstance(parameters.get("text"), str):
				raise InvalidAction("type_text requires a text parameter")
		elif action_type == ActionTypes.SCROLL:
			if parameters.get("direction") not in ("up", "down"):
				raise InvalidAction("scroll requires a direction of up or down")
		elif action_type == ActionTypes.TERMINATE:
			if parameters.get("status") not in TerminateStatus.values():
				raise InvalidAction("terminate requires a status of success or failure")

		return cls(Modalities.GUI, None, None, action_type, coordinates, copy.deepcopy(parameters))

	@classmethod
	def terminate(cls, success=True, answer=None):
		parameters = dict(status=TerminateStatus.SUCCESS if success else TerminateStatus.FAILURE)
		if answer is not None:
			parameters["answer"] = answer
		return cls.gui(ActionTypes.TERMINATE, **parameters)

	@classmethod
	def from_payload(cls, payload):
		"""
		Creates an action from a tool call payload ``{"name": ..., "arguments": {...}}``.

		Raises:
		    InvalidAction: The payload does not describe a valid action.
		"""
		if not isinstance(payload, dict):
			raise InvalidAction("tool call must be a JSON object")
		name = payload.get("name")
		arguments = payload.get("arguments", dict())
		if not isinstance(name, str) or not name:
			raise InvalidAction("tool call is missing a name")
		if not isinstance(arguments, dict):
			raise InvalidAction("tool call arguments must be a JSON object")

		if name == GUI_TOOL_NAME:
			arguments = dict(arguments)
			action_type = arguments.pop("action", None)
			coordinates = arguments.pop("coordinate", None)
			return cls.gui_from_parameters(action_type, coordinates, arguments)
		return cls.mcp(name, arguments)

	def as_payload(self):
		"""
		Returns:
		    collections.OrderedDict: The tool call payload of this action, keys in canonical order.
		"""
		if self.is_mcp:
			return collections.OrderedDict([
				("name", self.tool_name),
				("arguments", _sorted_dict(self.arguments))
			])

		arguments = collections.OrderedDict()
		arguments["action"] = self.action_type
		if self.coordinates is not None:
			arguments["coordinate"] = [self.coordinates[0], self.coordinates[1]]
		for key in sorted(self.parameters):
			arguments[key] = _sorted_value(self.parameters[key])
		return collections.OrderedDict([("name", GUI_TOOL_NAME), ("arguments", arguments)])

	def to_dict(self):
		return _plain(self.as_payload())

	@classmethod
	def from_dict(cls, data):
		return cls.from_payload(data)

	@property
	def is_mcp(self):
		return self.modality == Modalities.MCP

	@property
	def is_gui(self):
		return self.modality == Modalities.GUI

	@property
	def is_terminate(self):
		return self.modality == Modalities.GUI and self.action_type == ActionTypes.TERMINATE

	@property
	def counts_as_interaction(self):
		return not self.is_terminate

	@property
	def key(self):
		"""
		A short, argument free identity of the action, e.g. ``tool:bookmark_page`` or ``key:Ctrl+P``.
		"""
		if self.is_mcp:
			return "tool:" + self.tool_name
		if self.action_type == ActionTypes.KEY_COMBO:
			return "key:" + self.parameters["keys"]
		return self.action_type

	def __str__(self):
		if self.is_mcp:
			return "{}({})".format(self.tool_name, ", ".join("{}={!r}".format(k, self.arguments[k]) for k in sorted(self.arguments)))
		parts = []
		if self.coordinates is not None:
			parts.append("at {},{}".format(*self.coordinates))
		parts.extend("{}={!r}".format(k, self.parameters[k]) for k in sorted(self.parameters))
		return "{}[{}]".format(self.action_type, " ".join(parts))


def _sorted_value(value):
	if isinstance(value, dict):
		return _sorted_dict(value)
	if isinstance(value, (list, tuple)):
		return [_sorted_value(v) for v in value]
	return value


def _sorted_dict(d):
	result = collections.OrderedDict()
	for key in sorted(d):
		result[key] = _sorted_value(d[key])
	return result


def _plain(value):
	if isinstance(value, dict):
		return dict((k, _plain(v)) for k, v in value.items())
	if isinstance(value, (list, tuple)):
		return [_plain(v) for v in value]
	return value


##~~ Screen states


class Element(collections.namedtuple("Element", "element_id, role, label, bounds, flags")):
	"""
	One element of a rendered screen.

	Arguments:
	    element_id (str): Identifier, unique within one :class:`ScreenState`.
	    role (str): Accessibility role, e.g. ``button`` or ``cell``.
	    label (str): Visible label.
	    bounds (tuple): Integer rectangle ``(x, y, width, height)``.
	    flags (tuple): State flags like ``selected`` or ``checked``.
	"""

	__slots__ = ()

	def contains(self, x, y):
		left, top, width, height = self.bounds
		return left <= x < left + width and top <= y < top + height

	@property
	def center(self):
		left, top, width, height = self.bounds
		return left + width // 2, top + height // 2

	def to_dict(self):
		return dict(id=self.element_id, role=self.role, label=self.label, bounds=list(self.bounds), flags=list(self.flags))

	@classmethod
	def from_dict(cls, data):
		return cls(data["id"], data["role"], data["label"], tuple(data["bounds"]), tuple(data.get("flags", [])))


class ScreenState(collections.namedtuple("ScreenState", "app_id, elements, focus, raw_ref")):
	"""
	Structured stand-in for a screenshot: the element tree of one rendered application state.

	Elements are listed bottom to top, hit testing therefore walks them in reverse.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, app_id, elements, focus=None, raw_ref=None):
		elements = tuple(elements)
		seen = set()
		for element in elements:
			if element.element_id in seen:
				raise ValueError("Duplicate element id {}".format(element.element_id))
			seen.add(element.element_id)
			if any(v < 0 for v in element.bounds):
				raise ValueError("Element {} has negative bounds".format(element.element_id))
		if focus is not None and focus not in seen:
			focus = None
		return cls(app_id, elements, focus, raw_ref)

	def element(self, element_id):
		for element in self.elements:
			if element.element_id == element_id:
				return element
		return None

	def find_by_label(self, label):
		for element in reversed(self.elements):
			if element.label == label:
				return element
		return None

	def hit_test(self, x, y):
		for element in reversed(self.elements):
			if element.contains(x, y):
				return element
		return None

	def render(self):
		"""
		Returns:
		    str: A deterministic, line based text rendering used in prompts and exported samples.
		"""
		lines = ["Application: {}".format(self.app_id)]
		if self.focus:
			lines.append("Focus: {}".format(self.focus))
		for element in self.elements:
			line = "[{id}] {role} \"{label}\" @({x},{y},{w},{h})".format(id=element.element_id,
			                                                           role=element.role,
			                                                           label=element.label,
			                                                           x=element.bounds[0],
			                                                           y=element.bounds[1],
			                                                           w=element.bounds[2],
			                                                           h=element.bounds[3])
			if element.flags:
				line += " " + ",".join(element.flags)
			lines.append(line)
		return "\n".join(lines)

	def to_dict(self):
		return dict(app_id=self.app_id,
		            elements=[e.to_dict() for e in self.elements],
		            focus=self.focus,
		            raw_ref=self.raw_ref)

	@classmethod
	def from_dict(cls, data):
		if data is None:
			return None
		return cls.create(data["app_id"],
		                  [Element.from_dict(e) for e in data.get("elements", [])],
		                  focus=data.get("focus"),
		                  raw_ref=data.get("raw_ref"))


##~~ Trajectories


class Step(collections.namedtuple("Step", "observation, reasoning, action, result, status, raw, format_error, violations")):
	"""
	One executed step of a trajectory.

	Arguments:
	    observation (ScreenState): Screen before the action.
	    reasoning (str): Free text reasoning of the policy, may be empty.
	    action (Action): The decoded action, ``None`` if the emitted text could not be decoded.
	    result (str): Observation text recorded after applying the action.
	    status (str): One of :class:`StepStatus`.
	    raw (str): The text the policy emitted.
	    format_error (str): Decoding stage that failed, if any.
	    violations (tuple): Schema violations of an MCP call, empty if the call was valid.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, observation, reasoning, action, result, status=StepStatus.OK, raw=None, format_error=None, violations=None):
		return cls(observation, reasoning or "", action, result, status, raw, format_error, tuple(violations or ()))

	def to_dict(self):
		return dict(observation=self.observation.to_dict() if self.observation is not None else None,
		            reasoning=self.reasoning,
		            action=self.action.to_dict() if self.action is not None else None,
		            result=self.result,
		            status=self.status,
		            raw=self.raw,
		            format_error=self.format_error,
		            violations=list(self.violations))

	@classmethod
	def from_dict(cls, data):
		action = data.get("action")
		return cls.create(ScreenState.from_dict(data.get("observation")),
		                  data.get("reasoning", ""),
		                  Action.from_dict(action) if action is not None else None,
		                  data.get("result", ""),
		                  status=data.get("status", StepStatus.OK),
		                  raw=data.get("raw"),
		                  format_error=data.get("format_error"),
		                  violations=data.get("violations"))


class JudgeVerdict(collections.namedtuple("JudgeVerdict", "score, success, mcp_actions, gui_actions, reasoning, source")):
	"""
	Verdict over one trajectory. ``success`` is reported independently of ``score``, there is no derived threshold.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, score, success, mcp_actions=0, gui_actions=0, reasoning="", source=VerdictSources.ORACLE):
		if not 0.0 <= score <= 1.0:
			raise ValueError("score must lie within [0, 1], got {!r}".format(score))
		if mcp_actions < 0 or gui_actions < 0:
			raise ValueError("action counts must not be negative")
		return cls(float(score), bool(success), int(mcp_actions), int(gui_actions), reasoning or "", source)

	def to_dict(self):
		return dict(score=self.score,
		            success=self.success,
		            mcp_actions=self.mcp_actions,
		            gui_actions=self.gui_actions,
		            reasoning=self.reasoning,
		            source=self.source)

	@classmethod
	def from_dict(cls, data):
		if data is None:
			return None
		return cls.create(data["score"], data["success"],
		                  mcp_actions=data.get("mcp_actions", 0),
		                  gui_actions=data.get("gui_actions", 0),
		                  reasoning=data.get("reasoning", ""),
		                  source=data.get("source", VerdictSources.ORACLE))


class Trajectory(collections.namedtuple("Trajectory", "task_id, app_id, steps, terminated_by, judge_verdict, attempt_index, policy_id, iteration")):
	"""
	The ordered record of one task attempt.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, task_id, app_id, steps, terminated_by, judge_verdict=None, attempt_index=0, policy_id=None, iteration=0):
		trajectory = cls(task_id, app_id, tuple(steps), terminated_by, judge_verdict, attempt_index, policy_id, iteration)
		trajectory.check_invariants()
		return trajectory

	def check_invariants(self):
		if self.terminated_by not in TerminationReasons.values():
			raise ValueError("Unknown termination reason {!r}".format(self.terminated_by))
		if not self.steps and self.terminated_by != TerminationReasons.ERROR:
			raise ValueError("Trajectory of {} has no steps".format(self.task_id))
		terminates = [i for i, step in enumerate(self.steps) if step.action is not None and step.action.is_terminate]
		if len(terminates) > 1:
			raise ValueError("Trajectory of {} terminates more than once".format(self.task_id))
		if terminates and terminates[0] != len(self.steps) - 1:
			raise ValueError("Terminate action of {} is not the last step".format(self.task_id))

	def with_verdict(self, verdict):
		return self._replace(judge_verdict=verdict)

	@property
	def trajectory_id(self):
		return "{task}:{policy}:{iteration}:{attempt}".format(task=self.task_id,
		                                                      policy=self.policy_id,
		                                                      iteration=self.iteration,
		                                                      attempt=self.attempt_index)

	@property
	def score(self):
		return self.judge_verdict.score if self.judge_verdict is not None else 0.0

	@property
	def success(self):
		return self.judge_verdict is not None and self.judge_verdict.success

	@property
	def step_count(self):
		return len(self.steps)

	def actions(self):
		return [step.action for step in self.steps if step.action is not None]

	def modality_counts(self):
		"""
		Returns:
		    tuple: ``(mcp, gui)`` counts of decoded interaction actions, ``terminate`` is not counted.
		"""
		mcp = gui = 0
		for action in self.actions():
			if not action.counts_as_interaction:
				continue
			if action.is_mcp:
				mcp += 1
			else:
				gui += 1
		return mcp, gui

	def to_dict(self):
		return dict(task_id=self.task_id,
		            app_id=self.app_id,
		            steps=[step.to_dict() for step in self.steps],
		            terminated_by=self.terminated_by,
		            judge_verdict=self.judge_verdict.to_dict() if self.judge_verdict is not None else None,
		            attempt_index=self.attempt_index,
		            policy_id=self.policy_id,
		            iteration=self.iteration)

	@classmethod
	def from_dict(cls, data):
		return cls.create(data["task_id"],
		                  data.get("app_id"),
		                  [Step.from_dict(s) for s in data.get("steps", [])],
		                  data["terminated_by"],
		                  judge_verdict=JudgeVerdict.from_dict(data.get("judge_verdict")),
		                  attempt_index=data.get("attempt_index", 0),
		                  policy_id=data.get("policy_id"),
		                  iteration=data.get("iteration", 0))


##~~ Tasks


class EnvSetupScript(collections.namedtuple("EnvSetupScript", "app_id, state, expected")):
	"""
	Declarative initial state of an application plus the predicates that must hold right after applying it.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, app_id, state=None, expected=None):
		return cls(app_id, copy.deepcopy(state or dict()), tuple(copy.deepcopy(expected or [])))

	def to_dict(self):
		return dict(app_id=self.app_id, state=copy.deepcopy(self.state), expected=copy.deepcopy(list(self.expected)))

	@classmethod
	def from_dict(cls, data):
		return cls.create(data["app_id"], state=data.get("state"), expected=data.get("expected"))


class TaskSpec(collections.namedtuple("TaskSpec", "task_id, goal, app_id, difficulty, skills, initial_state, checker_id, origin")):
	"""
	One task: goal, application, difficulty, skill tags, initial state recipe and the checker deciding success.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, task_id, goal, app_id, difficulty, skills, initial_state, checker_id, origin=TaskOrigins.SEED):
		if not task_id:
			raise InvalidTaskSpec(task_id, "missing task id")
		if difficulty not in Difficulties.values():
			raise InvalidTaskSpec(task_id, "unknown difficulty {!r}".format(difficulty))
		skills = tuple(skills or ())
		if not skills:
			raise InvalidTaskSpec(task_id, "at least one skill category is required")
		unknown = [s for s in skills if s not in SkillCategories.values()]
		if unknown:
			raise InvalidTaskSpec(task_id, "unknown skill categories {}".format(", ".join(unknown)))
		if origin not in TaskOrigins.values():
			raise InvalidTaskSpec(task_id, "unknown origin {!r}".format(origin))
		if initial_state is not None and initial_state.app_id != app_id:
			raise InvalidTaskSpec(task_id, "setup targets {} instead of {}".format(initial_state.app_id, app_id))
		return cls(task_id, goal, app_id, difficulty, skills, initial_state, checker_id, origin)

	def to_dict(self):
		return dict(task_id=self.task_id,
		            goal=self.goal,
		            app_id=self.app_id,
		            difficulty=self.difficulty,
		            skills=list(self.skills),
		            setup=self.initial_state.to_dict() if self.initial_state is not None else None,
		            checker_id=self.checker_id,
		            origin=self.origin)

	@classmethod
	def from_dict(cls, data):
		setup = data.get("setup")
		return cls.create(data.get("task_id"),
		                  data.get("goal"),
		                  data.get("app_id"),
		                  data.get("difficulty"),
		                  data.get("skills"),
		                  EnvSetupScript.from_dict(setup) if setup is not None else None,
		                  data.get("checker_id"),
		                  origin=data.get("origin", TaskOrigins.SEED))


class ParameterSpec(collections.namedtuple("ParameterSpec", "name, type, required, description")):
	__slots__ = ()


class ToolSchema(collections.namedtuple("ToolSchema", "tool_name, description, parameters, app_id")):
	"""
	Description of one MCP tool of an application.

	Arguments:
	    tool_name (str): Name of the tool.
	    description (str): Human readable description, part of every system prompt.
	    parameters (tuple): Tuple of :class:`ParameterSpec`, names are unique.
	    app_id (str): Application the tool belongs to.
	"""

	__slots__ = ()

	TYPES = ("string", "integer", "number", "boolean", "object", "array", "any")

	@classmethod
	def create(cls, tool_name, description, parameters, app_id):
		specs = []
		seen = set()
		for p in parameters:
			if not isinstance(p, ParameterSpec):
				p = ParameterSpec(p["name"], p.get("type", "any"), bool(p.get("required", False)), p.get("description", ""))
			if p.name in seen:
				raise ValueError("Duplicate parameter {} in schema of {}".format(p.name, tool_name))
			if p.type not in cls.TYPES:
				raise ValueError("Unknown parameter type {} in schema of {}".format(p.type, tool_name))
			seen.add(p.name)
			specs.append(p)
		return cls(tool_name, description, tuple(specs), app_id)

	def parameter(self, name):
		for p in self.parameters:
			if p.name == name:
				return p
		return None

	def signature(self):
		"""
		    >>> ToolSchema.create("bookmark_page", "", [dict(name="url", type="string", required=True)], "mini_browser").signature()
		    'bookmark_page(url)'
		"""
		return "{}({})".format(self.tool_name, ", ".join(p.name if p.required else p.name + "?" for p in self.parameters))

	def to_dict(self):
		return dict(name=self.tool_name,
		            description=self.description,
		            app_id=self.app_id,
		            parameters=[dict(name=p.name, type=p.type, required=p.required, description=p.description) for p in self.parameters])
