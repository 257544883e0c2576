# coding=utf-8
"""
Extractors compare a successful trajectory with a failed one on the same task and return the rules that made the
difference as :class:`Draft` instances. The experience bank tags the drafts with skill, application and provenance.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging
import re

from evolvecua.judge import serialize_trajectory
from evolvecua.model import ActionTypes, KnowledgeTypes
from evolvecua.policy.prompts import build_request, render
from evolvecua.util import canonical_json, json_values

from .bank import KNOWLEDGE_ORDER, MAX_RULE_LENGTH
from .exceptions import ExtractionFailed

EXTRACT_TEMPLATE = "extract.jinja2"

DOTTED_NAMES_RULE = "MCP tool names use underscores, not dots"
PRIVACY_RULE = "After open_privacy_settings, continue with GUI steps"
PRIVACY_TOOL = "open_privacy_settings"

PARTICIPLES = {
	"added": "add",
	"allowed": "allow",
	"applied": "apply",
	"blocked": "block",
	"bookmarked": "bookmark",
	"cancelled": "cancel",
	"cleared": "clear",
	"closed": "close",
	"deleted": "delete",
	"disabled": "disable",
	"enabled": "enable",
	"focused": "focus",
	"found": "find",
	"loaded": "load",
	"moved": "move",
	"opened": "open",
	"printed": "print",
	"removed": "remove",
	"reopened": "reopen",
	"saved": "save",
	"scrolled": "scroll",
	"selected": "select",
	"sorted": "sort",
	"submitted": "submit",
	"switched": "switch",
	"typed": "type",
	"unfocused": "unfocus",
	"updated": "update"
}
"""Past participles of step results and the imperative they turn into."""

_dotted_regex = re.compile(r'"name"\s*:\s*"([A-Za-z0-9_]+(?:\.[A-Za-z0-9_]+)+)"')


class Draft(collections.namedtuple("Draft", "text, knowledge_type")):
	__slots__ = ()


def effect_of(result, fallback="continue the task"):
	"""
	Turns a step result into the effect of the step.

	    >>> effect_of("Print dialog opened")
	    'open print dialog'
	    >>> effect_of("Closed tab reopened")
	    'reopen closed tab'
	    >>> effect_of("Page loaded: https://a.example/docs")
	    'load page'
	    >>> effect_of("A1 = 5", fallback="read cell")
	    'read cell'
	"""
	line = (result or "").split("\n")[0].split(":")[0].strip()
	words = line.split()
	for i in range(len(words) - 1, -1, -1):
		verb = PARTICIPLES.get(words[i].lower())
		if verb is not None:
			return " ".join([verb] + [w.lower() for w in words[:i]] + words[i + 1:])
	return fallback


def _identity(action):
	return canonical_json(action.to_dict())


def _label(step, action):
	if action.coordinates is not None and step.observation is not None:
		element = step.observation.hit_test(*action.coordinates)
		if element is not None and element.label:
			return element.label
	if action.coordinates is not None:
		return "the element at {},{}".format(*action.coordinates)
	return "the element"


def describe(step):
	"""
	Renders the rule teaching the action of ``step``.

	Returns:
	    Draft: The rule, ``None`` for steps without an action or with ``terminate``.
	"""
	action = step.action
	if action is None or action.is_terminate:
		return None

	if action.is_mcp:
		effect = effect_of(step.result, fallback=action.tool_name.replace("_", " "))
		return Draft("Call {}({}) to {}".format(action.tool_name, ", ".join(sorted(action.arguments)), effect),
		             KnowledgeTypes.TOOL_PATTERN)

	effect = effect_of(step.result)
	if action.action_type == ActionTypes.KEY_COMBO:
		return Draft("Use {} to {}".format(action.parameters["keys"], effect), KnowledgeTypes.ENVIRONMENT_KNOWLEDGE)
	elif action.action_type == ActionTypes.CLICK:
		return Draft("Click {} to {}".format(_label(step, action), effect), KnowledgeTypes.STRATEGY)
	elif action.action_type == ActionTypes.DOUBLE_CLICK:
		return Draft("Double-click {} to {}".format(_label(step, action), effect), KnowledgeTypes.STRATEGY)
	elif action.action_type == ActionTypes.TYPE_TEXT:
		return Draft("Type \"{}\" to {}".format(action.parameters["text"], effect), KnowledgeTypes.STRATEGY)
	elif action.action_type == ActionTypes.SCROLL:
		return Draft("Scroll {} to {}".format(action.parameters["direction"], effect), KnowledgeTypes.STRATEGY)
	return Draft("Take a screenshot to {}".format(effect), KnowledgeTypes.STRATEGY)


def differentiating_step(success, failure):
	"""
	Returns the first step of ``success`` whose action ``failure`` never performed, ``None`` if there is none.
	"""
	performed = set(_identity(action) for action in failure.actions())
	for step in success.steps:
		if step.action is None or step.action.is_terminate:
			continue
		if _identity(step.action) not in performed:
			return step
	return None


def modality_rule(success):
	"""
	The strategy rule of a successful trajectory without a failed counterpart, naming its modality mix.
	"""
	mcp, gui = success.modality_counts()
	tools = [action.tool_name for action in success.actions() if action.is_mcp]
	if mcp and gui:
		return Draft("Combine MCP tools such as {} with GUI actions for the remaining steps".format(tools[0]),
		             KnowledgeTypes.STRATEGY)
	elif mcp:
		return Draft("Prefer MCP tools such as {} over GUI actions".format(tools[0]), KnowledgeTypes.STRATEGY)
	elif gui:
		return Draft("Solve these tasks with GUI actions when no MCP tool fits", KnowledgeTypes.STRATEGY)
	return None


class Extractor(object):
	def rules(self, task, success, failure, skill):
		"""
		Arguments:
		    task (TaskSpec): The task both trajectories attempted.
		    success (Trajectory): The successful trajectory.
		    failure (Trajectory): A failed trajectory or ``None``.
		    skill (str): The skill category to extract for.

		Returns:
		    list: :class:`Draft` instances.

		Raises:
		    ExtractionFailed: The extractor produced unusable output.
		"""
		raise NotImplementedError()


class DeterministicExtractor(Extractor):
	"""
	Rule based extraction. The differentiating action becomes ``Use <keys> to <effect>``, ``Call <tool>(<params>) to
	<effect>``, ``Click <label> to <effect>`` or ``Type "<text>" to <effect>``. Failures calling dotted tool names add
	a naming rule, failures calling unregistered tools an ``If <tool> is unavailable`` recovery rule.
	"""

	def rules(self, task, success, failure, skill):
		result = []

		if failure is None:
			rule = modality_rule(success)
			if rule is not None:
				result.append(rule)
		else:
			main = None
			step = differentiating_step(success, failure)
			if step is not None:
				main = describe(step)
			if main is None:
				main = modality_rule(success)
			if main is not None:
				result.append(main)

			if any(_dotted_regex.search(step.raw or "") for step in failure.steps if step.action is None):
				result.append(Draft(DOTTED_NAMES_RULE, KnowledgeTypes.TOOL_PATTERN))

			if main is not None:
				for tool in self._unregistered_tools(failure):
					text = main.text[0].lower() + main.text[1:]
					result.append(Draft("If {} is unavailable, {}".format(tool, text), KnowledgeTypes.ERROR_RECOVERY))

		if self._continues_with_gui(success):
			result.append(Draft(PRIVACY_RULE, KnowledgeTypes.STRATEGY))

		return _unique(result)

	@staticmethod
	def _unregistered_tools(failure):
		result = []
		for step in failure.steps:
			if step.action is None or not step.action.is_mcp:
				continue
			if any(violation.startswith("unknown tool") for violation in step.violations or ()):
				if step.action.tool_name not in result:
					result.append(step.action.tool_name)
		return result

	@staticmethod
	def _continues_with_gui(success):
		actions = [action for action in success.actions() if action.counts_as_interaction]
		for i, action in enumerate(actions):
			if action.is_mcp and action.tool_name == PRIVACY_TOOL:
				return any(not later.is_mcp for later in actions[i + 1:])
		return False


class LlmExtractor(Extractor):
	"""
	Asks a model for the differentiating rules. The response must hold a JSON list of
	``{"text": ..., "knowledge_type": ...}`` objects, items with unknown knowledge types are skipped.
	"""

	def __init__(self, client, model=None, limit=3, max_length=MAX_RULE_LENGTH):
		self._logger = logging.getLogger(__name__)
		self._client = client
		self._model = model
		self._limit = limit
		self._max_length = max_length

	def prompt(self, task, success, failure, skill):
		return render(EXTRACT_TEMPLATE,
		              app_id=task.app_id,
		              goal=task.goal,
		              skill=skill,
		              success=serialize_trajectory(success),
		              failure=serialize_trajectory(failure) if failure is not None else None,
		              limit=self._limit,
		              max_length=self._max_length,
		              knowledge_types=list(KNOWLEDGE_ORDER))

	def rules(self, task, success, failure, skill):
		response = self._client.complete(build_request(self._model, [("user", self.prompt(task, success, failure, skill))]))

		for value in json_values(response, openers="["):
			if not isinstance(value, list):
				continue
			items = [item for item in value if isinstance(item, dict) and isinstance(item.get("text"), str)]
			if not items:
				continue

			result = []
			for item in items:
				knowledge_type = item.get("knowledge_type")
				if knowledge_type not in KnowledgeTypes.values():
					self._logger.warning("Skipping rule with unknown knowledge type {!r}".format(knowledge_type))
					continue
				result.append(Draft(item["text"], knowledge_type))
			return _unique(result)

		raise ExtractionFailed("response holds no list of rules", response=response)


def _unique(drafts):
	result = []
	for draft in drafts:
		if draft.text not in [d.text for d in result]:
			result.append(draft)
	return result
