# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging

from evolvecua.model import Action, EnvSetupScript, TaskOrigins, TaskSpec
from evolvecua.model.exceptions import InvalidAction, InvalidTaskSpec
from evolvecua.policy.prompts import build_request, render
from evolvecua.sim.checkers import Checker
from evolvecua.util import json_values

from .exceptions import GenerationFailed
from .templates import templates

GENERATE_TEMPLATE = "generate.jinja2"


class GenerationRequest(collections.namedtuple("GenerationRequest", "request_id, app_id, skill, difficulty, emphasis, "
                                                                    "preferred_tools, index, attempt")):
	"""
	One task to generate.

	Arguments:
	    request_id (str): Id of the task to create, e.g. ``gen-2-007``.
	    app_id (str): Target application.
	    skill (str): Target skill category.
	    difficulty (str): Target difficulty.
	    emphasis (str): Preferred modality of the solution, ``mcp`` or ``gui``.
	    preferred_tools (tuple): Tools the solution should call, the underused tools of the application.
	    index (int): Position of the request within its plan.
	    attempt (int): Zero based generation attempt, raised on every revision.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, request_id, app_id, skill, difficulty, emphasis, preferred_tools=(), index=0):
		return cls(request_id, app_id, skill, difficulty, emphasis, tuple(preferred_tools), index, 0)

	@property
	def checker_id(self):
		return "chk-" + self.request_id


class GeneratedTask(collections.namedtuple("GeneratedTask", "task, checker, solution")):
	__slots__ = ()

	@property
	def task_id(self):
		return self.task.task_id

	@property
	def tools(self):
		return set(action.tool_name for action in self.solution if action.is_mcp)

	def to_dict(self):
		result = self.task.to_dict()
		result["solution"] = [action.to_dict() for action in self.solution]
		result["checker"] = self.checker.to_dict()
		return result


def build_task(request, goal, state, expected, predicates, solution, difficulty=None, skills=None):
	"""
	Assembles a generated task from its parts.

	Raises:
	    GenerationFailed: Any part is invalid.
	"""
	try:
		setup = EnvSetupScript.create(request.app_id, state=state, expected=expected)
		task = TaskSpec.create(request.request_id,
		                       goal,
		                       request.app_id,
		                       difficulty or request.difficulty,
		                       skills or [request.skill],
		                       setup,
		                       request.checker_id,
		                       origin=TaskOrigins.GAP_GENERATED)
		checker = Checker.create(request.checker_id, request.app_id, predicates)
		actions = tuple(Action.from_payload(payload) for payload in solution or ())
	except InvalidTaskSpec as error:
		raise GenerationFailed(request.request_id, error.reason)
	except InvalidAction as error:
		raise GenerationFailed(request.request_id, "invalid solution step: {}".format(error.reason))
	except (ValueError, TypeError, AttributeError) as error:
		raise GenerationFailed(request.request_id, str(error))
	return GeneratedTask(task, checker, actions)


class TaskGenerator(object):
	def generate(self, request, feedback=None):
		"""
		Arguments:
		    request (GenerationRequest): What to generate.
		    feedback (str): Validation error of the previous attempt, if any.

		Returns:
		    GeneratedTask: The task.

		Raises:
		    GenerationFailed: No task could be generated.
		"""
		raise NotImplementedError()


class TemplateGenerator(TaskGenerator):
	"""
	Instantiates the bundled task templates. Templates calling a preferred tool win, then templates matching skill,
	difficulty and emphasis of the request, in that order. Ties rotate with the request index.
	"""

	def __init__(self):
		self._logger = logging.getLogger(__name__)

	def select(self, request):
		candidates = templates(request.app_id)
		if not candidates:
			raise GenerationFailed(request.request_id, "no templates for {}".format(request.app_id))

		if request.preferred_tools:
			preferred = set(request.preferred_tools)
			calling = [t for t in candidates if preferred & set(t.tools)]
			if calling:
				candidates = calling

		def score(t):
			return 4 * (t.skill == request.skill) + 2 * (t.difficulty == request.difficulty) + (t.emphasis == request.emphasis)

		best = max(score(t) for t in candidates)
		top = [t for t in candidates if score(t) == best]
		return top[request.index % len(top)], request.index // len(top)

	def generate(self, request, feedback=None):
		template, cycle = self.select(request)
		draft = template.draft(cycle + request.attempt)
		self._logger.debug("Generating {} from template {}".format(request.request_id, template.name))
		return build_task(request, draft.goal, draft.state, draft.expected, draft.checker, draft.solution,
		                  difficulty=template.difficulty, skills=template.skills)


class LlmGenerator(TaskGenerator):
	"""
	Asks a model for a task. The response must hold one JSON object with ``goal``, ``setup``, ``checker`` and
	``solution``, optional ``difficulty`` and ``skills`` override the labels of the request.
	"""

	def __init__(self, client, model=None, simulator=None):
		self._logger = logging.getLogger(__name__)
		self._client = client
		self._model = model
		self._simulator = simulator

	def _sim(self):
		if self._simulator is None:
			from evolvecua.sim import simulator
			self._simulator = simulator()
		return self._simulator

	def prompt(self, request, feedback=None):
		app_class = self._sim().app_class(request.app_id)
		return render(GENERATE_TEMPLATE,
		              app_id=request.app_id,
		              skill=request.skill,
		              difficulty=request.difficulty,
		              emphasis=request.emphasis,
		              underused=list(request.preferred_tools),
		              tools=app_class.tools(),
		              facts=list(app_class.FACTS),
		              fields=list(app_class.SETUP_FIELDS),
		              feedback=feedback)

	def generate(self, request, feedback=None):
		response = self._client.complete(build_request(self._model, [("user", self.prompt(request, feedback=feedback))]))

		data = None
		for value in json_values(response, openers="{"):
			if isinstance(value, dict) and "goal" in value:
				data = value
				break
		if data is None:
			raise GenerationFailed(request.request_id, "response holds no task object")

		missing = [key for key in ("goal", "setup", "checker", "solution") if key not in data]
		if missing:
			raise GenerationFailed(request.request_id, "response is missing {}".format(", ".join(missing)))

		setup = data["setup"] if isinstance(data["setup"], dict) else dict()
		predicates = data["checker"]
		if isinstance(predicates, dict):
			predicates = predicates.get("predicates")

		skills = data.get("skills")
		if isinstance(skills, str):
			skills = [skills]
		return build_task(request, data["goal"], setup.get("state"), setup.get("expected"), predicates,
		                  data["solution"], difficulty=data.get("difficulty"), skills=skills)
