# coding=utf-8
"""
Judges turn a finished trajectory into a :class:`~evolvecua.model.JudgeVerdict`.

Two judges share the ``judge(trajectory, task, env)`` interface:

  * :class:`OracleJudge` checks the final application state against the task's ground truth checker
  * :class:`LlmJudge` asks a model, rendering the evaluation template with the serialized trajectory

The performance profile over judged trajectories lives in :mod:`evolvecua.judge.profile`.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import json
import logging
import numbers

from evolvecua.model import JudgeVerdict, VerdictSources
from evolvecua.policy.prompts import build_request, render
from evolvecua.util import json_values

from .exceptions import EmptyEvaluation, JudgeException, JudgeParseError
from .profile import Cell, PerformanceProfile, compute_profile

JUDGE_TEMPLATE = "judge.jinja2"

REQUIRED_FIELDS = ("score", "success")

logger = logging.getLogger(__name__)


def judge_oracle(trajectory, checker, env):
	"""
	Judges a trajectory by the final state of its environment.

	An empty trajectory always receives a zero verdict.

	Arguments:
	    trajectory (Trajectory): The finished trajectory.
	    checker (Checker): Ground truth checker of the task.
	    env (EnvHandle): The environment in its final state.

	Returns:
	    JudgeVerdict: Score is the fraction of satisfied predicates, success requires all of them.
	"""
	mcp, gui = trajectory.modality_counts()
	if not trajectory.steps:
		return JudgeVerdict.create(0.0, False, mcp_actions=mcp, gui_actions=gui,
		                           reasoning="No actions were taken.", source=VerdictSources.ORACLE)

	verdict = env.check(checker)
	reasoning = "{}/{} checks satisfied".format(len(verdict.satisfied), verdict.total)
	return JudgeVerdict.create(verdict.score, verdict.success, mcp_actions=mcp, gui_actions=gui,
	                           reasoning=reasoning, source=VerdictSources.ORACLE)


class OracleJudge(object):
	def __init__(self, library):
		self._library = library

	def judge(self, trajectory, task, env):
		return judge_oracle(trajectory, self._library.checker(task.checker_id), env)


##~~ LLM judge


def serialize_trajectory(trajectory):
	"""
	Serializes a trajectory into the numbered step listing handed to the judge.

	    >>> from evolvecua.model import Action, Step, Trajectory
	    >>> steps = [Step.create(None, "", Action.mcp("open_url", dict(url="a.test")), "Opened a.test"),
	    ...          Step.create(None, "", Action.terminate(success=True), "Terminated")]
	    >>> print(serialize_trajectory(Trajectory.create("t", "mini_browser", steps, "completion")))
	    Step 1: [mcp] open_url(url='a.test') -> Opened a.test
	    Step 2: [gui] terminate[status='success'] -> Terminated
	    Terminated by: completion
	"""
	lines = []
	for index, step in enumerate(trajectory.steps):
		if step.action is not None:
			action = "[{}] {}".format(step.action.modality, step.action)
		else:
			action = "[unparseable] {}".format((step.raw or "").strip())
		lines.append("Step {}: {} -> {}".format(index + 1, action, step.result))
	lines.append("Terminated by: {}".format(trajectory.terminated_by))
	return "\n".join(lines)


def render_judge_prompt(trajectory, task, tools):
	return render(JUDGE_TEMPLATE,
	              task_description=task.goal,
	              application_name=task.app_id,
	              tool_list=", ".join(tool.signature() for tool in tools),
	              trajectory=serialize_trajectory(trajectory))


def _count(data, key, fallback):
	value = data.get(key)
	if isinstance(value, bool) or not isinstance(value, numbers.Number) or value < 0:
		return fallback
	return int(value)


def parse_verdict(text, trajectory=None):
	"""
	Parses a judge response into a verdict.

	The first JSON object in ``text`` carrying ``score`` and ``success`` is used, surrounding prose and code fences
	are ignored. Scores outside ``[0, 1]`` are clamped with a warning. Missing or invalid action counts fall back to
	the counts of the trajectory.

	Arguments:
	    text (str): The raw response.
	    trajectory (Trajectory): The judged trajectory, source of fallback action counts.

	Returns:
	    JudgeVerdict: The verdict, sourced ``llm``.

	Raises:
	    JudgeParseError: No such object exists or ``score`` is not a number or ``success`` not a boolean.
	"""
	if not text:
		raise JudgeParseError("empty response", response=text)

	candidates = [value for value in json_values(text, openers="{") if isinstance(value, dict)]
	if not candidates:
		raise JudgeParseError("no JSON object", response=text)

	data = None
	for candidate in candidates:
		if all(field in candidate for field in REQUIRED_FIELDS):
			data = candidate
			break
	if data is None:
		missing = [field for field in REQUIRED_FIELDS if field not in candidates[0]]
		raise JudgeParseError("missing {}".format(", ".join(missing)), response=text)

	score = data["score"]
	if isinstance(score, bool) or not isinstance(score, numbers.Number):
		raise JudgeParseError("score is not a number: {!r}".format(score), response=text)
	if not 0.0 <= score <= 1.0:
		clamped = min(1.0, max(0.0, float(score)))
		logger.warning("Judge score {!r} lies outside [0, 1], clamping to {}".format(score, clamped))
		score = clamped

	success = data["success"]
	if not isinstance(success, bool):
		raise JudgeParseError("success is not a boolean: {!r}".format(success), response=text)

	mcp, gui = trajectory.modality_counts() if trajectory is not None else (0, 0)
	reasoning = data.get("reasoning", "")
	if not isinstance(reasoning, str):
		reasoning = json.dumps(reasoning)

	return JudgeVerdict.create(score, success,
	                           mcp_actions=_count(data, "mcp_actions", mcp),
	                           gui_actions=_count(data, "gui_actions", gui),
	                           reasoning=reasoning,
	                           source=VerdictSources.LLM)


class LlmJudge(object):
	"""
	Arguments:
	    client (LlmClient): Client used for the evaluation requests.
	    model (str): Model id sent with every request.
	"""

	def __init__(self, client, model=None):
		self._client = client
		self._model = model

	def judge(self, trajectory, task, env):
		prompt = render_judge_prompt(trajectory, task, env.tools())
		response = self._client.complete(build_request(self._model, [("user", prompt)]))
		return parse_verdict(response, trajectory=trajectory)


def create_judge(designation, library=None, client=None, model=None):
	"""
	Creates a judge from its designation, ``oracle`` or ``llm``.

	Raises:
	    ValueError: Unknown designation or an ``llm`` judge without client.
	"""
	if designation == "oracle":
		if library is None:
			raise ValueError("The oracle judge needs a task library")
		return OracleJudge(library)
	elif designation == "llm":
		if client is None:
			raise ValueError("The llm judge needs an endpoint or replay fixtures")
		return LlmJudge(client, model=model)
	raise ValueError("Unknown judge {!r}".format(designation))


__all__ = ["OracleJudge", "LlmJudge", "judge_oracle", "parse_verdict", "serialize_trajectory", "render_judge_prompt",
           "create_judge", "compute_profile", "PerformanceProfile", "Cell", "JudgeException", "JudgeParseError",
           "EmptyEvaluation"]
