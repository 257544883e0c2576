# coding=utf-8
"""
Gap analysis and targeted task generation.

A :class:`GapReport` compares a performance profile against configured thresholds, :func:`plan_generation` turns
the gaps into a weighted :class:`GenerationPlan` and :func:`generate_tasks` instantiates the plan through a task
generator, validating the environment setup of every new task before it may enter a rollout queue.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging
import math
import random

from evolvecua.model import Difficulties, SkillCategories
from evolvecua.sim.exceptions import ActionFailed, SetupError

from .exceptions import GenerationException, GenerationFailed, UnsolvableTask, ValidationExhausted
from .generators import GeneratedTask, GenerationRequest, LlmGenerator, TaskGenerator, TemplateGenerator
from .templates import EMPHASES, MCP

logger = logging.getLogger(__name__)

DIFFICULTY_ORDER = (Difficulties.EASY, Difficulties.MEDIUM, Difficulties.HARD)
SKILL_ORDER = (SkillCategories.DATA_RETRIEVAL,
               SkillCategories.DATA_MANIPULATION,
               SkillCategories.SEARCH_QUERY,
               SkillCategories.EXECUTION_AUTOMATION,
               SkillCategories.NAVIGATION_BROWSING,
               SkillCategories.CONFIGURATION_SETTINGS)

DEFAULT_MCP_TARGET = 0.5
DEFAULT_PASS_TARGET = 0.6
DEFAULT_EPSILON = 0.02
DEFAULT_RETRIES = 3


class Thresholds(collections.namedtuple("Thresholds", "mcp_target, difficulty, skill")):
	__slots__ = ()

	@classmethod
	def create(cls, mcp_target=DEFAULT_MCP_TARGET, difficulty=None, skill=None):
		difficulty = dict(difficulty or dict())
		skill = dict(skill or dict())
		return cls(float(mcp_target),
		           collections.OrderedDict((d, float(difficulty.get(d, DEFAULT_PASS_TARGET))) for d in DIFFICULTY_ORDER),
		           collections.OrderedDict((s, float(skill.get(s, DEFAULT_PASS_TARGET))) for s in SKILL_ORDER))

	def to_dict(self):
		return dict(mcp_target=self.mcp_target, difficulty=dict(self.difficulty), skill=dict(self.skill))

	@classmethod
	def from_dict(cls, data):
		return cls.create(data.get("mcp_target", DEFAULT_MCP_TARGET), data.get("difficulty"), data.get("skill"))


class GapReport(collections.namedtuple("GapReport", "delta_mcp, delta_difficulty, delta_skill, underused_tools, thresholds")):
	"""
	Arguments:
	    delta_mcp (float): ``mcp_target`` minus the MCP ratio, ``None`` if the evaluation held no actions.
	    delta_difficulty (dict): ``threshold - pass rate`` per difficulty, ``None`` for cells without tasks.
	    delta_skill (dict): ``threshold - pass rate`` per skill category, ``None`` for cells without tasks.
	    underused_tools (dict): Registered tools without a single successful invocation, keyed by application id.
	    thresholds (Thresholds): The thresholds used.
	"""

	__slots__ = ()

	def to_dict(self):
		return dict(delta_mcp=self.delta_mcp,
		            delta_difficulty=dict(self.delta_difficulty),
		            delta_skill=dict(self.delta_skill),
		            underused_tools=dict((app_id, list(tools)) for app_id, tools in self.underused_tools.items()),
		            thresholds=self.thresholds.to_dict())

	@classmethod
	def from_dict(cls, data):
		return cls(data.get("delta_mcp"),
		           collections.OrderedDict((d, data["delta_difficulty"].get(d)) for d in DIFFICULTY_ORDER),
		           collections.OrderedDict((s, data["delta_skill"].get(s)) for s in SKILL_ORDER),
		           dict((app_id, list(tools)) for app_id, tools in data.get("underused_tools", dict()).items()),
		           Thresholds.from_dict(data.get("thresholds", dict())))


def _delta(threshold, cell):
	if cell is None or cell.value is None:
		return None
	return threshold - cell.value


def analyze_gaps(profile, thresholds=None):
	"""
	Compares a profile against thresholds.

	Arguments:
	    profile (PerformanceProfile): The profile of the evaluation.
	    thresholds (Thresholds): Target values, the defaults if ``None``.

	Returns:
	    GapReport: Signed gaps, positive where the agent falls short.
	"""
	if thresholds is None:
		thresholds = Thresholds.create()

	delta_mcp = _delta(thresholds.mcp_target, profile.modality.get("mcp"))
	delta_difficulty = collections.OrderedDict((d, _delta(thresholds.difficulty[d], profile.difficulty.get(d)))
	                                           for d in DIFFICULTY_ORDER)
	delta_skill = collections.OrderedDict((s, _delta(thresholds.skill[s], profile.skills.get(s)))
	                                      for s in SKILL_ORDER)
	underused = collections.OrderedDict((app_id, [tool for tool, count in usage.items() if count == 0])
	                                    for app_id, usage in sorted(profile.tool_usage.items()))

	return GapReport(delta_mcp, delta_difficulty, delta_skill, underused, thresholds)


##~~ planning


class GenerationPlan(collections.namedtuple("GenerationPlan", "weights, allocation, budget, epsilon, seed")):
	"""
	Arguments:
	    weights (OrderedDict): Normalized weight per ``(skill, difficulty, emphasis)`` cell.
	    allocation (OrderedDict): Number of tasks to generate per cell, summing to ``budget``.
	    budget (int): Tasks to generate.
	    epsilon (float): Uniform floor added to every cell gap.
	    seed (int): Seed of the tie breaking shuffle.
	"""

	__slots__ = ()

	def cells(self):
		return list(self.weights.keys())

	def marginal(self, axis):
		"""
		Returns the total weight per skill (``axis=0``), difficulty (``axis=1``) or emphasis (``axis=2``).
		"""
		result = collections.OrderedDict()
		for cell, weight in self.weights.items():
			result[cell[axis]] = result.get(cell[axis], 0.0) + weight
		return result

	def requests(self):
		"""
		Returns:
		    list: ``(skill, difficulty, emphasis)`` once per task to generate, in cell order.
		"""
		result = []
		for cell, count in self.allocation.items():
			result.extend([cell] * count)
		return result

	def to_dict(self):
		return dict(budget=self.budget,
		            epsilon=self.epsilon,
		            seed=self.seed,
		            cells=[dict(skill=cell[0], difficulty=cell[1], emphasis=cell[2], weight=weight,
		                        count=self.allocation.get(cell, 0))
		                   for cell, weight in self.weights.items()])

	@classmethod
	def from_dict(cls, data):
		weights = collections.OrderedDict()
		allocation = collections.OrderedDict()
		for entry in data.get("cells", []):
			cell = (entry["skill"], entry["difficulty"], entry["emphasis"])
			weights[cell] = entry["weight"]
			allocation[cell] = entry.get("count", 0)
		return cls(weights, allocation, data.get("budget", 0), data.get("epsilon", DEFAULT_EPSILON), data.get("seed", 0))


def _positive(value):
	return max(value, 0.0) if value is not None else 0.0


def cell_gaps(gaps):
	"""
	Returns the gap of every ``(skill, difficulty, emphasis)`` cell: the positive skill gap plus the positive
	difficulty gap plus the positive modality gap pointing to the emphasis.
	"""
	mcp_gap = _positive(gaps.delta_mcp)
	gui_gap = _positive(-gaps.delta_mcp if gaps.delta_mcp is not None else None)

	result = collections.OrderedDict()
	for skill in SKILL_ORDER:
		for difficulty in DIFFICULTY_ORDER:
			for emphasis in EMPHASES:
				result[(skill, difficulty, emphasis)] = _positive(gaps.delta_skill.get(skill)) \
				                                        + _positive(gaps.delta_difficulty.get(difficulty)) \
				                                        + (mcp_gap if emphasis == MCP else gui_gap)
	return result


def weigh_cells(gaps_per_cell, epsilon=DEFAULT_EPSILON):
	"""
	Normalizes cell gaps into weights proportional to ``gap + epsilon``, uniform if every cell is zero.

	    >>> weigh_cells({"a": 3.0, "b": 1.0, "c": 0.0}, epsilon=0.0)["a"]
	    0.75
	"""
	if epsilon < 0:
		raise ValueError("epsilon must not be negative")
	raw = collections.OrderedDict((cell, max(gap, 0.0) + epsilon) for cell, gap in gaps_per_cell.items())
	total = math.fsum(raw.values())
	if total <= 0:
		return collections.OrderedDict((cell, 1.0 / len(raw)) for cell in raw)
	return collections.OrderedDict((cell, value / total) for cell, value in raw.items())


def apportion(weights, budget, seed=0):
	"""
	Splits ``budget`` over the cells by largest remainder. Remainder ties are broken by a shuffle seeded with
	``seed``, so the result is deterministic.
	"""
	if budget < 0:
		raise ValueError("budget must not be negative")

	quotas = collections.OrderedDict((cell, weight * budget) for cell, weight in weights.items())
	allocation = collections.OrderedDict((cell, int(math.floor(quota))) for cell, quota in quotas.items())
	remaining = budget - sum(allocation.values())

	order = list(weights.keys())
	random.Random(seed).shuffle(order)
	position = dict((cell, i) for i, cell in enumerate(order))
	ranked = sorted(weights.keys(), key=lambda cell: (-(quotas[cell] - allocation[cell]), position[cell]))
	for cell in ranked[:remaining]:
		allocation[cell] += 1
	return allocation


def plan_generation(gaps, budget, epsilon=DEFAULT_EPSILON, seed=0):
	"""
	Plans the tasks of the next generation round.

	Arguments:
	    gaps (GapReport): The gaps to target.
	    budget (int): Number of tasks to generate.
	    epsilon (float): Floor keeping cells without gap sampleable.
	    seed (int): Seed of the tie breaking shuffle.

	Returns:
	    GenerationPlan: The plan, deterministic for equal arguments.
	"""
	weights = weigh_cells(cell_gaps(gaps), epsilon=epsilon)
	return GenerationPlan(weights, apportion(weights, budget, seed=seed), budget, epsilon, seed)


##~~ generation


class ValidationOutcome(collections.namedtuple("ValidationOutcome", "generated, attempts")):
	"""
	Arguments:
	    generated (GeneratedTask): The validated task.
	    attempts (list): One ``{"attempt": n, "error": message or None}`` entry per attempt.
	"""

	__slots__ = ()


class GenerationOutcome(collections.namedtuple("GenerationOutcome", "tasks, quarantined, log")):
	"""
	Arguments:
	    tasks (list): Validated :class:`GeneratedTask` instances, in request order.
	    quarantined (list): ``{"task_id", "request", "attempts"}`` entries of requests that never validated.
	    log (list): Validation attempts per task id.
	"""

	__slots__ = ()

	def to_dict(self):
		return dict(tasks=[generated.task_id for generated in self.tasks],
		            quarantined=list(self.quarantined),
		            log=list(self.log))


def replay_solution(simulator, generated):
	"""
	Sets up a generated task and plays its solution against the checker.

	Raises:
	    SetupError: The setup did not reach the expected initial state.
	    UnsolvableTask: The solution is rejected by the application or leaves the checker unsatisfied.
	"""
	env = simulator.reset(generated.task.initial_state)
	try:
		for index, action in enumerate(generated.solution):
			try:
				env.apply(action)
			except ActionFailed as error:
				raise UnsolvableTask(generated.task_id, "step {} ({}): {}".format(index, action.key, error.reason))
		verdict = env.check(generated.checker)
		if not verdict.success:
			raise UnsolvableTask(generated.task_id, "{} of {} checker predicates hold".format(len(verdict.satisfied),
			                                                                                 verdict.total))
	finally:
		env.close()


def validate_environment(request, generator, retries=DEFAULT_RETRIES, simulator=None, generated=None):
	"""
	Generates a task, checks that its setup reaches the expected initial state and that its solution then satisfies
	the checker. A setup error or an unsolvable task is fed back to the generator for a revised task, up to
	``retries`` attempts in total.

	Arguments:
	    request (GenerationRequest): What to generate.
	    generator (TaskGenerator): The generator.
	    retries (int): Maximum number of attempts, at least 1.
	    simulator (Simulator): Simulator to validate with, the default one if ``None``.
	    generated (GeneratedTask): An already generated first attempt.

	Returns:
	    ValidationOutcome: The validated task and the attempt log.

	Raises:
	    ValidationExhausted: No attempt validated.
	"""
	if retries < 1:
		raise ValueError("retries must be at least 1")
	if simulator is None:
		from evolvecua.sim import simulator as default_simulator
		simulator = default_simulator()

	attempts = []
	feedback = None
	for attempt in range(retries):
		try:
			if generated is None:
				generated = generator.generate(request._replace(attempt=attempt), feedback=feedback)
			replay_solution(simulator, generated)
		except (SetupError, GenerationFailed, UnsolvableTask) as error:
			logger.info("Attempt {} for {} failed: {}".format(attempt + 1, request.request_id, error.message))
			attempts.append(dict(attempt=attempt + 1, error=error.message))
			feedback = error.message
			generated = None
			continue

		attempts.append(dict(attempt=attempt + 1, error=None))
		return ValidationOutcome(generated, attempts)

	raise ValidationExhausted(request.request_id, [(entry["attempt"], entry["error"]) for entry in attempts])


def build_requests(plan, apps, gaps=None, iteration=0):
	"""
	Expands a plan into generation requests. Requests are dealt to ``apps`` round robin. If the agent used MCP
	actions too rarely, each underused tool of an application is preferred by one request of that application,
	MCP emphasis requests first.
	"""
	apps = list(apps)
	if not apps:
		return []

	requests = []
	for index, (skill, difficulty, emphasis) in enumerate(plan.requests()):
		request_id = "gen-{}-{:03d}".format(iteration, index + 1)
		requests.append(GenerationRequest.create(request_id, apps[index % len(apps)], skill, difficulty, emphasis,
		                                         index=index))

	if gaps is not None and gaps.delta_mcp is not None and gaps.delta_mcp > 0:
		for app_id in apps:
			tools = list(gaps.underused_tools.get(app_id, []))
			own = [i for i, request in enumerate(requests) if request.app_id == app_id]
			own.sort(key=lambda i: (requests[i].emphasis != MCP, i))
			for i, tool in zip(own, tools):
				requests[i] = requests[i]._replace(preferred_tools=(tool,))
	return requests


def generate_tasks(plan, generator, apps, gaps=None, retries=DEFAULT_RETRIES, iteration=0, simulator=None):
	"""
	Generates and validates the tasks of a plan.

	Arguments:
	    plan (GenerationPlan): The plan.
	    generator (TaskGenerator): Template or LLM generator.
	    apps (list): Target application ids.
	    gaps (GapReport): Gaps the plan was made from, source of the underused tools.
	    retries (int): Validation attempts per task.
	    iteration (int): Iteration number, part of every generated task id.
	    simulator (Simulator): Simulator to validate with.

	Returns:
	    GenerationOutcome: Validated tasks plus quarantined requests.
	"""
	tasks = []
	quarantined = []
	log = []
	for request in build_requests(plan, apps, gaps=gaps, iteration=iteration):
		try:
			outcome = validate_environment(request, generator, retries=retries, simulator=simulator)
		except ValidationExhausted as error:
			logger.warning("Quarantining {}: {}".format(request.request_id, error.message))
			quarantined.append(dict(task_id=request.request_id,
			                        request=dict(app_id=request.app_id, skill=request.skill,
			                                     difficulty=request.difficulty, emphasis=request.emphasis,
			                                     preferred_tools=list(request.preferred_tools)),
			                        attempts=[dict(attempt=attempt, error=message) for attempt, message in error.attempts]))
			log.append(dict(task_id=request.request_id, attempts=quarantined[-1]["attempts"]))
			continue
		tasks.append(outcome.generated)
		log.append(dict(task_id=request.request_id, attempts=outcome.attempts))

	logger.info("Generated {} tasks, {} quarantined".format(len(tasks), len(quarantined)))
	return GenerationOutcome(tasks, quarantined, log)


def create_generator(designation, client=None, model=None):
	"""
	Creates a task generator from its designation, ``template`` or ``llm``.
	"""
	if designation == "template":
		return TemplateGenerator()
	elif designation == "llm":
		if client is None:
			raise ValueError("The llm generator needs an endpoint or replay fixtures")
		return LlmGenerator(client, model=model)
	raise ValueError("Unknown task generator {!r}".format(designation))


__all__ = ["Thresholds", "GapReport", "GenerationPlan", "GenerationRequest", "GeneratedTask", "GenerationOutcome",
           "ValidationOutcome", "TaskGenerator", "TemplateGenerator", "LlmGenerator", "analyze_gaps", "plan_generation",
           "weigh_cells", "apportion", "cell_gaps", "build_requests", "validate_environment", "generate_tasks",
           "create_generator", "replay_solution", "GenerationException", "GenerationFailed", "UnsolvableTask",
           "ValidationExhausted"]
