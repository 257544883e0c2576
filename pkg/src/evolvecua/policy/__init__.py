# coding=utf-8
"""
The policy runtime: runs policies against simulated applications and turns their attempts into judged
trajectories.

.. autoclass:: RolloutConfig

.. autoclass:: RolloutRunner
   :members:

.. autofunction:: select_best

.. autofunction:: create_policy
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import concurrent.futures
import io
import logging

import yaml

from evolvecua.judge.exceptions import JudgeParseError
from evolvecua.model import JudgeVerdict, Step, StepStatus, TerminationReasons, Trajectory, VerdictSources
from evolvecua.model.codec import decode_action, encode_action, validate_arguments
from evolvecua.model.exceptions import FormatError
from evolvecua.sim import simulator as default_simulator
from evolvecua.sim.exceptions import ActionFailed, SetupError
from evolvecua.util import get_class

from .base import Episode, PolicyHandle, PolicyKinds, PolicyOutput
from .exceptions import UnknownPolicy
from .llm import LlmPolicy
from .prompts import prompt_base
from .scripted import ScriptedPolicy, reference_rules, student_rules, wander_rules

ROLLOUT_LOGGER = "ROLLOUT"

rollout_logger = logging.getLogger(ROLLOUT_LOGGER)


class RolloutConfig(collections.namedtuple("RolloutConfig", "max_steps, attempts, success_threshold, experience_injection")):
	"""
	Arguments:
	    max_steps (int): Step cap per attempt, ``terminate`` included.
	    attempts (int): Attempts per task in :meth:`RolloutRunner.best_of_n`.
	    success_threshold (float): Trajectories need a score strictly above this to be kept.
	    experience_injection (bool): Whether prompts are augmented with experience.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, max_steps=25, attempts=3, success_threshold=0.5, experience_injection=True):
		if max_steps < 1:
			raise ValueError("max_steps must be at least 1, got {}".format(max_steps))
		if attempts < 1:
			raise ValueError("attempts must be at least 1, got {}".format(attempts))
		if not 0.0 <= success_threshold <= 1.0:
			raise ValueError("success_threshold must lie within [0, 1], got {}".format(success_threshold))
		return cls(int(max_steps), int(attempts), float(success_threshold), bool(experience_injection))


class SampleResult(collections.namedtuple("SampleResult", "kept, best, attempts")):
	"""
	Outcome of best-of-N sampling on one task: the kept trajectories, the best kept one (``None`` if nothing was
	kept) and all attempts in attempt order.
	"""

	__slots__ = ()


class CollectionResult(collections.namedtuple("CollectionResult", "trajectories, skipped")):
	"""
	Outcome of an expert collection: the best trajectory of every solved task in task order and the ids of the
	tasks without any passing attempt.
	"""

	__slots__ = ()


class EvaluationResult(collections.namedtuple("EvaluationResult", "records, kept")):
	"""
	Outcome of an evaluation: ``(task, trajectory)`` pairs holding the best attempt per task in task order and the
	kept attempts of all tasks.
	"""

	__slots__ = ()


def _rank(trajectory):
	return -trajectory.score, trajectory.step_count, trajectory.attempt_index


def select_best(trajectories, threshold):
	"""
	Thresholded argmax. Trajectories scoring strictly above ``threshold`` are kept, the best of those has the
	highest score, ties go to fewer steps and then to the earlier attempt.

	Returns:
	    tuple: ``(kept, best)``, ``best`` is ``None`` if nothing was kept.
	"""
	kept = [t for t in trajectories if t.score > threshold]
	if not kept:
		return kept, None
	return kept, min(kept, key=_rank)


def best_attempt(trajectories):
	"""
	The best of all attempts regardless of the threshold, ranked like :func:`select_best`.
	"""
	if not trajectories:
		return None
	return min(trajectories, key=_rank)


def canonicalize(trajectory):
	"""
	Replaces the raw text of every decoded step by the canonical tool call block of its action.
	"""
	steps = [step._replace(raw=encode_action(step.action)) if step.action is not None else step
	         for step in trajectory.steps]
	return trajectory._replace(steps=tuple(steps))


class RolloutRunner(object):
	"""
	Runs policies on the tasks of a library.

	Arguments:
	    library (TaskLibrary): Tasks, checkers and reference solutions.
	    judge: Judge producing a :class:`~evolvecua.model.JudgeVerdict` through ``judge(trajectory, task, env)``.
	    config (RolloutConfig): Rollout settings.
	    simulator (Simulator): Simulator creating environments, defaults to the bundled applications.
	    workers (int): Number of tasks worked on concurrently.
	"""

	def __init__(self, library, judge, config, simulator=None, workers=1):
		self._logger = logging.getLogger(__name__)
		self._library = library
		self._judge = judge
		self._config = config
		self._simulator = simulator if simulator is not None else default_simulator()
		self._workers = max(1, workers)

	@property
	def config(self):
		return self._config

	@property
	def library(self):
		return self._library

	def prompt_for(self, task, tools, bank=None):
		"""
		Returns the system prompt of a task: the base prompt, augmented with the relevant experience of ``bank`` if
		experience injection is enabled.
		"""
		prompt = prompt_base(task, tools)
		if bank is not None and self._config.experience_injection:
			prompt = bank.compose_prompt(prompt, task)
		return prompt

	##~~ single attempts

	def rollout(self, policy, task, bank=None, attempt_index=0, iteration=0):
		"""
		Runs one attempt of ``policy`` on ``task`` and judges it.

		Returns:
		    Trajectory: The judged trajectory. A setup that fails yields an empty trajectory terminated by
		        ``error`` with a zero verdict.

		Raises:
		    EndpointError: The policy's endpoint failed.
		"""
		try:
			env = self._simulator.reset(task.initial_state)
		except SetupError as error:
			self._logger.warning("Could not set up {}: {}".format(task.task_id, error))
			trajectory = Trajectory.create(task.task_id, task.app_id, [], TerminationReasons.ERROR,
			                               attempt_index=attempt_index, policy_id=policy.policy_id, iteration=iteration)
			return trajectory.with_verdict(JudgeVerdict.create(0.0, False, reasoning=error.message,
			                                                   source=VerdictSources.ORACLE))

		try:
			tools = env.tools()
			schemas = env.tool_registry()
			episode = policy.start(task, self.prompt_for(task, tools, bank=bank), tools)

			steps = []
			terminated_by = TerminationReasons.STEP_CAP
			observation = env.observe()
			result = None

			for index in range(self._config.max_steps):
				output = episode.next(observation, result)
				step, observation = self._execute(env, schemas, observation, output)
				steps.append(step)
				result = step.result

				rollout_logger.debug("{} -> {}".format(step.action if step.action is not None else step.format_error, step.result),
				                     extra=dict(iteration=iteration, task_id=task.task_id, attempt=attempt_index, step=index,
				                                status=step.status))

				if step.action is not None and step.action.is_terminate:
					terminated_by = TerminationReasons.COMPLETION
					break

			trajectory = Trajectory.create(task.task_id, task.app_id, steps, terminated_by,
			                               attempt_index=attempt_index, policy_id=policy.policy_id, iteration=iteration)
			return trajectory.with_verdict(self._verdict(trajectory, task, env))
		finally:
			env.close()

	def _execute(self, env, schemas, observation, output):
		try:
			action = decode_action(output.text)
		except FormatError as error:
			return Step.create(observation, output.reasoning, None, error.message,
			                   status=StepStatus.FORMAT_ERROR, raw=output.text, format_error=error.stage,
			                   violations=error.violations), observation

		if action.is_mcp:
			schema = schemas.get(action.tool_name)
			violations = validate_arguments(action, schema) if schema is not None else ["unknown tool {}".format(action.tool_name)]
			if violations:
				message = ActionFailed("bad call of {}: {}".format(action.tool_name, "; ".join(violations))).message
				return Step.create(observation, output.reasoning, action, message,
				                   status=StepStatus.FAILED, raw=output.text, violations=violations), observation

		try:
			result, after = env.apply(action)
		except ActionFailed as error:
			return Step.create(observation, output.reasoning, action, error.message,
			                   status=StepStatus.FAILED, raw=output.text), observation

		return Step.create(observation, output.reasoning, action, result, status=StepStatus.OK, raw=output.text), after

	def _verdict(self, trajectory, task, env):
		try:
			return self._judge.judge(trajectory, task, env)
		except JudgeParseError as error:
			self._logger.warning("Judge verdict for {} is missing: {}".format(trajectory.trajectory_id, error))
			return None

	##~~ rejection sampling

	def best_of_n(self, policy, task, bank=None, iteration=0, attempts=None):
		"""
		Runs ``attempts`` (by default the configured number of) sequential attempts and selects the best one above
		the success threshold.

		Returns:
		    SampleResult: Kept trajectories, the best kept one and all attempts.
		"""
		if attempts is None:
			attempts = self._config.attempts
		trajectories = [self.rollout(policy, task, bank=bank, attempt_index=i, iteration=iteration) for i in range(attempts)]
		kept, best = select_best(trajectories, self._config.success_threshold)
		return SampleResult(kept, best, trajectories)

	def collect_expert(self, expert, tasks, iteration=0):
		"""
		Collects the best expert trajectory per task, actions re-encoded to the canonical tool call format.

		Returns:
		    CollectionResult: Trajectories and the ids of skipped tasks.
		"""
		samples = self._map(lambda task: self.best_of_n(expert, task, iteration=iteration), tasks)

		trajectories = []
		skipped = []
		for task, sample in zip(tasks, samples):
			if sample.best is None:
				skipped.append(task.task_id)
			else:
				trajectories.append(canonicalize(sample.best))

		if skipped:
			self._logger.warning("Expert {} solved no attempt of {} task(s): {}".format(expert.policy_id, len(skipped), ", ".join(skipped)))
		self._logger.info("Collected {} expert trajectories with {}".format(len(trajectories), expert.policy_id))
		return CollectionResult(trajectories, skipped)

	def evaluate(self, student, tasks, bank=None, iteration=0, attempts=None):
		"""
		Evaluates a student with best-of-N sampling per task.

		Returns:
		    EvaluationResult: The best attempt per task and all kept attempts.
		"""
		samples = self._map(lambda task: self.best_of_n(student, task, bank=bank, iteration=iteration, attempts=attempts), tasks)

		records = []
		kept = []
		for task, sample in zip(tasks, samples):
			records.append((task, best_attempt(sample.attempts)))
			kept.extend(sample.kept)

		passed = sum(1 for _, trajectory in records if trajectory.success)
		self._logger.info("Evaluated {} on {} tasks, {} passed".format(student.policy_id, len(records), passed))
		return EvaluationResult(records, kept)

	def _map(self, fn, tasks):
		tasks = list(tasks)
		if self._workers == 1 or len(tasks) < 2:
			return [fn(task) for task in tasks]
		with concurrent.futures.ThreadPoolExecutor(max_workers=self._workers) as executor:
			return list(executor.map(fn, tasks))


##~~ policy designations


class PolicyContext(collections.namedtuple("PolicyContext", "library, client, model, student_gaps")):
	"""
	Everything a policy designation may need to be turned into a policy.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, library, client=None, model=None, student_gaps=None):
		return cls(library, client, model, student_gaps)


def create_policy(designation, context):
	"""
	Creates a policy from its designation:

	  * ``scripted:reference``, ``scripted:wander``, ``scripted:student``: the bundled scripted tables
	  * ``table:<path>``: a scripted table read from a YAML or JSON file, see :meth:`ScriptedPolicy.from_table`
	  * ``llm`` or ``llm:<model>``: an LLM policy on the configured client
	  * ``custom:<dotted.path>``: a factory called with ``(designation, context)``

	Raises:
	    UnknownPolicy: The designation names no policy.
	"""
	if not designation or not isinstance(designation, str):
		raise UnknownPolicy(designation)

	kind, _, argument = designation.partition(":")
	if kind == "scripted":
		if argument == "reference":
			return ScriptedPolicy(designation, reference_rules(context.library))
		elif argument == "wander":
			return ScriptedPolicy(designation, wander_rules())
		elif argument == "student":
			return ScriptedPolicy(designation, student_rules(context.library, gaps=context.student_gaps))
		raise UnknownPolicy(designation, "no bundled table {}".format(argument))

	elif kind == "table":
		try:
			with io.open(argument, "r", encoding="utf-8") as f:
				table = yaml.safe_load(f)
		except (IOError, OSError, yaml.YAMLError) as error:
			raise UnknownPolicy(designation, str(error))
		if not isinstance(table, list):
			raise UnknownPolicy(designation, "a table must be a list of entries")
		return ScriptedPolicy.from_table(designation, table)

	elif kind == "llm":
		if context.client is None:
			raise UnknownPolicy(designation, "no LLM client configured")
		return LlmPolicy(designation, context.client, model=argument or context.model)

	elif kind == "custom":
		try:
			factory = get_class(argument)
		except (ImportError, AttributeError, ValueError) as error:
			raise UnknownPolicy(designation, str(error))
		policy = factory(designation, context)
		if not isinstance(policy, PolicyHandle):
			raise UnknownPolicy(designation, "factory did not return a policy")
		return policy

	raise UnknownPolicy(designation)
