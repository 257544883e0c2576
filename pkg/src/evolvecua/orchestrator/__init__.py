# coding=utf-8
"""
The evolution loop.

An :class:`Orchestrator` drives one run directory through its iterations. Iteration 0 is the baseline: expert
collection on the seed tasks, the first pool and dataset, a baseline evaluation with an empty experience bank and
the first bank. Every further iteration evaluates the student on the seed tasks with the previous bank, turns the
gaps of that evaluation into newly generated tasks, lets the expert solve them and grows pool and bank.

Every phase is checkpointed in ``run_state.json``; a run that stopped for whatever reason resumes with the first
phase that is not done.

.. autoclass:: RunConfig
   :members: from_settings, student_for

.. autoclass:: Orchestrator
   :members: run

.. autofunction:: run_evolution
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging
import os

from evolvecua.events import EventLogListener, EventManager, Events
from evolvecua.experience import ExperienceBank, build_bank, create_extractor, create_merger
from evolvecua.gaps import GapReport, GenerationPlan, Thresholds, analyze_gaps, create_generator, generate_tasks, \
	plan_generation
from evolvecua.judge import create_judge
from evolvecua.judge.profile import PerformanceProfile, compute_profile
from evolvecua.model import Trajectory
from evolvecua.policy import PolicyContext, RolloutConfig, RolloutRunner, create_policy
from evolvecua.policy.client import HttpClient, RecordingClient, ReplayClient
from evolvecua.policy.exceptions import EndpointError, UnknownPolicy
from evolvecua.sim import simulator as default_simulator
from evolvecua.sim.exceptions import SimulationException
from evolvecua.sim.library import TaskLibrary
from evolvecua.store import DatasetPool, TrajectoryStore
from evolvecua.store.exceptions import EmptyPool
from evolvecua.store.export import TrainingManifest, export_sft
from evolvecua.store.memory import EvolutionMemory, record_iteration
from evolvecua.util import ensure_dir, read_json, read_jsonl, write_json, write_jsonl

from .exceptions import ConfigurationInvalid, OrchestratorException, PhaseFailed, RunLocked
from .state import Phases, RunLock, RunState

MODES = ("distill_exp", "exp_only")
DISTILL_EXP = "distill_exp"
EXP_ONLY = "exp_only"

STATE_FILE = "run_state.json"
LOCK_FILE = "run.lock"
EVENTS_FILE = "events.jsonl"
SUMMARY_FILE = "summary.json"
REPORT_FILE = "report.json"
RECORDING_FILE = "recording.jsonl"

EXPERT_STAGE = "expert"
EVALUATION_STAGE = "evaluation"

JUDGES = ("oracle", "llm")
GENERATORS = ("template", "llm")
EXTRACTORS = ("deterministic", "llm")
MERGERS = ("recency", "llm")
POLICY_KINDS = ("scripted", "table", "llm", "custom")


class RunConfig(collections.namedtuple("RunConfig", "run_dir, mode, iterations, seed, library, apps, task_limit, "
                                                    "workers, pause_for_student, rollout, evaluation_attempts, "
                                                    "thresholds, budget, epsilon, retries, generator, bank_capacity, "
                                                    "max_rule_length, over_length, extractor, merger, "
                                                    "include_student, replay_ratio, expert, students, judge, "
                                                    "student_gaps, llm, sft")):
	"""
	Everything a run needs, validated. Created from the settings of a run directory with :meth:`from_settings`.
	"""

	__slots__ = ()

	@classmethod
	def from_settings(cls, settings, run_dir=None, mode=None, iterations=None, seed=None):
		"""
		Arguments:
		    settings (Settings): Settings of the run directory.
		    run_dir (str): The run directory, the settings' base folder if ``None``.
		    mode (str): Overrides ``run.mode``.
		    iterations (int): Overrides ``run.iterations``.
		    seed (int): Overrides ``run.seed``.

		Raises:
		    ConfigurationInvalid: A value is missing or out of range.
		"""
		effective = settings.effective
		run = effective["run"]
		rollout = effective["rollout"]
		generation = effective["generation"]
		bank = effective["bank"]
		pool = effective["pool"]
		policies = effective["policies"]
		thresholds = effective["thresholds"]

		def number(value, kind, path):
			try:
				return kind(value)
			except (TypeError, ValueError):
				raise ConfigurationInvalid("{} must be a number, got {!r}".format(path, value))

		mode = mode if mode is not None else run.get("mode")
		if mode not in MODES:
			raise ConfigurationInvalid("mode must be one of {}, got {!r}".format(", ".join(MODES), mode))

		iterations = number(iterations if iterations is not None else run.get("iterations"), int, "run.iterations")
		if iterations < 1:
			raise ConfigurationInvalid("at least one iteration is required, got {}".format(iterations))

		try:
			rollout_config = RolloutConfig.create(max_steps=number(rollout.get("maxSteps"), int, "rollout.maxSteps"),
			                                      attempts=number(rollout.get("attempts"), int, "rollout.attempts"),
			                                      success_threshold=number(rollout.get("successThreshold"), float,
			                                                               "rollout.successThreshold"),
			                                      experience_injection=bool(rollout.get("experienceInjection")))
		except ValueError as error:
			raise ConfigurationInvalid(str(error))

		evaluation_attempts = number(effective["evaluation"].get("attempts"), int, "evaluation.attempts")
		if evaluation_attempts < 1:
			raise ConfigurationInvalid("evaluation.attempts must be at least 1, got {}".format(evaluation_attempts))

		task_limit = run.get("taskLimit")
		if task_limit is not None:
			task_limit = number(task_limit, int, "run.taskLimit")
			if task_limit < 1:
				raise ConfigurationInvalid("run.taskLimit must be at least 1, got {}".format(task_limit))

		budget = number(generation.get("budget"), int, "generation.budget")
		if budget < 0:
			raise ConfigurationInvalid("generation.budget must not be negative, got {}".format(budget))
		epsilon = number(generation.get("epsilon"), float, "generation.epsilon")
		if epsilon < 0:
			raise ConfigurationInvalid("generation.epsilon must not be negative, got {}".format(epsilon))
		retries = number(generation.get("retries"), int, "generation.retries")
		if retries < 1:
			raise ConfigurationInvalid("generation.retries must be at least 1, got {}".format(retries))

		capacity = number(bank.get("capacity"), int, "bank.capacity")
		if capacity < 1:
			raise ConfigurationInvalid("bank.capacity must be at least 1, got {}".format(capacity))
		max_rule_length = number(bank.get("maxRuleLength"), int, "bank.maxRuleLength")
		over_length = bank.get("overLength")
		if over_length not in ("truncate", "drop"):
			raise ConfigurationInvalid("bank.overLength must be truncate or drop, got {!r}".format(over_length))

		replay_ratio = number(pool.get("replayRatio"), float, "pool.replayRatio")
		if not 0.0 < replay_ratio <= 1.0:
			raise ConfigurationInvalid("pool.replayRatio must lie within (0, 1], got {}".format(replay_ratio))

		students = policies.get("students")
		if isinstance(students, str):
			students = [students]
		if not students:
			raise ConfigurationInvalid("at least one student policy is required")

		for path, value, choices in ((("policies", "judge"), policies.get("judge"), JUDGES),
		                             (("generation", "generator"), generation.get("generator"), GENERATORS),
		                             (("bank", "extractor"), bank.get("extractor"), EXTRACTORS),
		                             (("bank", "merger"), bank.get("merger"), MERGERS)):
			if value not in choices:
				raise ConfigurationInvalid("{} must be one of {}, got {!r}".format(".".join(path), ", ".join(choices), value))

		for designation in [policies.get("expert")] + list(students):
			if not isinstance(designation, str) or designation.partition(":")[0] not in POLICY_KINDS:
				raise ConfigurationInvalid("unknown policy designation {!r}".format(designation))

		try:
			thresholds = Thresholds.create(thresholds.get("mcpTarget"), thresholds.get("difficulty"), thresholds.get("skill"))
		except (TypeError, ValueError) as error:
			raise ConfigurationInvalid("invalid thresholds: {}".format(error))

		apps = run.get("apps")
		if isinstance(apps, str):
			apps = [apps]

		return cls(os.path.abspath(run_dir if run_dir is not None else settings.basedir),
		           mode,
		           iterations,
		           number(seed if seed is not None else run.get("seed"), int, "run.seed"),
		           run.get("library"),
		           list(apps) if apps else None,
		           task_limit,
		           max(1, number(run.get("workers"), int, "run.workers")),
		           bool(run.get("pauseForStudent")),
		           rollout_config,
		           evaluation_attempts,
		           thresholds,
		           budget,
		           epsilon,
		           retries,
		           generation.get("generator"),
		           capacity,
		           max_rule_length,
		           over_length,
		           bank.get("extractor"),
		           bank.get("merger"),
		           bool(pool.get("includeStudent")),
		           replay_ratio,
		           policies.get("expert"),
		           list(students),
		           policies.get("judge"),
		           policies.get("studentGaps"),
		           dict(effective["llm"]),
		           dict(effective["sft"]))

	def student_for(self, iteration):
		"""
		The student designation of an iteration. ``exp_only`` always uses the first student. ``distill_exp`` uses
		one entry per iteration and reuses the last one, unless the run pauses for missing students.

		Returns:
		    str: The designation, ``None`` if the run has to pause for it.
		"""
		if self.mode == EXP_ONLY:
			return self.students[0]
		if iteration < len(self.students):
			return self.students[iteration]
		if self.pause_for_student:
			return None
		return self.students[-1]

	@property
	def needs_client(self):
		designations = [self.expert] + list(self.students)
		return (any(d.partition(":")[0] == "llm" for d in designations)
		        or "llm" in (self.judge, self.generator, self.extractor, self.merger))


def training_manifest(config, iteration):
	"""
	The training manifest of a dataset exported in ``iteration``. Every iteration trains from the base model.
	"""
	sft = config.sft
	return TrainingManifest.create(base_model=sft.get("baseModel"),
	                               mode=config.mode,
	                               iteration=iteration,
	                               hyperparameters=collections.OrderedDict([
		                               ("learning_rate", sft.get("learningRate")),
		                               ("lora_rank", sft.get("loraRank")),
		                               ("image_max_pixels", sft.get("imageMaxPixels")),
		                               ("max_images", sft.get("maxImages")),
		                               ("cutoff_len", sft.get("cutoffLen")),
		                               ("attempts_per_task", config.rollout.attempts),
		                               ("success_threshold", config.rollout.success_threshold)
	                               ]),
	                               reset_to_base=True)


def create_client(llm, environ=None):
	"""
	Creates the LLM client of a run from the ``llm`` settings: a replay client on ``fixtures`` if set, otherwise an
	HTTP client on ``endpoint``. A ``record`` folder wraps the client into a recording client.

	Returns:
	    LlmClient: The client, ``None`` if neither fixtures nor an endpoint are configured.
	"""
	if environ is None:
		environ = os.environ

	if llm.get("fixtures"):
		client = ReplayClient(folder=llm["fixtures"])
	elif llm.get("endpoint"):
		token = environ.get(llm.get("tokenEnv") or "") or None
		try:
			timeout = float(llm.get("timeout") or 60)
		except (TypeError, ValueError):
			raise ConfigurationInvalid("llm.timeout must be a number, got {!r}".format(llm.get("timeout")))
		client = HttpClient(llm["endpoint"], model=llm.get("model"), token=token, timeout=timeout)
	else:
		return None

	if llm.get("record"):
		client = RecordingClient(client, os.path.join(ensure_dir(llm["record"]), RECORDING_FILE))
	return client


class RunSummary(collections.namedtuple("RunSummary", "status, mode, iterations, run_dir")):
	"""
	Arguments:
	    status (str): ``done``, ``paused`` or ``stopped`` (after a requested last phase).
	    mode (str): Evolution mode.
	    iterations (list): Per completed iteration ``pass_rate``, ``score_mean``, ``mcp_ratio``, ``pool_size``,
	        ``bank_size``, ``generated``, ``quarantined`` and ``expert_skipped``.
	    run_dir (str): The run directory.
	"""

	__slots__ = ()

	def to_dict(self):
		return dict(status=self.status, mode=self.mode, iterations=list(self.iterations))


class Orchestrator(object):
	"""
	Runs the evolution loop in a run directory.

	Arguments:
	    config (RunConfig): The run configuration.
	    simulator (Simulator): Simulator for all environments, the bundled one if ``None``.
	    client (LlmClient): LLM client, created from ``config.llm`` if ``None``.
	    event_manager (EventManager): Event bus of the run, a fresh one if ``None``.
	"""

	def __init__(self, config, simulator=None, client=None, event_manager=None):
		self._logger = logging.getLogger(__name__)
		self._config = config
		self._simulator = simulator if simulator is not None else default_simulator()
		self._client = client if client is not None else create_client(config.llm)
		self._event_manager = event_manager if event_manager is not None else EventManager()

		if config.needs_client and self._client is None:
			raise ConfigurationInvalid("an llm component is configured but neither llm.endpoint nor llm.fixtures is set")

		self._run_dir = ensure_dir(config.run_dir)
		self._store = TrajectoryStore(os.path.join(ensure_dir(self._path("store")), "trajectories.jsonl"))
		self._state = None
		self._seed = None

		self._handlers = {
			Phases.COLLECT_EXPERT: self._collect_expert,
			Phases.ACCUMULATE: self._accumulate,
			Phases.EXPORT_SFT: self._export_sft,
			Phases.EVALUATE: self._evaluate,
			Phases.ANALYZE_GAPS: self._analyze_gaps,
			Phases.PLAN_GENERATION: self._plan_generation,
			Phases.GENERATE_TASKS: self._generate_tasks,
			Phases.BUILD_BANK: self._build_bank,
			Phases.RECORD_MEMORY: self._record_memory
		}

	@property
	def config(self):
		return self._config

	@property
	def state(self):
		return self._state

	#~~ paths

	def _path(self, *parts):
		return os.path.join(self._run_dir, *parts)

	def _iteration_path(self, k, *parts):
		return self._path("iterations", str(k), *parts)

	#~~ the loop

	def run(self, stop_after=None):
		"""
		Runs or resumes the evolution.

		Arguments:
		    stop_after (str): Phase of iteration 0 to stop after, e.g. ``accumulate`` for a collection only run.

		Returns:
		    RunSummary: The summary of all completed iterations.

		Raises:
		    RunLocked: Another process works on the run directory.
		    ConfigurationInvalid: The configuration does not fit the run directory.
		    PhaseFailed: A phase failed, the run can be resumed.
		    EndpointError: An LLM endpoint failed, the run can be resumed.
		"""
		if stop_after is not None and stop_after not in Phases.BASELINE:
			raise ConfigurationInvalid("{} is no phase of the baseline iteration".format(stop_after))

		lock = RunLock(self._path(LOCK_FILE))
		lock.acquire()
		listener = EventLogListener(self._path(EVENTS_FILE), event_manager=self._event_manager)
		try:
			self._state = RunState.load(self._path(STATE_FILE), mode=self._config.mode)
			if self._state.mode is not None and self._state.mode != self._config.mode:
				raise ConfigurationInvalid("run directory holds a {} run, cannot continue it as {}".format(self._state.mode,
				                                                                                        self._config.mode))
			self._validate_policies()

			self._fire(Events.RUN_STARTED, dict(mode=self._config.mode,
			                                    iterations=self._config.iterations,
			                                    resumed=bool(self._state.completed or self._state.done(0))))

			for k in range(self._config.iterations + 1):
				if self._state.is_complete(k):
					continue

				if self._config.student_for(k) is None:
					return self._pause(k)

				for phase in Phases.of(k):
					if self._state.is_done(k, phase):
						continue
					self._run_phase(k, phase)
					if k == 0 and phase == stop_after:
						self._state.status = "stopped"
						self._state.save()
						return self._summary("stopped")

				self._state.complete(k)
				summary = self._summary("running")
				self._fire(Events.ITERATION_DONE, dict(iteration=k, summary=summary.iterations[-1] if summary.iterations else None))

			self._state.status = "done"
			self._state.save()
			summary = self._summary("done")
			self._fire(Events.RUN_DONE, summary.to_dict())
			return summary
		finally:
			self._event_manager.wait_until_idle()
			listener.close()
			lock.release()

	def _run_phase(self, k, phase):
		self._logger.info("Iteration {}: {}".format(k, phase))
		self._state.start(k, phase)
		self._fire(Events.PHASE_STARTED, dict(iteration=k, phase=phase))
		try:
			artifacts = self._handlers[phase](k) or dict()
		except (EndpointError, OrchestratorException) as error:
			self._fail(k, phase, error)
			raise
		except Exception as error:
			self._logger.exception("Phase {} of iteration {} failed".format(phase, k))
			self._fail(k, phase, error)
			raise PhaseFailed(phase, k, _message(error), cause=error)

		self._state.finish(k, phase, **artifacts)
		self._fire(Events.PHASE_DONE, dict(iteration=k, phase=phase, artifacts=artifacts))

	def _fail(self, k, phase, error):
		self._state.fail(k, phase, _message(error))
		self._fire(Events.PHASE_FAILED, dict(iteration=k, phase=phase, error=error.__class__.__name__,
		                                     message=_message(error)))

	def _pause(self, k):
		self._logger.info("Pausing before iteration {}, configure policies.students[{}] to continue".format(k, k))
		self._state.status = "paused"
		self._state.save()
		dataset = self._state.artifact(k - 1, "dataset")
		self._fire(Events.RUN_PAUSED, dict(iteration=k, dataset=dataset))
		return self._summary("paused")

	def _fire(self, event, payload):
		self._event_manager.fire(event, payload)

	def _validate_policies(self):
		library = self._seed_library()
		context = self._context(library)
		designations = [self._config.expert] + list(self._config.students)
		for designation in designations:
			try:
				create_policy(designation, context)
			except UnknownPolicy as error:
				raise ConfigurationInvalid(error.message)

	#~~ shared inputs

	def _seed_library(self):
		if self._seed is None:
			try:
				library = TaskLibrary.load(self._config.library, apps=self._config.apps)
			except (IOError, OSError, ValueError, SimulationException) as error:
				raise ConfigurationInvalid("cannot load the task library: {}".format(_message(error)))
			if self._config.task_limit is not None:
				library = library.limit(self._config.task_limit)
			if not len(library):
				raise ConfigurationInvalid("the task library holds no tasks")
			self._seed = library
		return self._seed

	def _generated_library(self, k):
		if k == 0:
			return TaskLibrary()
		return TaskLibrary.read(self._iteration_path(k, "tasks"))

	def _context(self, library):
		return PolicyContext.create(library,
		                            client=self._client,
		                            model=self._config.llm.get("model"),
		                            student_gaps=self._config.student_gaps)

	def _runner(self, library):
		judge = create_judge(self._config.judge, library=library, client=self._client, model=self._config.llm.get("model"))
		return RolloutRunner(library, judge, self._config.rollout, simulator=self._simulator, workers=self._config.workers)

	def _tools(self, library):
		return dict((app_id, [schema.tool_name for schema in self._simulator.tools(app_id)]) for app_id in library.apps())

	def _pool(self):
		path = self._path("store", "pool.json")
		return DatasetPool.load(path) if os.path.exists(path) else DatasetPool()

	def _bank(self, k):
		path = self._iteration_path(k, "bank.json")
		if k < 0 or not os.path.exists(path):
			return ExperienceBank(capacity=self._config.bank_capacity, iteration=max(k, 0))
		return ExperienceBank.load(path)

	def _memory(self, k):
		path = self._iteration_path(k, "memory.json")
		if k < 0 or not os.path.exists(path):
			return EvolutionMemory()
		return EvolutionMemory.load(path)

	def _profile(self, k):
		return PerformanceProfile.from_dict(read_json(self._iteration_path(k, "profile.json")))

	def _gaps(self, k):
		return GapReport.from_dict(read_json(self._iteration_path(k, "gaps.json")))

	def _evaluation(self, k, library):
		records = []
		for trajectory in _read_trajectories(self._iteration_path(k, "trajectories", "evaluation.jsonl")):
			records.append((library.task(trajectory.task_id), trajectory))
		return records

	#~~ phases

	def _collect_expert(self, k):
		seed = self._seed_library()
		if k == 0:
			seed.save(self._iteration_path(k, "tasks"))
			library, tasks = seed, seed.tasks()
		else:
			generated = self._generated_library(k)
			library, tasks = seed.extend(generated), generated.tasks()

		expert = create_policy(self._config.expert, self._context(library))
		result = self._runner(library).collect_expert(expert, tasks, iteration=k)

		path = self._iteration_path(k, "trajectories", "expert.jsonl")
		ensure_dir(os.path.dirname(path))
		write_jsonl(path, [trajectory.to_dict() for trajectory in result.trajectories])
		write_json(self._iteration_path(k, "trajectories", "expert_skipped.json"), result.skipped)

		known = self._store.ids()
		self._store.append([t for t in result.trajectories if t.trajectory_id not in known], EXPERT_STAGE)
		return dict(expert=path, expert_count=len(result.trajectories), expert_skipped=len(result.skipped))

	def _accumulate(self, k):
		library = self._seed_library()
		if k > 0:
			library = library.extend(self._generated_library(k))

		pairs = [(library.task(t.task_id), t)
		         for t in _read_trajectories(self._iteration_path(k, "trajectories", "expert.jsonl"))]
		if k > 0 and self._config.include_student:
			pairs.extend((library.task(t.task_id), t)
			             for t in _read_trajectories(self._iteration_path(k, "trajectories", "kept.jsonl")))

		pool = self._pool().accumulate(pairs, k)
		path = self._path("store", "pool.json")
		pool.save(path)
		self._fire(Events.POOL_UPDATED, dict(iteration=k, size=len(pool)))
		return dict(pool=path, pool_size=len(pool))

	def _export_sft(self, k):
		if self._config.mode == EXP_ONLY:
			self._logger.info("Experience only run, no dataset export in iteration {}".format(k))
			return dict(sft="skipped")

		pool = self._pool()
		manifest = training_manifest(self._config, k)
		result = export_sft(pool, self._iteration_path(k), manifest, replay_ratio=self._config.replay_ratio,
		                    simulator=self._simulator)
		return dict(dataset=result.dataset, manifest=result.manifest, samples=result.samples)

	def _evaluate(self, k):
		seed = self._seed_library()
		bank = self._bank(k - 1) if k > 0 else ExperienceBank(capacity=self._config.bank_capacity)
		student = create_policy(self._config.student_for(k), self._context(seed))

		result = self._runner(seed).evaluate(student, seed.tasks(), bank=bank, iteration=k,
		                                     attempts=self._config.evaluation_attempts)

		folder = ensure_dir(self._iteration_path(k, "trajectories"))
		write_jsonl(os.path.join(folder, "evaluation.jsonl"), [trajectory.to_dict() for _, trajectory in result.records])
		write_jsonl(os.path.join(folder, "kept.jsonl"), [trajectory.to_dict() for trajectory in result.kept])
		self._store.append([trajectory for _, trajectory in result.records], EVALUATION_STAGE)

		profile = compute_profile([(task, trajectory, trajectory.judge_verdict) for task, trajectory in result.records],
		                          tools=self._tools(seed), iteration=k)
		path = self._iteration_path(k, "profile.json")
		write_json(path, profile.to_dict())
		self._logger.info("Iteration {}: pass rate {}, MCP ratio {}".format(k, profile.pass_rate.value, profile.mcp_ratio))
		return dict(student=student.policy_id, profile=path)

	def _analyze_gaps(self, k):
		gaps = analyze_gaps(self._profile(k), thresholds=self._config.thresholds)
		path = self._iteration_path(k, "gaps.json")
		write_json(path, gaps.to_dict())
		return dict(gaps=path)

	def _plan_generation(self, k):
		plan = plan_generation(self._gaps(k), self._config.budget, epsilon=self._config.epsilon, seed=self._config.seed + k)
		path = self._iteration_path(k, "plan.json")
		write_json(path, plan.to_dict())
		return dict(plan=path)

	def _generate_tasks(self, k):
		seed = self._seed_library()
		plan = GenerationPlan.from_dict(read_json(self._iteration_path(k, "plan.json")))
		generator = create_generator(self._config.generator, client=self._client, model=self._config.llm.get("model"))
		outcome = generate_tasks(plan, generator, seed.apps(), gaps=self._gaps(k), retries=self._config.retries,
		                         iteration=k, simulator=self._simulator)

		library = TaskLibrary()
		quarantined = list(outcome.quarantined)
		for generated in outcome.tasks:
			if generated.task_id in seed or generated.task_id in library:
				quarantined.append(dict(task_id=generated.task_id, request=None,
				                        attempts=[dict(attempt=1, error="duplicate task id")]))
				continue
			library.register(generated.task, generated.checker, generated.solution)

		folder = self._iteration_path(k, "tasks")
		library.save(folder)
		write_json(os.path.join(folder, "validation.json"), outcome.log)
		if quarantined:
			write_json(os.path.join(folder, "quarantine.json"), quarantined)
			for entry in quarantined:
				self._fire(Events.TASK_QUARANTINED, dict(iteration=k, task_id=entry["task_id"]))
		return dict(tasks=folder, generated=len(library), quarantined=len(quarantined))

	def _build_bank(self, k):
		library = self._seed_library()
		if k > 0:
			library = library.extend(self._generated_library(k))

		records = [(record.task, record.trajectory) for record in self._pool().records()]
		records.extend(self._evaluation(k, library))

		model = self._config.llm.get("model")
		extractor = create_extractor(self._config.extractor, client=self._client, model=model,
		                             max_length=self._config.max_rule_length)
		merger = create_merger(self._config.merger, client=self._client, model=model,
		                       max_length=self._config.max_rule_length, over_length=self._config.over_length)

		bank = build_bank(records, self._bank(k - 1), extractor, merger, iteration=k,
		                  max_length=self._config.max_rule_length, over_length=self._config.over_length)
		path = self._iteration_path(k, "bank.json")
		bank.save(path)
		self._fire(Events.BANK_UPDATED, dict(iteration=k, size=len(bank)))
		return dict(bank=path, bank_size=len(bank))

	def _record_memory(self, k):
		seed = self._seed_library()
		memory = record_iteration(self._memory(k - 1),
		                          self._profile(k),
		                          self._pool(),
		                          self._bank(k),
		                          k,
		                          evaluated=self._evaluation(k, seed),
		                          prior_bank=self._bank(k - 1) if k > 0 else None)
		path = self._iteration_path(k, "memory.json")
		memory.save(path)
		return dict(memory=path)

	#~~ summary

	def _summary(self, status):
		iterations = []
		pool = self._pool()
		for k in self._state.completed:
			profile = self._profile(k)
			artifacts = self._state.artifacts(k)
			iterations.append(dict(iteration=k,
			                       pass_rate=profile.pass_rate.value,
			                       score_mean=profile.score_mean.value,
			                       mcp_ratio=profile.mcp_ratio,
			                       pool_size=pool.history.get(k, len(pool)),
			                       bank_size=len(self._bank(k)),
			                       generated=artifacts.get("generated", 0),
			                       quarantined=artifacts.get("quarantined", 0),
			                       expert_skipped=artifacts.get("expert_skipped", 0)))

		summary = RunSummary(status, self._config.mode, iterations, self._run_dir)
		write_json(self._path(SUMMARY_FILE), summary.to_dict())
		return summary


def run_evolution(config, stop_after=None, simulator=None, client=None):
	"""
	Runs or resumes the evolution configured by ``config``.

	Returns:
	    RunSummary: The run summary.
	"""
	return Orchestrator(config, simulator=simulator, client=client).run(stop_after=stop_after)


def _read_trajectories(path):
	return [Trajectory.from_dict(row) for row in read_jsonl(path)]


def _message(error):
	return getattr(error, "message", None) or str(error) or error.__class__.__name__


__all__ = ["RunConfig", "RunSummary", "Orchestrator", "run_evolution", "create_client", "training_manifest", "Phases", "RunState",
           "RunLock", "OrchestratorException", "ConfigurationInvalid", "PhaseFailed", "RunLocked", "EmptyPool",
           "MODES", "DISTILL_EXP", "EXP_ONLY"]
