# coding=utf-8
"""
The performance profile, five dimensions of metrics over one evaluation:

  * modality: share of MCP and GUI actions, share of trajectories mixing both
  * difficulty: pass rate per difficulty
  * skills: pass rate per skill category, a task counts once for every category it is tagged with
  * format: parseable emitted actions, parsed judge responses, schema valid MCP calls
  * efficiency: mean steps, share of trajectories completed by ``terminate`` and cut by the step cap

Every metric is a :class:`Cell` carrying its sample count. Cells without samples are absent (``value`` is
``None``), never zero.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import math

from evolvecua.model import Difficulties, SkillCategories, StepStatus, TerminationReasons

from .exceptions import EmptyEvaluation

PROFILE_VERSION = 1


class Cell(collections.namedtuple("Cell", "value, support")):
	__slots__ = ()

	@classmethod
	def ratio(cls, count, support):
		return cls(count / support if support else None, support)

	@property
	def absent(self):
		return self.value is None

	def to_dict(self):
		return dict(value=self.value, support=self.support)

	@classmethod
	def from_dict(cls, data):
		return cls(data.get("value"), data.get("support", 0))


def action_counts(trajectory, verdict):
	"""
	Returns ``(mcp, gui)`` as reported by the verdict, falling back to the counts of the decoded steps for
	trajectories without a verdict.
	"""
	if verdict is not None:
		return verdict.mcp_actions, verdict.gui_actions
	return trajectory.modality_counts()


class PerformanceProfile(collections.namedtuple("PerformanceProfile", "iteration, tasks, pass_rate, score_mean, "
                                                                      "actions, modality, difficulty, skills, format, "
                                                                      "efficiency, tool_usage")):
	"""
	Arguments:
	    iteration (int): Iteration the evaluation belongs to.
	    tasks (int): Number of evaluated tasks.
	    pass_rate (Cell): Share of successful trajectories.
	    score_mean (Cell): Mean verdict score, trajectories without verdict score 0.
	    actions (dict): Total ``mcp`` and ``gui`` action counts.
	    modality (dict): Cells ``mcp``, ``gui`` and ``hybrid``.
	    difficulty (dict): One cell per difficulty.
	    skills (dict): One cell per skill category.
	    format (dict): Cells ``format``, ``parse`` and ``args``.
	    efficiency (dict): Cells ``mean_steps``, ``complete`` and ``timeout``.
	    tool_usage (dict): Successful invocations per registered tool, keyed by application id.
	"""

	__slots__ = ()

	@property
	def mcp_ratio(self):
		return self.modality["mcp"].value

	def to_dict(self):
		def cells(d):
			return dict((key, cell.to_dict()) for key, cell in d.items())

		return dict(version=PROFILE_VERSION,
		            iteration=self.iteration,
		            tasks=self.tasks,
		            pass_rate=self.pass_rate.to_dict(),
		            score_mean=self.score_mean.to_dict(),
		            actions=dict(self.actions),
		            modality=cells(self.modality),
		            difficulty=cells(self.difficulty),
		            skills=cells(self.skills),
		            format=cells(self.format),
		            efficiency=cells(self.efficiency),
		            tool_usage=dict((app_id, dict(usage)) for app_id, usage in self.tool_usage.items()))

	@classmethod
	def from_dict(cls, data):
		def cells(d):
			return collections.OrderedDict((key, Cell.from_dict(value)) for key, value in sorted(d.items()))

		return cls(data.get("iteration", 0),
		           data.get("tasks", 0),
		           Cell.from_dict(data["pass_rate"]),
		           Cell.from_dict(data["score_mean"]),
		           dict(data.get("actions", dict())),
		           cells(data["modality"]),
		           cells(data["difficulty"]),
		           cells(data["skills"]),
		           cells(data["format"]),
		           cells(data["efficiency"]),
		           dict((app_id, dict(usage)) for app_id, usage in data.get("tool_usage", dict()).items()))


def compute_profile(evaluated, tools=None, iteration=0):
	"""
	Computes the performance profile of an evaluation. A pure fold, the result does not depend on the order of
	``evaluated``.

	Arguments:
	    evaluated (list): ``(task, trajectory, verdict)`` triples, ``verdict`` is ``None`` where the judge response
	        could not be parsed.
	    tools (dict): Registered tool names per application id, the keys of ``tool_usage``. Defaults to the tools of
	        the bundled applications of every evaluated application.
	    iteration (int): Iteration stamp of the profile.

	Returns:
	    PerformanceProfile: The profile.

	Raises:
	    EmptyEvaluation: ``evaluated`` is empty.
	"""
	evaluated = list(evaluated)
	if not evaluated:
		raise EmptyEvaluation()

	if tools is None:
		from evolvecua.sim import simulator
		tools = dict((app_id, [schema.tool_name for schema in simulator().tools(app_id)])
		             for app_id in sorted(set(task.app_id for task, _, _ in evaluated)))

	total = len(evaluated)
	passed = 0
	scores = []
	mcp_total = gui_total = hybrid = 0

	difficulty_support = collections.Counter()
	difficulty_passed = collections.Counter()
	skill_support = collections.Counter()
	skill_passed = collections.Counter()

	emitted = parseable = 0
	parsed_verdicts = 0
	mcp_calls = valid_calls = 0

	steps_total = complete = timeout = 0
	usage = dict((app_id, dict((name, 0) for name in names)) for app_id, names in tools.items())

	for task, trajectory, verdict in evaluated:
		success = verdict is not None and verdict.success
		if success:
			passed += 1
		scores.append(verdict.score if verdict is not None else 0.0)
		if verdict is not None:
			parsed_verdicts += 1

		mcp, gui = action_counts(trajectory, verdict)
		mcp_total += mcp
		gui_total += gui
		if mcp > 0 and gui > 0:
			hybrid += 1

		difficulty_support[task.difficulty] += 1
		if success:
			difficulty_passed[task.difficulty] += 1
		for skill in set(task.skills):
			skill_support[skill] += 1
			if success:
				skill_passed[skill] += 1

		for step in trajectory.steps:
			emitted += 1
			if step.action is None:
				continue
			parseable += 1
			if step.action.is_mcp:
				mcp_calls += 1
				if not step.violations:
					valid_calls += 1
				if step.status == StepStatus.OK and step.action.tool_name in usage.get(trajectory.app_id, dict()):
					usage[trajectory.app_id][step.action.tool_name] += 1

		steps_total += trajectory.step_count
		if trajectory.terminated_by == TerminationReasons.COMPLETION:
			complete += 1
		elif trajectory.terminated_by == TerminationReasons.STEP_CAP:
			timeout += 1

	actions_total = mcp_total + gui_total
	modality = collections.OrderedDict([
		("gui", Cell.ratio(gui_total, actions_total)),
		("hybrid", Cell.ratio(hybrid, total)),
		("mcp", Cell.ratio(mcp_total, actions_total))
	])
	difficulty = collections.OrderedDict((d, Cell.ratio(difficulty_passed[d], difficulty_support[d]))
	                                     for d in sorted(Difficulties.values()))
	skills = collections.OrderedDict((s, Cell.ratio(skill_passed[s], skill_support[s]))
	                                 for s in sorted(SkillCategories.values()))
	format = collections.OrderedDict([
		("args", Cell.ratio(valid_calls, mcp_calls)),
		("format", Cell.ratio(parseable, emitted)),
		("parse", Cell.ratio(parsed_verdicts, total))
	])
	efficiency = collections.OrderedDict([
		("complete", Cell.ratio(complete, total)),
		("mean_steps", Cell.ratio(steps_total, total)),
		("timeout", Cell.ratio(timeout, total))
	])

	return PerformanceProfile(iteration,
	                          total,
	                          Cell.ratio(passed, total),
	                          Cell(math.fsum(scores) / total, total),
	                          dict(mcp=mcp_total, gui=gui_total),
	                          modality,
	                          difficulty,
	                          skills,
	                          format,
	                          efficiency,
	                          usage)
