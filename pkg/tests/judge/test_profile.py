# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import math
import random
import unittest

from evolvecua.judge import EmptyEvaluation, PerformanceProfile, compute_profile
from evolvecua.model import Action, Difficulties, EnvSetupScript, JudgeVerdict, SkillCategories, Step, StepStatus, \
	TaskSpec, TerminationReasons, Trajectory

TOOLS = dict(mini_browser=["bookmark_page", "open_new_tab"])


def task(task_id, difficulty="easy", skills=("navigation_browsing", )):
	return TaskSpec.create(task_id, "Goal of " + task_id, "mini_browser", difficulty, list(skills),
	                       EnvSetupScript.create("mini_browser"), "chk-" + task_id)


def mcp_step(tool="open_new_tab", status=StepStatus.OK, violations=None):
	return Step.create(None, "", Action.mcp(tool), "ok", status=status, violations=violations)


def gui_step():
	return Step.create(None, "", Action.gui("scroll", direction="down"), "Scrolled down")


def garbled_step():
	return Step.create(None, "", None, "Invalid tool call", status=StepStatus.FORMAT_ERROR, raw="garbage")


def terminate_step():
	return Step.create(None, "", Action.terminate(), "Task marked as success")


def trajectory(task_id, steps, terminated_by=TerminationReasons.COMPLETION):
	return Trajectory.create(task_id, "mini_browser", steps, terminated_by)


class ProfileTest(unittest.TestCase):

	def test_modality_shares(self):
		first = trajectory("t1", [mcp_step()] * 4 + [gui_step()] * 6 + [terminate_step()])
		second = trajectory("t2", [gui_step()] * 5 + [terminate_step()])
		evaluated = [(task("t1"), first, None), (task("t2"), second, None)]

		profile = compute_profile(evaluated, tools=TOOLS)
		self.assertEqual(4 / 15, profile.mcp_ratio)
		self.assertAlmostEqual(0.267, profile.mcp_ratio, places=3)
		self.assertEqual(11 / 15, profile.modality["gui"].value)
		self.assertEqual(0.5, profile.modality["hybrid"].value)
		self.assertEqual(dict(mcp=4, gui=11), profile.actions)

	def test_verdict_counts_take_precedence(self):
		steps = [mcp_step(), terminate_step()]
		verdict = JudgeVerdict.create(1.0, True, mcp_actions=0, gui_actions=3)
		profile = compute_profile([(task("t1"), trajectory("t1", steps), verdict)], tools=TOOLS)
		self.assertEqual(0.0, profile.mcp_ratio)
		self.assertEqual(0.0, profile.modality["hybrid"].value)

	def test_pass_rates(self):
		evaluated = [
			(task("t1", "easy", ["data_retrieval", "search_query"]), trajectory("t1", [terminate_step()]),
			 JudgeVerdict.create(1.0, True)),
			(task("t2", "easy", ["data_retrieval"]), trajectory("t2", [terminate_step()]),
			 JudgeVerdict.create(0.5, False)),
			(task("t3", "hard", ["search_query"]), trajectory("t3", [terminate_step()]), None)
		]
		profile = compute_profile(evaluated, tools=TOOLS, iteration=2)

		self.assertEqual(2, profile.iteration)
		self.assertEqual(3, profile.tasks)
		self.assertEqual(1 / 3, profile.pass_rate.value)
		self.assertEqual(0.5, profile.score_mean.value)
		self.assertEqual((0.5, 2), profile.difficulty["easy"])
		self.assertEqual((0.0, 1), profile.difficulty["hard"])
		self.assertEqual((0.5, 2), profile.skills["data_retrieval"])
		self.assertEqual((0.5, 2), profile.skills["search_query"])
		self.assertEqual(2 / 3, profile.format["parse"].value)

	def test_absent_cells(self):
		profile = compute_profile([(task("t1"), trajectory("t1", [terminate_step()]), None)], tools=TOOLS)
		self.assertTrue(profile.difficulty["medium"].absent)
		self.assertEqual(0, profile.difficulty["medium"].support)
		self.assertTrue(profile.skills["data_manipulation"].absent)
		self.assertIsNone(profile.mcp_ratio)
		self.assertTrue(profile.format["args"].absent)
		self.assertEqual(dict(value=None, support=0), profile.to_dict()["modality"]["mcp"])

	def test_format_and_efficiency(self):
		capped = trajectory("t1", [mcp_step(), mcp_step("bookmark_page", status=StepStatus.FAILED, violations=["missing url"]),
		                           garbled_step(), gui_step()], terminated_by=TerminationReasons.STEP_CAP)
		done = trajectory("t2", [mcp_step(), terminate_step()])
		profile = compute_profile([(task("t1"), capped, None), (task("t2"), done, None)], tools=TOOLS)

		self.assertEqual(5 / 6, profile.format["format"].value)
		self.assertEqual((2 / 3, 3), profile.format["args"])
		self.assertEqual(3.0, profile.efficiency["mean_steps"].value)
		self.assertEqual(0.5, profile.efficiency["complete"].value)
		self.assertEqual(0.5, profile.efficiency["timeout"].value)
		self.assertEqual(dict(mini_browser=dict(bookmark_page=0, open_new_tab=2)), profile.tool_usage)

	def test_default_tools(self):
		profile = compute_profile([(task("t1"), trajectory("t1", [mcp_step(), terminate_step()]), None)])
		self.assertEqual(1, profile.tool_usage["mini_browser"]["open_new_tab"])
		self.assertIn("navigate_to", profile.tool_usage["mini_browser"])

	def test_empty(self):
		self.assertRaises(EmptyEvaluation, compute_profile, [])

	def test_dict_round_trip(self):
		first = trajectory("t1", [mcp_step(), gui_step(), terminate_step()])
		profile = compute_profile([(task("t1", "medium"), first, JudgeVerdict.create(0.75, True, 1, 1))], tools=TOOLS)
		data = profile.to_dict()
		self.assertEqual(1, data["version"])
		self.assertEqual(data, PerformanceProfile.from_dict(data).to_dict())


class BruteForceProfileTest(unittest.TestCase):
	"""
	Recounts every metric of randomized evaluations directly and compares with :func:`compute_profile`, exactly.
	"""

	ROUNDS = 100

	def random_step(self, rng):
		choice = rng.random()
		if choice < 0.3:
			return mcp_step(rng.choice(TOOLS["mini_browser"]))
		elif choice < 0.4:
			return mcp_step("bookmark_page", status=StepStatus.FAILED, violations=["missing url"])
		elif choice < 0.45:
			return mcp_step("fly_away", status=StepStatus.FAILED, violations=["unknown tool fly_away"])
		elif choice < 0.85:
			return gui_step()
		return garbled_step()

	def random_evaluation(self, rng):
		evaluated = []
		for i in range(rng.randint(1, 50)):
			task_id = "t{}".format(i)
			skills = rng.sample(SkillCategories.values(), rng.randint(1, 3))
			spec = task(task_id, rng.choice(Difficulties.values()), skills)

			steps = [self.random_step(rng) for _ in range(rng.randint(0, 6))]
			terminated_by = rng.choice(TerminationReasons.values())
			if terminated_by == TerminationReasons.COMPLETION:
				steps.append(terminate_step())
			elif not steps and terminated_by == TerminationReasons.STEP_CAP:
				steps.append(gui_step())

			verdict = None
			if rng.random() < 0.8:
				verdict = JudgeVerdict.create(rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]), rng.random() < 0.5,
				                              mcp_actions=rng.randint(0, 4), gui_actions=rng.randint(0, 4))
			evaluated.append((spec, trajectory(task_id, steps, terminated_by), verdict))
		return evaluated

	def recount(self, evaluated):
		def cell(count, support):
			return dict(value=count / support if support else None, support=support)

		total = len(evaluated)
		succeeded = [v is not None and v.success for _, _, v in evaluated]

		counts = []
		for _, traj, verdict in evaluated:
			if verdict is not None:
				counts.append((verdict.mcp_actions, verdict.gui_actions))
			else:
				counts.append((sum(1 for s in traj.steps if s.action is not None and s.action.is_mcp),
				               sum(1 for s in traj.steps if s.action is not None and s.action.is_gui
				                   and not s.action.is_terminate)))
		mcp = sum(c[0] for c in counts)
		gui = sum(c[1] for c in counts)

		steps = [s for _, traj, _ in evaluated for s in traj.steps]
		decoded = [s for s in steps if s.action is not None]
		calls = [s for s in decoded if s.action.is_mcp]

		usage = dict(mini_browser=dict((name, len([s for s in calls if s.status == StepStatus.OK and s.action.tool_name == name]))
		                               for name in TOOLS["mini_browser"]))

		return dict(
			version=1,
			iteration=0,
			tasks=total,
			pass_rate=cell(sum(succeeded), total),
			score_mean=dict(value=math.fsum(v.score if v is not None else 0.0 for _, _, v in evaluated) / total,
			                support=total),
			actions=dict(mcp=mcp, gui=gui),
			modality=dict(mcp=cell(mcp, mcp + gui),
			              gui=cell(gui, mcp + gui),
			              hybrid=cell(len([c for c in counts if c[0] and c[1]]), total)),
			difficulty=dict((d, cell(len([1 for (t, _, _), ok in zip(evaluated, succeeded) if t.difficulty == d and ok]),
			                         len([1 for t, _, _ in evaluated if t.difficulty == d])))
			                for d in Difficulties.values()),
			skills=dict((c, cell(len([1 for (t, _, _), ok in zip(evaluated, succeeded) if c in t.skills and ok]),
			                     len([1 for t, _, _ in evaluated if c in t.skills])))
			            for c in SkillCategories.values()),
			format=dict(format=cell(len(decoded), len(steps)),
			            parse=cell(len([1 for _, _, v in evaluated if v is not None]), total),
			            args=cell(len([s for s in calls if not s.violations]), len(calls))),
			efficiency=dict(mean_steps=cell(len(steps), total),
			                complete=cell(len([1 for _, t, _ in evaluated if t.terminated_by == TerminationReasons.COMPLETION]), total),
			                timeout=cell(len([1 for _, t, _ in evaluated if t.terminated_by == TerminationReasons.STEP_CAP]), total)),
			tool_usage=usage
		)

	def test_matches_recount(self):
		rng = random.Random(20260517)
		for index in range(self.ROUNDS):
			evaluated = self.random_evaluation(rng)
			self.assertEqual(self.recount(evaluated), compute_profile(evaluated, tools=TOOLS).to_dict(), index)

	def test_order_independent(self):
		rng = random.Random(7)
		for _ in range(10):
			evaluated = self.random_evaluation(rng)
			shuffled = list(evaluated)
			rng.shuffle(shuffled)
			expected = compute_profile(evaluated, tools=TOOLS).to_dict()
			actual = compute_profile(shuffled, tools=TOOLS).to_dict()
			self.assertEqual(expected, actual)
