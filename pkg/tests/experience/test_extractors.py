# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import unittest

import mock
from ddt import ddt, data, unpack

from evolvecua.experience import ExperienceEntry
from evolvecua.experience.exceptions import ExtractionFailed
from evolvecua.experience.extractors import DOTTED_NAMES_RULE, PRIVACY_RULE, DeterministicExtractor, Draft, \
	LlmExtractor, describe, differentiating_step, effect_of, modality_rule
from evolvecua.experience.mergers import LlmMerger, RecencyMerger
from evolvecua.model import Action, Element, JudgeVerdict, ScreenState, Step, StepStatus, TaskSpec, TerminationReasons, \
	Trajectory

TASK = TaskSpec.create("browser-e01", "Open the print dialog for the current page.", "mini_browser", "easy",
                       ["execution_automation"], None, "chk-browser-e01")

SCREEN = ScreenState.create("mini_browser", [Element("page", "document", "Alpha", (0, 80, 1000, 700), ()),
                                             Element("bookmark-star", "button", "Bookmark this page", (920, 40, 30, 30), ())])


def step(action, result="ok", **kwargs):
	return Step.create(kwargs.pop("observation", None), "", action, result, **kwargs)


def trajectory(steps, success, policy_id="p"):
	result = Trajectory.create(TASK.task_id, TASK.app_id, steps, TerminationReasons.COMPLETION, policy_id=policy_id)
	return result.with_verdict(JudgeVerdict.create(1.0 if success else 0.0, success))


def keys(chord):
	return Action.gui("key_combo", keys=chord)


@ddt
class DescribeTest(unittest.TestCase):

	@data(
		("Print dialog opened", "continue the task", "open print dialog"),
		("Closed tab reopened", "continue the task", "reopen closed tab"),
		("Page loaded: https://a.example/docs", "continue the task", "load page"),
		("Page bookmarked", "continue the task", "bookmark page"),
		("A1 = 5", "read cell", "read cell"),
		("", "continue the task", "continue the task"),
		(None, "x", "x")
	)
	@unpack
	def test_effect_of(self, result, fallback, expected):
		self.assertEqual(expected, effect_of(result, fallback=fallback))

	def test_key_combo(self):
		self.assertEqual(Draft("Use Ctrl+P to open print dialog", "environment_knowledge"),
		                 describe(step(keys("Ctrl+P"), "Print dialog opened")))

	def test_tool_call(self):
		action = Action.mcp("bookmark_page", dict(url="https://b.example"))
		self.assertEqual(Draft("Call bookmark_page(url) to bookmark page", "tool_pattern"),
		                 describe(step(action, "Page bookmarked")))
		self.assertEqual("Call get_range(range) to get range",
		                 describe(step(Action.mcp("get_range", dict(range="A1:B2")), "Range Sheet1!A1:B2: 1, 2; 3, 4")).text)

	def test_click_uses_label(self):
		click = Action.gui("click", coordinates=(935, 55))
		self.assertEqual(Draft("Click Bookmark this page to bookmark page", "strategy"),
		                 describe(step(click, "Page bookmarked", observation=SCREEN)))
		self.assertEqual("Click the element at 935,55 to continue the task", describe(step(click, "Nothing")).text)

	def test_other_gui_actions(self):
		self.assertEqual("Type \"Ada\" to continue the task", describe(step(Action.gui("type_text", text="Ada"))).text)
		self.assertEqual("Scroll down to scroll page", describe(step(Action.gui("scroll", direction="down"), "Page scrolled")).text)
		self.assertEqual("Take a screenshot to continue the task", describe(step(Action.gui("screenshot"))).text)
		self.assertEqual("Double-click Alpha to continue the task",
		                 describe(step(Action.gui("double_click", coordinates=(10, 100)), observation=SCREEN)).text)

	def test_nothing_to_describe(self):
		self.assertIsNone(describe(step(Action.terminate())))
		self.assertIsNone(describe(step(None, "Invalid tool call", status=StepStatus.FORMAT_ERROR)))

	def test_differentiating_step(self):
		success = trajectory([step(Action.gui("scroll", direction="down")), step(keys("Ctrl+P")), step(Action.terminate())], True)
		failure = trajectory([step(Action.gui("scroll", direction="down")), step(Action.terminate(success=False))], False)
		self.assertEqual(keys("Ctrl+P"), differentiating_step(success, failure).action)
		self.assertIsNone(differentiating_step(success, success))

	@data(
		([Action.mcp("open_new_tab")], "Prefer MCP tools such as open_new_tab over GUI actions"),
		([Action.mcp("open_privacy_settings"), Action.gui("click", coordinates=(640, 200))],
		 "Combine MCP tools such as open_privacy_settings with GUI actions for the remaining steps"),
		([keys("Ctrl+T")], "Solve these tasks with GUI actions when no MCP tool fits"),
		([], None)
	)
	@unpack
	def test_modality_rule(self, actions, expected):
		success = trajectory([step(action) for action in actions] + [step(Action.terminate())], True)
		rule = modality_rule(success)
		self.assertEqual(expected, rule.text if rule is not None else None)


class DeterministicExtractorTest(unittest.TestCase):

	def setUp(self):
		self.extractor = DeterministicExtractor()
		self.success = trajectory([step(keys("Ctrl+P"), "Print dialog opened"), step(Action.terminate())], True)

	def test_without_failure(self):
		self.assertEqual([Draft("Solve these tasks with GUI actions when no MCP tool fits", "strategy")],
		                 self.extractor.rules(TASK, self.success, None, "execution_automation"))

	def test_dotted_names(self):
		dotted = step(None, "Invalid tool call", status=StepStatus.FORMAT_ERROR,
		              raw='<tool_call>\n{"name":"mini_browser.print","arguments":{}}\n</tool_call>')
		failure = trajectory([dotted, step(Action.terminate(success=False))], False)

		rules = self.extractor.rules(TASK, self.success, failure, "execution_automation")
		self.assertEqual([Draft("Use Ctrl+P to open print dialog", "environment_knowledge"),
		                  Draft(DOTTED_NAMES_RULE, "tool_pattern")], rules)

	def test_unregistered_tool(self):
		call = step(Action.mcp("print_page"), "Action failed: bad call of print_page: unknown tool print_page",
		            status=StepStatus.FAILED, violations=["unknown tool print_page"])
		failure = trajectory([call, call, step(Action.terminate(success=False))], False)

		rules = self.extractor.rules(TASK, self.success, failure, "execution_automation")
		self.assertEqual(["Use Ctrl+P to open print dialog", "If print_page is unavailable, use Ctrl+P to open print dialog"],
		                 [rule.text for rule in rules])
		self.assertEqual("error_recovery", rules[1].knowledge_type)

	def test_same_actions_fall_back_to_modality(self):
		failure = trajectory([step(keys("Ctrl+P"), "Print dialog opened"), step(Action.terminate(success=False))], False)
		self.assertEqual(["Solve these tasks with GUI actions when no MCP tool fits"],
		                 [rule.text for rule in self.extractor.rules(TASK, self.success, failure, "execution_automation")])

	def test_privacy_rule(self):
		success = trajectory([step(Action.mcp("open_privacy_settings"), "Privacy settings opened"),
		                      step(Action.gui("click", coordinates=(640, 200)), "Do not track enabled"),
		                      step(Action.terminate())], True)
		rules = self.extractor.rules(TASK, success, None, "configuration_settings")
		self.assertEqual(["Combine MCP tools such as open_privacy_settings with GUI actions for the remaining steps",
		                  PRIVACY_RULE], [rule.text for rule in rules])


class LlmExtractorTest(unittest.TestCase):

	def setUp(self):
		self.client = mock.Mock()
		self.extractor = LlmExtractor(self.client, model="extractor", limit=2, max_length=120)
		self.success = trajectory([step(keys("Ctrl+P"), "Print dialog opened"), step(Action.terminate())], True)

	def test_rules(self):
		self.client.complete.return_value = ('Rules:\n[{"text": "Use Ctrl+P to open print dialog", "knowledge_type": "environment_knowledge"},'
		                                     ' {"text": "Dance", "knowledge_type": "interpretive"},'
		                                     ' {"text": "Use Ctrl+P to open print dialog", "knowledge_type": "strategy"}]')
		rules = self.extractor.rules(TASK, self.success, None, "execution_automation")
		self.assertEqual([Draft("Use Ctrl+P to open print dialog", "environment_knowledge")], rules)

		prompt = self.client.complete.call_args[0][0]["messages"][0]["content"]
		self.assertIn("There is no failed attempt", prompt)
		self.assertIn("Write at most 2 concise, imperative rules", prompt)
		self.assertIn("shorter than 120 characters", prompt)

	def test_failure_in_prompt(self):
		failure = trajectory([step(Action.gui("scroll", direction="down"), "Page scrolled"),
		                      step(Action.terminate(success=False))], False)
		prompt = self.extractor.prompt(TASK, self.success, failure, "execution_automation")
		self.assertIn("Failed attempt:\nStep 1: [gui] scroll[direction='down'] -> Page scrolled", prompt)

	def test_unusable_response(self):
		self.client.complete.return_value = "[1, 2, 3] and nothing else"
		with self.assertRaises(ExtractionFailed) as context:
			self.extractor.rules(TASK, self.success, None, "execution_automation")
		self.assertEqual("[1, 2, 3] and nothing else", context.exception.response)


def entry(text, iteration=0, sources=("s", )):
	return ExperienceEntry.create(text, "strategy", "search_query", "mini_browser", sources=sources,
	                              created_iteration=iteration)


class MergerTest(unittest.TestCase):

	def test_recency(self):
		old = [entry("a"), entry("b")]
		self.assertEqual([entry("b"), entry("c")], RecencyMerger().merge(old, [entry("c")], 2))

	def test_llm_merge(self):
		client = mock.Mock()
		client.complete.return_value = '["Search before opening results", "x' + "y" * 40 + '"]'
		merger = LlmMerger(client, max_length=20)

		merged = merger.merge([entry("a", sources=("s1", ))], [entry("b", iteration=2, sources=("s2", "s1"))], 1)
		self.assertEqual(["Search before openin", "x" + "y" * 19], [e.text for e in merged])
		self.assertTrue(all(e.sources == ("s1", "s2") for e in merged))
		self.assertTrue(all(e.created_iteration == 2 for e in merged))
		self.assertTrue(all(e.key == ("mini_browser", "search_query", "strategy") for e in merged))

		prompt = client.complete.call_args[0][0]["messages"][0]["content"]
		self.assertIn("Existing rules:\n- a\n", prompt)
		self.assertIn("New rules:\n- b\n", prompt)
		self.assertIn("at most 1 concise rules", prompt)

	def test_llm_merge_falls_back(self):
		client = mock.Mock()
		client.complete.return_value = "I merged them nicely."
		merged = LlmMerger(client).merge([entry("a"), entry("b")], [entry("c")], 2)
		self.assertEqual(["b", "c"], [e.text for e in merged])

	def test_llm_merge_drops_everything(self):
		client = mock.Mock()
		client.complete.return_value = '["' + "z" * 50 + '"]'
		merged = LlmMerger(client, max_length=10, over_length="drop").merge([entry("a")], [entry("b")], 1)
		self.assertEqual(["b"], [e.text for e in merged])
