# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import unittest

from ddt import ddt, data, unpack

from evolvecua.model import Action, EnvSetupScript
from evolvecua.sim import Checker, Simulator
from evolvecua.sim.app import normalize_keys
from evolvecua.sim.browser import normalize_url, search
from evolvecua.sim.exceptions import ActionFailed, SetupError, UnknownApplication


def click(x, y):
	return Action.gui("click", coordinates=(x, y))


def keys(chord):
	return Action.gui("key_combo", keys=chord)


@ddt
class BrowserTest(unittest.TestCase):

	def setUp(self):
		self.simulator = Simulator()

	def reset(self, **state):
		return self.simulator.reset(EnvSetupScript.create("mini_browser", state=state))

	def run_actions(self, env, actions):
		for action in actions:
			env.apply(action)
		return env

	##~~ GUI and MCP paths reach the same state

	def test_print_dialog_by_shortcut_and_menu(self):
		shortcut = self.run_actions(self.reset(tabs=["https://a.example"]), [keys("Ctrl+P")])
		menu = self.run_actions(self.reset(tabs=["https://a.example"]), [click(1255, 55), click(1150, 210)])

		self.assertTrue(shortcut.fact("print_dialog_open"))
		self.assertTrue(menu.fact("print_dialog_open"))
		self.assertEqual(shortcut.snapshot(), menu.snapshot())

	def test_bookmark_by_tool_and_star(self):
		tool = self.run_actions(self.reset(tabs=["https://b.example"]),
		                        [Action.mcp("bookmark_page", dict(url="https://b.example"))])
		star = self.run_actions(self.reset(tabs=["https://b.example"]), [click(935, 55)])

		self.assertEqual(["https://b.example"], tool.fact("bookmarks"))
		self.assertEqual(tool.snapshot(), star.snapshot())

	def test_navigate_by_tool_and_address_bar(self):
		tool = self.run_actions(self.reset(tabs=["https://a.example"]),
		                        [Action.mcp("navigate_to", dict(url="c.example"))])
		gui = self.run_actions(self.reset(tabs=["https://a.example"]),
		                       [keys("Ctrl+L"), Action.gui("type_text", text="c.example"), keys("Enter")])

		self.assertEqual("https://c.example", tool.fact("active_url"))
		self.assertEqual(["https://c.example"], tool.fact("history"))
		self.assertEqual(tool.snapshot(), gui.snapshot())

	def test_restore_closed_tab_by_tool_and_shortcut(self):
		tool = self.run_actions(self.reset(tabs=["https://a.example"], closed_tabs=["https://news.example"]),
		                        [Action.mcp("bring_back_last_tab")])
		gui = self.run_actions(self.reset(tabs=["https://a.example"], closed_tabs=["https://news.example"]),
		                       [keys("ctrl+shift+t")])

		self.assertEqual(["https://a.example", "https://news.example"], tool.fact("tabs"))
		self.assertEqual(0, tool.fact("closed_tab_count"))
		self.assertEqual(tool.snapshot(), gui.snapshot())

	##~~ state machine

	def test_apply_returns_result_and_screen(self):
		env = self.reset(tabs=["https://a.example"])
		result, screen = env.apply(keys("Ctrl+P"))

		self.assertEqual("Print dialog opened", result)
		self.assertEqual("mini_browser", screen.app_id)
		self.assertIsNotNone(screen.element("print-dialog"))

	def test_dialog_blocks_other_input(self):
		env = self.reset(tabs=["https://a.example"], print_dialog_open=True)
		before = env.snapshot()

		self.assertRaises(ActionFailed, env.apply, keys("Ctrl+T"))
		self.assertRaises(ActionFailed, env.apply, click(935, 55))
		self.assertRaises(ActionFailed, env.apply, Action.gui("type_text", text="x"))
		self.assertEqual(before, env.snapshot())

		env.apply(keys("Escape"))
		self.assertFalse(env.fact("print_dialog_open"))

	def test_print_confirms_with_enter(self):
		env = self.run_actions(self.reset(tabs=["https://a.example/docs"]), [keys("Ctrl+P"), keys("Enter")])
		self.assertEqual(["https://a.example/docs"], env.fact("printed_pages"))
		self.assertFalse(env.fact("print_dialog_open"))

	def test_search(self):
		env = self.run_actions(self.reset(), [Action.mcp("navigate_to", dict(url="Alpha Docs"))])
		self.assertEqual("https://search.example/?q=alpha+docs", env.fact("active_url"))
		self.assertEqual(["https://a.example/docs"], search("alpha docs"))

		result, screen = env.apply(Action.mcp("get_page_content"))
		self.assertEqual("Title: Search: alpha docs\n"
		                 "URL: https://search.example/?q=alpha+docs\n"
		                 "1 results for alpha docs\n"
		                 "Links: Alpha Docs", result)
		self.assertEqual("Alpha Docs", screen.element("link-0").label)

	def test_follow_link_and_back(self):
		env = self.run_actions(self.reset(tabs=["https://a.example"]), [click(100, 135)])
		self.assertEqual("https://a.example/docs", env.fact("active_url"))

		env.apply(click(25, 55))
		self.assertEqual("https://a.example", env.fact("active_url"))
		self.assertRaises(ActionFailed, env.apply, click(25, 55))

	def test_form_submission(self):
		env = self.reset(tabs=["https://forms.example/contact"])
		self.assertRaises(ActionFailed, env.apply, click(100, 395))

		self.run_actions(env, [click(100, 315), Action.gui("type_text", text="Ada"),
		                       click(100, 355), Action.gui("type_text", text="ada@example.org"),
		                       keys("Enter")])
		self.assertEqual([dict(name="Ada", email="ada@example.org")], env.fact("submitted_forms"))

	def test_clear_history(self):
		env = self.reset(history=["https://a.example", "https://b.example"])
		env.apply(Action.mcp("navigate_to", dict(url="https://c.example")))
		env.apply(Action.mcp("delete_browsing_data", dict(time_range="last_hour")))
		self.assertEqual(["https://a.example", "https://b.example"], env.fact("history"))

		env.apply(Action.mcp("delete_browsing_data"))
		self.assertEqual([], env.fact("history"))
		self.assertTrue(env.fact("data_cleared"))

	def test_close_last_tab_fails(self):
		env = self.reset()
		self.assertRaises(ActionFailed, env.apply, keys("Ctrl+W"))

	@data(
		(Action.mcp("fly_away"), ),
		(Action.mcp("switch_tab", dict(index=3)), ),
		(Action.mcp("switch_tab", dict(index="0")), ),
		(Action.mcp("navigate_to", dict()), ),
		(Action.mcp("delete_browsing_data", dict(time_range="yesterday")), ),
		(click(5000, 5), ),
		(keys("Ctrl+Q"), )
	)
	@unpack
	def test_rejected_actions_keep_state(self, action):
		env = self.reset(tabs=["https://a.example"])
		before = env.snapshot()
		self.assertRaises(ActionFailed, env.apply, action)
		self.assertEqual(before, env.snapshot())

	def test_terminate_records_answer(self):
		env = self.reset()
		result, _ = env.apply(Action.terminate(answer="Alpha Docs"))
		self.assertEqual("Task marked as success", result)
		self.assertEqual("Alpha Docs", env.fact("answer"))

	def test_handles_are_isolated(self):
		first = self.reset(tabs=["https://a.example"])
		second = self.reset(tabs=["https://a.example"])
		first.apply(keys("Ctrl+T"))
		self.assertEqual(2, first.fact("tab_count"))
		self.assertEqual(1, second.fact("tab_count"))

	def test_closed_handle(self):
		env = self.reset()
		env.close()
		self.assertRaises(ActionFailed, env.apply, keys("Ctrl+T"))

	##~~ setup

	@data(
		dict(colour="red"),
		dict(tabs=[]),
		dict(tabs=["not a url"]),
		dict(active=3),
		dict(bookmarks=["https://a.example", "https://a.example"]),
		dict(print_dialog_open=True, save_dialog_open=True),
		dict(settings=dict(javascript=True)),
		dict(form=dict(name="x"))
	)
	def test_invalid_setup(self, state):
		self.assertRaises(SetupError, self.simulator.reset, EnvSetupScript.create("mini_browser", state=state))

	def test_expected_predicates(self):
		ok = EnvSetupScript.create("mini_browser", state=dict(tabs=["https://a.example"]),
		                           expected=[dict(fact="active_url", op="eq", value="https://a.example")])
		self.simulator.reset(ok)

		failing = EnvSetupScript.create("mini_browser", expected=[dict(fact="tab_count", op="eq", value=2)])
		with self.assertRaises(SetupError) as context:
			self.simulator.reset(failing)
		self.assertEqual("predicate unsatisfied: tab_count eq 2", context.exception.reason)

		malformed = EnvSetupScript.create("mini_browser", expected=[dict(fact="tab_count", op="is")])
		self.assertRaises(SetupError, self.simulator.reset, malformed)

	def test_unknown_application(self):
		self.assertRaises(UnknownApplication, self.simulator.reset, EnvSetupScript.create("mini_paint"))

	def test_check_against_other_app(self):
		env = self.reset()
		checker = Checker.create("chk", "mini_sheet", [dict(fact="selection", op="eq", value="A1")])
		verdict = env.check(checker)
		self.assertEqual(0.0, verdict.score)
		self.assertFalse(verdict.success)

	def test_tools(self):
		names = [schema.tool_name for schema in self.simulator.tools("mini_browser")]
		self.assertEqual(["navigate_to", "open_new_tab", "switch_tab", "get_page_content", "bring_back_last_tab",
		                  "bookmark_page", "delete_browsing_data", "open_privacy_settings"], names)


@ddt
class HelpersTest(unittest.TestCase):

	@data(
		("shift+ctrl+t", "Ctrl+Shift+T"),
		("control + pagedown", "Ctrl+PageDown"),
		("ESC", "Escape"),
		("cmd+alt+x", "Alt+Meta+X"),
		("Ctrl+Shift+Delete", "Ctrl+Shift+Delete")
	)
	@unpack
	def test_normalize_keys(self, chord, expected):
		self.assertEqual(expected, normalize_keys(chord))

	@data(
		("c.example", "https://c.example"),
		("https://a.example/", "https://a.example"),
		("about:blank", "about:blank"),
		("  weather ", "https://search.example/?q=weather"),
		("Alpha Docs", "https://search.example/?q=alpha+docs")
	)
	@unpack
	def test_normalize_url(self, text, expected):
		self.assertEqual(expected, normalize_url(text))
