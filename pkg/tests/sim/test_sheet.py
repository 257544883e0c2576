# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import unittest

from ddt import ddt, data, unpack

from evolvecua.model import Action, EnvSetupScript
from evolvecua.sim import Simulator
from evolvecua.sim.exceptions import ActionFailed, SetupError, UnknownFact
from evolvecua.sim.sheet import display, parse_input, parse_ref


def cell(ref):
	"""Center of a grid cell on screen."""
	column, row = parse_ref(ref)
	return Action.gui("click", coordinates=(60 + 100 * "ABCDEF".index(column) + 50, 100 + 25 * (row - 1) + 12))


def keys(chord):
	return Action.gui("key_combo", keys=chord)


def tool(tool_name, **arguments):
	return Action.mcp(tool_name, arguments)


@ddt
class SpreadsheetTest(unittest.TestCase):

	def setUp(self):
		self.simulator = Simulator()

	def reset(self, **state):
		return self.simulator.reset(EnvSetupScript.create("mini_sheet", state=state))

	def run_actions(self, env, actions):
		for action in actions:
			env.apply(action)
		return env

	##~~ GUI and MCP paths reach the same cell values

	def test_enter_value_by_tool_and_typing(self):
		mcp = self.run_actions(self.reset(), [tool("set_cell", ref="B2", value=7)])
		gui = self.run_actions(self.reset(), [cell("B2"), Action.gui("type_text", text="7"), keys("Enter")])

		self.assertEqual(7, mcp.fact("cell:B2"))
		self.assertEqual(mcp.fact("raw:B2"), gui.fact("raw:B2"))
		self.assertEqual("B3", gui.fact("selection"))
		self.assertFalse(gui.fact("editing"))

	def test_bold_by_tool_and_shortcut(self):
		mcp = self.run_actions(self.reset(cells=dict(A1="Title")), [tool("set_format", range="A1", format="bold")])
		gui = self.run_actions(self.reset(cells=dict(A1="Title")), [cell("A1"), keys("Ctrl+B")])

		self.assertEqual(["bold"], mcp.fact("format:A1"))
		self.assertEqual(mcp.snapshot(), gui.snapshot())

	def test_switch_sheet_by_tool_and_tab(self):
		state = dict(sheets=dict(Sheet1=dict(A1=1), Data=dict(A1=2)))
		mcp = self.run_actions(self.reset(**state), [tool("switch_sheet", name="Data")])
		gui = self.run_actions(self.reset(**state), [Action.gui("click", coordinates=(235, 780))])
		shortcut = self.run_actions(self.reset(**state), [keys("Ctrl+PageDown")])

		self.assertEqual("Data", mcp.fact("active_sheet"))
		self.assertEqual(mcp.snapshot(), gui.snapshot())
		self.assertEqual(mcp.snapshot(), shortcut.snapshot())

	##~~ values and formulas

	def test_formulas(self):
		env = self.reset(cells=dict(A1=2, A2=3, B1="=A1*10"))
		env.apply(tool("set_cell", ref="A3", value="=SUM(A1:A2)"))
		self.assertEqual(5, env.fact("cell:A3"))
		self.assertEqual("=SUM(A1:A2)", env.fact("raw:A3"))
		self.assertEqual(20, env.fact("cell:B1"))

		env.apply(tool("set_cell", ref="A1", value="4"))
		self.assertEqual(7, env.fact("cell:A3"))
		self.assertEqual(40, env.fact("cell:B1"))

	def test_formula_errors(self):
		env = self.reset(cells=dict(A1="=A2", A2="=A1", B1="=1/0", C1="=NOPE(1)"))
		self.assertEqual("#CYCLE", env.fact("cell:A1"))
		self.assertEqual("#DIV/0!", env.fact("cell:B1"))
		self.assertEqual("#ERROR", env.fact("cell:C1"))

	def test_cross_sheet_reference(self):
		env = self.reset(sheets=dict(Sheet1=dict(A1="=Data!B2*2"), Data=dict(B2=21)))
		self.assertEqual(42, env.fact("cell:A1"))
		self.assertEqual(21, env.fact("cell:Data!B2"))

	def test_get_cell_and_range(self):
		env = self.reset(cells=dict(A1=12, A2=0.25, B1="x"), formats={"A1": ["currency"], "A2": ["percent"]})

		result, _ = env.apply(tool("get_cell", ref="a1"))
		self.assertEqual("A1 = $12.00", result)
		result, _ = env.apply(tool("get_cell", ref="C5"))
		self.assertEqual("C5 = (empty)", result)
		result, _ = env.apply(tool("get_range", range="A1:B2"))
		self.assertEqual("Range Sheet1!A1:B2: $12.00, x; 25%, ", result)

	def test_calculate_does_not_write(self):
		env = self.reset(cells=dict(A1=2, A2=3))
		before = env.snapshot()
		result, _ = env.apply(tool("calculate", formula="=AVERAGE(A1:A2)"))
		self.assertEqual("Result: 2.5", result)
		result, _ = env.apply(tool("calculate", formula="=A1/0"))
		self.assertEqual("Result: #DIV/0!", result)
		self.assertEqual(before, env.snapshot())

	def test_search_cells(self):
		env = self.reset(sheets=dict(Sheet1=dict(A1="Revenue", B3="revenue total"), Data=dict(C2="Revenue")))
		result, _ = env.apply(tool("search_cells", query="REVENUE"))
		self.assertEqual("Found: Sheet1!A1, Sheet1!B3, Data!C2", result)

		result, _ = env.apply(tool("search_cells", query="costs"))
		self.assertEqual("No matches", result)

	def test_sort_range(self):
		env = self.reset(cells=dict(A1=3, A2=1, A3=2, B1="c", B2="a", B3="b"), formats={"A1": ["bold"]})
		env.apply(tool("sort_range", range="A1:B3"))
		self.assertEqual([1, 2, 3], [env.fact("cell:A{}".format(r)) for r in (1, 2, 3)])
		self.assertEqual(["a", "b", "c"], [env.fact("cell:B{}".format(r)) for r in (1, 2, 3)])
		self.assertEqual(["bold"], env.fact("format:A3"))

		env.apply(tool("sort_range", range="A1:B3", descending=True))
		self.assertEqual([3, 2, 1], [env.fact("cell:A{}".format(r)) for r in (1, 2, 3)])

	def test_sort_keeps_empty_rows_last(self):
		env = self.reset(cells=dict(A1="b", A3=1, A4="a"))
		env.apply(tool("sort_range", range="A1:A4"))
		self.assertEqual([1, "a", "b", None], [env.fact("cell:A{}".format(r)) for r in (1, 2, 3, 4)])

	def test_number_formats_are_exclusive(self):
		env = self.reset(cells=dict(A1=1))
		env.apply(tool("set_format", range="A1", format="currency"))
		env.apply(tool("set_format", range="A1", format="percent"))
		self.assertEqual(["percent"], env.fact("format:A1"))

	def test_clear_range_keeps_formats(self):
		env = self.reset(cells=dict(A1=1, A2=2), formats={"A1": ["bold"]})
		env.apply(tool("clear_range", range="A1:A2"))
		self.assertIsNone(env.fact("cell:A1"))
		self.assertEqual(["bold"], env.fact("format:A1"))

	##~~ GUI editing

	def test_escape_cancels_edit(self):
		env = self.run_actions(self.reset(cells=dict(A1=1)), [cell("A1"), Action.gui("type_text", text="99"), keys("Escape")])
		self.assertEqual(1, env.fact("cell:A1"))
		self.assertFalse(env.fact("editing"))

	def test_double_click_edits_existing_content(self):
		env = self.reset(cells=dict(A1="=1+1"))
		env.apply(Action.gui("double_click", coordinates=(110, 112)))
		self.assertTrue(env.fact("editing"))
		self.assertEqual("=1+1", env.observe().element("formula-bar").label)

		self.run_actions(env, [Action.gui("type_text", text="+1"), keys("Tab")])
		self.assertEqual(3, env.fact("cell:A1"))
		self.assertEqual("B1", env.fact("selection"))

	def test_clicking_another_cell_commits(self):
		env = self.run_actions(self.reset(), [cell("C3"), Action.gui("type_text", text="hello"), cell("D4")])
		self.assertEqual("hello", env.fact("cell:C3"))
		self.assertEqual("D4", env.fact("selection"))

	def test_sort_button(self):
		env = self.run_actions(self.reset(cells=dict(A1=3, A2=1, A3=2)),
		                       [cell("A1"), Action.gui("click", coordinates=(195, 35))])
		self.assertEqual([1, 2, 3], [env.fact("cell:A{}".format(r)) for r in (1, 2, 3)])

	def test_render(self):
		screen = self.reset(cells=dict(A1=12), formats={"A1": ["currency"]}).observe()
		self.assertEqual("cell-A1", screen.focus)
		self.assertEqual("A1 = $12.00", screen.element("cell-A1").label)
		self.assertEqual(("currency", "selected"), screen.element("cell-A1").flags)
		self.assertEqual("Sheet1", screen.element("sheet-tab-0").label)

	@data(
		(tool("set_cell", ref="G1", value=1), ),
		(tool("set_cell", ref="A13", value=1), ),
		(tool("get_cell", ref="A1", sheet="Nope"), ),
		(tool("set_format", range="A1", format="italic"), ),
		(tool("add_sheet", name="Sheet1"), ),
		(tool("add_sheet", name="bad name"), ),
		(tool("calculate", formula="1+1"), ),
		(tool("get_range", range="Data!A1:A2", sheet="Sheet1"), ),
		(keys("Ctrl+PageUp"), ),
		(keys("Ctrl+Z"), )
	)
	@unpack
	def test_rejected_actions_keep_state(self, action):
		env = self.reset(cells=dict(A1=1))
		before = env.snapshot()
		self.assertRaises(ActionFailed, env.apply, action)
		self.assertEqual(before, env.snapshot())

	##~~ setup and facts

	@data(
		dict(rows=3),
		dict(cells=dict(Z9=1)),
		dict(cells=dict(A1=1), sheets=dict(Sheet1=dict(A1=2))),
		dict(formats={"A1": ["currency", "percent"]}),
		dict(formats={"A1": ["italic"]}),
		dict(formats={"Nope!A1": ["bold"]}),
		dict(active_sheet="Nope"),
		dict(sheets={"bad name": dict()}),
		dict(cells=dict(A1=[1, 2]))
	)
	def test_invalid_setup(self, state):
		self.assertRaises(SetupError, self.simulator.reset, EnvSetupScript.create("mini_sheet", state=state))

	def test_unknown_fact(self):
		env = self.reset()
		self.assertRaises(UnknownFact, env.fact, "cell:Z99")
		self.assertRaises(UnknownFact, env.fact, "colour")


@ddt
class HelpersTest(unittest.TestCase):

	@data(
		("=SUM(A1:A3)", "=SUM(A1:A3)"),
		("12", 12),
		(" 2.5 ", 2.5),
		("-3", -3),
		("Total", "Total"),
		("  ", None),
		(7, 7),
		(None, None)
	)
	@unpack
	def test_parse_input(self, value, expected):
		self.assertEqual(expected, parse_input(value))

	@data(
		(12, ["currency"], "$12.00"),
		(-1234.5, ["currency"], "-$1,234.50"),
		(0.25, ["percent"], "25%"),
		(2.5, [], "2.5"),
		(3.0, [], "3"),
		(None, [], ""),
		("#DIV/0!", ["currency"], "#DIV/0!")
	)
	@unpack
	def test_display(self, value, formats, expected):
		self.assertEqual(expected, display(value, formats))

	@data("A0", "G1", "A13", "1A", "")
	def test_parse_ref_invalid(self, text):
		self.assertRaises(ValueError, parse_ref, text)
