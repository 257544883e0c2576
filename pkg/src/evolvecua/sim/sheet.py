# coding=utf-8
"""
``mini_sheet``, a simulated spreadsheet with a 6x12 grid (columns ``A`` to ``F``, rows 1 to 12) per sheet,
formulas, three cell formats and sorting.

Screen geometry (1280x800)::

    toolbar      bold-button (60, 20), currency-button (100, 20), percent-button (140, 20), sort-asc-button (180, 20),
                 all 30x30
    input        name-box (0, 60, 55, 30), formula-bar (60, 60, 1000, 30)
    grid         cell-<ref> at (60+100c, 100+25(r-1), 100, 25)
    sheet tabs   sheet-tab-<i> at (60+120i, 770, 110, 25), add-sheet-button right after the last tab
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import re

from .app import AppModel, element
from .exceptions import ActionFailed, SetupError
from .formula import FormulaError, evaluate, is_number, normalize_number

APP_ID = "mini_sheet"

COLUMNS = "ABCDEF"
ROWS = 12

FORMATS = ("bold", "currency", "percent")
NUMBER_FORMATS = ("currency", "percent")

DEFAULT_SHEET = "Sheet1"

_ref_regex = re.compile(r"^([A-Fa-f])([1-9]|1[0-2])$")
_sheet_name_regex = re.compile(r"^[A-Za-z0-9_]+$")
_number_regex = re.compile(r"^-?\d+(\.\d+)?$")


def parse_ref(text):
	"""
	    >>> parse_ref("c3")
	    ('C', 3)

	Raises:
	    ValueError: ``text`` is not a reference inside the grid.
	"""
	match = _ref_regex.match(text.strip()) if isinstance(text, str) else None
	if match is None:
		raise ValueError("invalid cell reference {!r}".format(text))
	return match.group(1).upper(), int(match.group(2))


def make_ref(column, row):
	return "{}{}".format(column, row)


def parse_input(value):
	"""
	Turns user input into a raw cell value: formulas keep their text, numeric text becomes a number, the empty
	string clears the cell.

	    >>> parse_input("=SUM(A1:A3)"), parse_input("12"), parse_input("2.5"), parse_input("Total")
	    ('=SUM(A1:A3)', 12, 2.5, 'Total')
	"""
	if value is None or is_number(value):
		return value
	if not isinstance(value, str):
		raise ValueError("unsupported cell value {!r}".format(value))
	text = value.strip()
	if not text:
		return None
	if text.startswith("="):
		return text
	if _number_regex.match(text):
		return float(text) if "." in text else int(text)
	return value


def number_text(value):
	value = normalize_number(value)
	if isinstance(value, int):
		return str(value)
	return "%.10g" % value


def display(value, formats=()):
	"""
	    >>> display(12, ["currency"]), display(0.25, ["percent"]), display(2.5)
	    ('$12.00', '25%', '2.5')
	"""
	if value is None:
		return ""
	if not is_number(value):
		return str(value)
	if "currency" in formats:
		text = "${:,.2f}".format(abs(value))
		return "-" + text if value < 0 else text
	if "percent" in formats:
		return number_text(value * 100) + "%"
	return number_text(value)


def _sort_key(value):
	if is_number(value):
		return 0, value, ""
	if isinstance(value, str) and value:
		return 1, 0, value.lower()
	return 2, 0, ""


class Spreadsheet(AppModel):
	APP_ID = APP_ID

	TOOL_DEFINITIONS = (
		("get_cell", "Returns the displayed value of a cell.",
		 [dict(name="ref", type="string", required=True, description="Cell reference like A1"),
		  dict(name="sheet", type="string", required=False, description="Sheet name, defaults to the active sheet")]),
		("set_cell", "Writes a value or a formula starting with = into a cell.",
		 [dict(name="ref", type="string", required=True, description="Cell reference like A1"),
		  dict(name="value", type="any", required=True, description="Number, text or formula"),
		  dict(name="sheet", type="string", required=False, description="Sheet name, defaults to the active sheet")]),
		("get_range", "Returns the displayed values of a range, rows separated by semicolons.",
		 [dict(name="range", type="string", required=True, description="Range like A1:B3"),
		  dict(name="sheet", type="string", required=False, description="Sheet name, defaults to the active sheet")]),
		("search_cells", "Finds cells whose displayed value contains the query, case insensitive, across all sheets.",
		 [dict(name="query", type="string", required=True, description="Text to look for")]),
		("calculate", "Evaluates a formula on the active sheet without writing it.",
		 [dict(name="formula", type="string", required=True, description="Formula starting with =")]),
		("switch_sheet", "Activates a sheet.",
		 [dict(name="name", type="string", required=True, description="Sheet name")]),
		("add_sheet", "Adds a sheet and activates it.",
		 [dict(name="name", type="string", required=True, description="Sheet name")]),
		("set_format", "Applies bold, currency or percent formatting to a range.",
		 [dict(name="range", type="string", required=True, description="Range like A1:B3"),
		  dict(name="format", type="string", required=True, description="bold, currency or percent"),
		  dict(name="sheet", type="string", required=False, description="Sheet name, defaults to the active sheet")]),
		("sort_range", "Sorts the rows of a range by its first column.",
		 [dict(name="range", type="string", required=True, description="Range like A1:B5"),
		  dict(name="descending", type="boolean", required=False, description="Sort descending"),
		  dict(name="sheet", type="string", required=False, description="Sheet name, defaults to the active sheet")]),
		("clear_range", "Clears the values of a range, formats are kept.",
		 [dict(name="range", type="string", required=True, description="Range like A1:B3"),
		  dict(name="sheet", type="string", required=False, description="Sheet name, defaults to the active sheet")])
	)

	SETUP_FIELDS = ("cells", "sheets", "active_sheet", "selection", "formats")

	FACTS = ("cell:<ref>", "cell:<sheet>!<ref>", "raw:<ref>", "format:<ref>", "active_sheet", "sheets", "selection",
	         "editing", "answer")

	#~~ setup

	def _setup(self, state):
		self._reject_unknown_fields(state, self.SETUP_FIELDS)

		sheets = state.get("sheets", dict())
		if not isinstance(sheets, dict):
			raise SetupError("sheets must be an object", app_id=APP_ID)
		cells = state.get("cells")
		if cells is not None and DEFAULT_SHEET in sheets:
			raise SetupError("contradictory state: cells and sheets.{} both given".format(DEFAULT_SHEET), app_id=APP_ID)

		layout = collections.OrderedDict()
		if cells is not None or not sheets:
			layout[DEFAULT_SHEET] = cells or dict()
		for name, content in sheets.items():
			layout[name] = content or dict()

		self._sheets = collections.OrderedDict()
		for name, content in layout.items():
			if not isinstance(name, str) or not _sheet_name_regex.match(name):
				raise SetupError("invalid sheet name {!r}".format(name), app_id=APP_ID)
			self._sheets[name] = dict(cells=dict(), formats=dict())
			for ref, value in content.items():
				ref = self._setup_ref(ref)
				try:
					raw = parse_input(value)
				except ValueError as error:
					raise SetupError(str(error), app_id=APP_ID)
				if raw is not None:
					self._sheets[name]["cells"][ref] = raw

		for qualified, flags in state.get("formats", dict()).items():
			sheet, ref = self._split_qualified(qualified, DEFAULT_SHEET)
			if sheet not in self._sheets:
				raise SetupError("unknown sheet {}".format(sheet), app_id=APP_ID)
			ref = self._setup_ref(ref)
			unknown = sorted(set(flags) - set(FORMATS))
			if unknown:
				raise SetupError("unknown format {}".format(", ".join(unknown)), app_id=APP_ID)
			if all(f in flags for f in NUMBER_FORMATS):
				raise SetupError("contradictory state: {} is both currency and percent".format(ref), app_id=APP_ID)
			self._sheets[sheet]["formats"][ref] = set(flags)

		self._active = state.get("active_sheet", next(iter(self._sheets)))
		if self._active not in self._sheets:
			raise SetupError("unknown sheet {}".format(self._active), app_id=APP_ID)

		self._selection = self._setup_ref(state.get("selection", "A1"))
		self._editing = False
		self._buffer = ""

	def _setup_ref(self, ref):
		try:
			return make_ref(*parse_ref(ref))
		except ValueError as error:
			raise SetupError(str(error), app_id=APP_ID)

	@staticmethod
	def _split_qualified(text, default):
		if "!" in text:
			sheet, ref = text.split("!", 1)
			return sheet, ref
		return default, text

	#~~ values

	def _cells(self, sheet):
		return self._sheets[sheet]["cells"]

	def _formats(self, sheet, ref):
		return self._sheets[sheet]["formats"].get(ref, set())

	def _computed(self, sheet, ref, visiting=()):
		raw = self._cells(sheet).get(ref)
		if isinstance(raw, str) and raw.startswith("="):
			key = (sheet, ref)
			if key in visiting:
				raise FormulaError("#CYCLE")
			return self._evaluate(raw, sheet, visiting + (key,))
		return raw

	def _evaluate(self, text, sheet, visiting=()):
		def resolve(target, ref):
			target = target or sheet
			if target not in self._sheets:
				raise FormulaError("#ERROR")
			try:
				ref = make_ref(*parse_ref(ref))
			except ValueError:
				raise FormulaError("#ERROR")
			return self._computed(target, ref, visiting)

		def expand(target, start, end):
			try:
				return [ref for row in self._block(start, end) for ref in row]
			except ValueError:
				raise FormulaError("#ERROR")

		return evaluate(text, resolve, expand)

	def value(self, sheet, ref):
		"""
		Returns:
		    The computed value of a cell: a number, a string, ``None`` for empty cells or an error code like
		    ``#DIV/0!``.
		"""
		try:
			return self._computed(sheet, ref)
		except FormulaError as error:
			return error.code

	def _display(self, sheet, ref):
		return display(self.value(sheet, ref), self._formats(sheet, ref))

	@staticmethod
	def _block(start, end):
		start_column, start_row = parse_ref(start)
		end_column, end_row = parse_ref(end)
		columns = COLUMNS[min(COLUMNS.index(start_column), COLUMNS.index(end_column)):max(COLUMNS.index(start_column), COLUMNS.index(end_column)) + 1]
		rows = range(min(start_row, end_row), max(start_row, end_row) + 1)
		return [[make_ref(column, row) for column in columns] for row in rows]

	def _resolve_range(self, text, sheet=None):
		"""
		Returns ``(sheet, rows)`` for a possibly sheet qualified range or single reference.

		Raises:
		    ActionFailed: Unknown sheet or malformed range.
		"""
		qualified, cells = self._split_qualified(text.strip(), None)
		if qualified is not None and sheet is not None and qualified != sheet:
			raise ActionFailed("range {} does not belong to sheet {}".format(text, sheet))
		sheet = self._checked_sheet(qualified or sheet)
		try:
			if ":" in cells:
				start, end = cells.split(":", 1)
			else:
				start = end = cells
			return sheet, self._block(start, end)
		except ValueError as error:
			raise ActionFailed(str(error))

	def _checked_sheet(self, sheet):
		if sheet is None:
			return self._active
		if sheet not in self._sheets:
			raise ActionFailed("unknown sheet {}".format(sheet))
		return sheet

	def _checked_ref(self, ref):
		try:
			return make_ref(*parse_ref(ref))
		except ValueError as error:
			raise ActionFailed(str(error))

	def _store(self, sheet, ref, value):
		try:
			raw = parse_input(value)
		except ValueError as error:
			raise ActionFailed(str(error))
		if raw is None:
			self._cells(sheet).pop(ref, None)
		else:
			self._cells(sheet)[ref] = raw

	def _apply_format(self, sheet, refs, fmt):
		formats = self._sheets[sheet]["formats"]
		for ref in refs:
			flags = formats.setdefault(ref, set())
			if fmt in NUMBER_FORMATS:
				flags.difference_update(NUMBER_FORMATS)
			flags.add(fmt)
		return "{} format applied".format(fmt.capitalize())

	def _sort(self, sheet, rows, descending=False):
		cells = self._cells(sheet)
		formats = self._sheets[sheet]["formats"]

		entries = []
		for row in rows:
			key = self.value(sheet, row[0])
			entries.append((key, [(cells.get(ref), set(formats.get(ref, set()))) for ref in row]))

		filled = [e for e in entries if _sort_key(e[0])[0] < 2]
		empty = [e for e in entries if _sort_key(e[0])[0] == 2]
		filled.sort(key=lambda e: _sort_key(e[0]), reverse=descending)

		for row, (_, content) in zip(rows, filled + empty):
			for ref, (raw, flags) in zip(row, content):
				if raw is None:
					cells.pop(ref, None)
				else:
					cells[ref] = raw
				if flags:
					formats[ref] = flags
				else:
					formats.pop(ref, None)
		return "Range sorted"

	#~~ editing

	def _commit(self):
		if not self._editing:
			return False
		self._store(self._active, self._selection, self._buffer)
		self._editing = False
		self._buffer = ""
		return True

	def _move(self, columns=0, rows=0):
		column, row = parse_ref(self._selection)
		index = min(max(COLUMNS.index(column) + columns, 0), len(COLUMNS) - 1)
		row = min(max(row + rows, 1), ROWS)
		self._selection = make_ref(COLUMNS[index], row)

	def _switch(self, name):
		self._commit()
		self._active = name
		return "Sheet switched"

	def _add_sheet(self, name):
		if not isinstance(name, str) or not _sheet_name_regex.match(name):
			raise ActionFailed("invalid sheet name {!r}".format(name))
		if name in self._sheets:
			raise ActionFailed("sheet {} already exists".format(name))
		self._commit()
		self._sheets[name] = dict(cells=dict(), formats=dict())
		self._active = name
		return "Sheet added"

	def _toggle_bold(self):
		self._commit()
		flags = self._sheets[self._active]["formats"].setdefault(self._selection, set())
		if "bold" in flags:
			flags.discard("bold")
			return "Bold format removed"
		flags.add("bold")
		return "Bold format applied"

	def _sort_down_from_selection(self):
		self._commit()
		column, row = parse_ref(self._selection)
		end = row
		while end + 1 <= ROWS and self._cells(self._active).get(make_ref(column, end + 1)) is not None:
			end += 1
		if self._cells(self._active).get(self._selection) is None:
			raise ActionFailed("nothing to sort")
		return self._sort(self._active, self._block(self._selection, make_ref(column, end)))

	#~~ rendering

	def _elements(self):
		result = [
			element("bold-button", "button", "Bold", (60, 20, 30, 30),
			        "pressed" if "bold" in self._formats(self._active, self._selection) else None),
			element("currency-button", "button", "Currency", (100, 20, 30, 30)),
			element("percent-button", "button", "Percent", (140, 20, 30, 30)),
			element("sort-asc-button", "button", "Sort ascending", (180, 20, 30, 30)),
			element("name-box", "textbox", self._selection, (0, 60, 55, 30)),
			element("formula-bar", "textbox", self._formula_bar_text(), (60, 60, 1000, 30),
			        "editing" if self._editing else None)
		]

		for r in range(1, ROWS + 1):
			for c, column in enumerate(COLUMNS):
				ref = make_ref(column, r)
				text = self._display(self._active, ref)
				label = ref if text == "" else "{} = {}".format(ref, text)
				flags = sorted(self._formats(self._active, ref))
				if ref == self._selection:
					flags.append("selected")
				result.append(element("cell-" + ref, "cell", label, (60 + 100 * c, 100 + 25 * (r - 1), 100, 25), *flags))

		for i, name in enumerate(self._sheets):
			result.append(element("sheet-tab-{}".format(i), "tab", name, (60 + 120 * i, 770, 110, 25),
			                      "selected" if name == self._active else None))
		result.append(element("add-sheet-button", "button", "Add sheet", (60 + 120 * len(self._sheets), 770, 30, 25)))
		return result

	def _formula_bar_text(self):
		if self._editing:
			return self._buffer
		raw = self._cells(self._active).get(self._selection)
		if raw is None:
			return ""
		return raw if isinstance(raw, str) else number_text(raw)

	def _focus(self):
		if self._editing:
			return "formula-bar"
		return "cell-" + self._selection

	#~~ GUI handlers

	def on_click(self, target, double=False):
		element_id = target.element_id

		if element_id.startswith("cell-"):
			self._commit()
			self._selection = element_id[len("cell-"):]
			if double:
				self._editing = True
				self._buffer = self._formula_bar_text()
			return "Selected {}".format(self._selection)
		elif element_id == "formula-bar":
			if not self._editing:
				self._buffer = self._formula_bar_text()
				self._editing = True
			return "Formula bar focused"
		elif element_id == "bold-button":
			return self._toggle_bold()
		elif element_id in ("currency-button", "percent-button"):
			self._commit()
			return self._apply_format(self._active, [self._selection], element_id[:-len("-button")])
		elif element_id == "sort-asc-button":
			return self._sort_down_from_selection()
		elif element_id.startswith("sheet-tab-"):
			return self._switch(list(self._sheets)[int(element_id[len("sheet-tab-"):])])
		elif element_id == "add-sheet-button":
			n = len(self._sheets) + 1
			while "Sheet{}".format(n) in self._sheets:
				n += 1
			return self._add_sheet("Sheet{}".format(n))

		return "Nothing happened"

	def on_type(self, text):
		if not self._editing:
			self._editing = True
			self._buffer = ""
		self._buffer += text
		return "Typed into {}".format(self._selection)

	def on_key(self, keys):
		if keys == "Enter":
			committed = self._commit()
			self._move(rows=1)
			return "Cell updated" if committed else "Selection moved"
		if keys == "Tab":
			committed = self._commit()
			self._move(columns=1)
			return "Cell updated" if committed else "Selection moved"
		if keys == "Escape":
			if self._editing:
				self._editing = False
				self._buffer = ""
				return "Edit cancelled"
			return "Nothing to cancel"
		if keys in ("Delete", "Backspace"):
			if self._editing:
				self._buffer = self._buffer[:-1]
				return "Character deleted"
			self._cells(self._active).pop(self._selection, None)
			return "Cell cleared"
		if keys == "Ctrl+B":
			return self._toggle_bold()
		if keys == "Ctrl+Shift+4":
			self._commit()
			return self._apply_format(self._active, [self._selection], "currency")
		if keys == "Ctrl+Shift+5":
			self._commit()
			return self._apply_format(self._active, [self._selection], "percent")
		if keys in ("Ctrl+PageDown", "Ctrl+PageUp"):
			names = list(self._sheets)
			index = names.index(self._active) + (1 if keys == "Ctrl+PageDown" else -1)
			if not 0 <= index < len(names):
				raise ActionFailed("no {} sheet".format("next" if keys == "Ctrl+PageDown" else "previous"))
			return self._switch(names[index])
		if keys == "Ctrl+Home":
			self._commit()
			self._selection = "A1"
			return "Selection moved"

		moves = {"Up": (0, -1), "Down": (0, 1), "Left": (-1, 0), "Right": (1, 0)}
		if keys in moves:
			self._commit()
			self._move(*moves[keys])
			return "Selection moved"

		raise ActionFailed("unsupported key combination {}".format(keys))

	def on_scroll(self, direction):
		return "Scrolled {}".format(direction)

	#~~ MCP tools

	def tool_get_cell(self, ref, sheet=None):
		sheet = self._checked_sheet(sheet)
		ref = self._checked_ref(ref)
		text = self._display(sheet, ref)
		return "{} = {}".format(ref, text if text != "" else "(empty)")

	def tool_set_cell(self, ref, value, sheet=None):
		sheet = self._checked_sheet(sheet)
		ref = self._checked_ref(ref)
		if self._editing and sheet == self._active and ref == self._selection:
			self._editing = False
			self._buffer = ""
		self._store(sheet, ref, value)
		return "Cell updated"

	def tool_get_range(self, range, sheet=None):
		sheet, rows = self._resolve_range(range, sheet)
		text = "; ".join(", ".join(self._display(sheet, ref) for ref in row) for row in rows)
		label = rows[0][0] if len(rows) == 1 and len(rows[0]) == 1 else "{}:{}".format(rows[0][0], rows[-1][-1])
		return "Range {}!{}: {}".format(sheet, label, text)

	def tool_search_cells(self, query):
		needle = query.strip().lower()
		if not needle:
			raise ActionFailed("query must not be empty")
		found = []
		for sheet in self._sheets:
			for r in range(1, ROWS + 1):
				for column in COLUMNS:
					ref = make_ref(column, r)
					if needle in self._display(sheet, ref).lower():
						found.append("{}!{}".format(sheet, ref))
		if not found:
			return "No matches"
		return "Found: {}".format(", ".join(found))

	def tool_calculate(self, formula):
		if not formula.strip().startswith("="):
			raise ActionFailed("formula must start with =")
		try:
			result = self._evaluate(formula.strip(), self._active)
		except FormulaError as error:
			result = error.code
		return "Result: {}".format(display(result))

	def tool_switch_sheet(self, name):
		if name not in self._sheets:
			raise ActionFailed("unknown sheet {}".format(name))
		return self._switch(name)

	def tool_add_sheet(self, name):
		return self._add_sheet(name)

	def tool_set_format(self, range, format, sheet=None):
		if format not in FORMATS:
			raise ActionFailed("unknown format {}".format(format))
		sheet, rows = self._resolve_range(range, sheet)
		return self._apply_format(sheet, [ref for row in rows for ref in row], format)

	def tool_sort_range(self, range, descending=False, sheet=None):
		sheet, rows = self._resolve_range(range, sheet)
		if sheet == self._active:
			self._commit()
		return self._sort(sheet, rows, descending=descending)

	def tool_clear_range(self, range, sheet=None):
		sheet, rows = self._resolve_range(range, sheet)
		for row in rows:
			for ref in row:
				self._cells(sheet).pop(ref, None)
		return "Range cleared"

	#~~ facts

	def _fact(self, name):
		for prefix in ("cell:", "raw:", "format:"):
			if name.startswith(prefix):
				sheet, ref = self._split_qualified(name[len(prefix):], DEFAULT_SHEET)
				if sheet not in self._sheets:
					raise KeyError(name)
				try:
					ref = make_ref(*parse_ref(ref))
				except ValueError:
					raise KeyError(name)
				if prefix == "cell:":
					return self.value(sheet, ref)
				elif prefix == "raw:":
					return self._cells(sheet).get(ref)
				return sorted(self._formats(sheet, ref))

		facts = {
			"active_sheet": lambda: self._active,
			"sheets": lambda: list(self._sheets),
			"selection": lambda: self._selection,
			"editing": lambda: self._editing
		}
		return facts[name]()

	def snapshot(self):
		result = AppModel.snapshot(self)
		result.update(dict(sheets=[[name,
		                            sorted([ref, raw] for ref, raw in content["cells"].items()),
		                            sorted([ref, sorted(flags)] for ref, flags in content["formats"].items() if flags)]
		                           for name, content in self._sheets.items()],
		                   active=self._active,
		                   selection=self._selection,
		                   editing=self._editing,
		                   buffer=self._buffer))
		return result
