# coding=utf-8
"""
Parameterized task templates of the template generator.

Every template targets one application, carries its own skill tags, difficulty and modality emphasis, lists the MCP
tools its reference solution calls and builds a :class:`Draft` from one of its variants. The setup of every draft
reaches its expected state and its solution satisfies its checker, so template tasks always validate.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections

from evolvecua.model import Difficulties, SkillCategories
from evolvecua.sim.browser import FORM_URL, search_url, title_of
from evolvecua.sim.sheet import display

BROWSER = "mini_browser"
SHEET = "mini_sheet"

MCP = "mcp"
GUI = "gui"

EMPHASES = (MCP, GUI)


class Draft(collections.namedtuple("Draft", "goal, state, expected, checker, solution")):
	"""
	Arguments:
	    goal (str): Natural language goal.
	    state (dict): Setup state of the application.
	    expected (list): Predicates holding right after setup.
	    checker (list): Predicates deciding success.
	    solution (list): Tool call payloads of the reference solution, ending with ``terminate``.
	"""

	__slots__ = ()


class TaskTemplate(collections.namedtuple("TaskTemplate", "name, app_id, skills, difficulty, emphasis, tools, variants, build")):
	__slots__ = ()

	@property
	def skill(self):
		return self.skills[0]

	def draft(self, index):
		return self.build(self.variants[index % len(self.variants)])


TEMPLATES = []


def template(app_id, skill, difficulty, emphasis, tools=(), variants=(None,)):
	def decorator(f):
		TEMPLATES.append(TaskTemplate(f.__name__, app_id, (skill,), difficulty, emphasis, tuple(tools), tuple(variants), f))
		return f
	return decorator


def templates(app_id=None):
	return [t for t in TEMPLATES if app_id is None or t.app_id == app_id]


#~~ payload helpers


def call(tool_name, **arguments):
	return dict(name=tool_name, arguments=arguments)


def computer(action, coordinate=None, **parameters):
	arguments = dict(action=action)
	if coordinate is not None:
		arguments["coordinate"] = list(coordinate)
	arguments.update(parameters)
	return dict(name="computer", arguments=arguments)


def click(x, y):
	return computer("click", (x, y))


def key(keys):
	return computer("key_combo", keys=keys)


def type_text(text):
	return computer("type_text", text=text)


def screenshot():
	return computer("screenshot")


def done(answer=None):
	if answer is None:
		return computer("terminate", status="success")
	return computer("terminate", status="success", answer=answer)


def fact(name, op, value):
	return dict(fact=name, op=op, value=value)


def cell_center(ref):
	column, row = ref[0], int(ref[1:])
	return 110 + 100 * "ABCDEF".index(column), 112 + 25 * (row - 1)


#~~ mini_browser

ALPHA = "https://a.example"
ALPHA_DOCS = "https://a.example/docs"
ALPHA_PRICING = "https://a.example/pricing"
BETA = "https://b.example"
WEATHER = "https://b.example/weather"
GAMMA = "https://c.example"
NEWS = "https://news.example"

PRIVACY_DNT = (640, 200)
PRIVACY_COOKIES = (640, 250)
PRIVACY_CLOSE = (1010, 125)
BOOKMARK_STAR = (935, 55)
FIRST_LINK = (240, 135)

SEARCH_RESULTS = (("weather", WEATHER), ("widgets", GAMMA), ("documentation", ALPHA_DOCS), ("library", NEWS))


@template(BROWSER, SkillCategories.DATA_MANIPULATION, Difficulties.EASY, MCP, tools=["bookmark_page"],
          variants=[GAMMA, NEWS, ALPHA_PRICING, ALPHA])
def bookmark_current_page(url):
	return Draft("Bookmark the current page.",
	             dict(tabs=[url]),
	             [fact("bookmarks", "excludes", url)],
	             [fact("bookmarks", "contains", dict(fact="active_url"))],
	             [call("bookmark_page", url=url), done()])


@template(BROWSER, SkillCategories.DATA_MANIPULATION, Difficulties.EASY, GUI, variants=[BETA, ALPHA_DOCS, NEWS])
def bookmark_with_star(url):
	return Draft("Bookmark the open page {} with the bookmark star.".format(title_of(url)),
	             dict(tabs=[url]),
	             [fact("bookmarks", "excludes", url)],
	             [fact("bookmarks", "contains", url)],
	             [click(*BOOKMARK_STAR), done()])


@template(BROWSER, SkillCategories.DATA_MANIPULATION, Difficulties.MEDIUM, MCP, tools=["bookmark_page", "navigate_to"],
          variants=[WEATHER, GAMMA, ALPHA_DOCS])
def bookmark_and_list_bookmarks(url):
	return Draft("Bookmark the current page, then open the bookmarks page.",
	             dict(tabs=[url]),
	             [fact("bookmarks", "len_eq", 0)],
	             [fact("bookmarks", "contains", url), fact("active_url", "eq", "about:bookmarks")],
	             [call("bookmark_page", url=url), call("navigate_to", url="about:bookmarks"), done()])


@template(BROWSER, SkillCategories.DATA_MANIPULATION, Difficulties.HARD, MCP, tools=["bookmark_page"],
          variants=[(ALPHA, BETA, GAMMA), (NEWS, ALPHA_DOCS), (WEATHER, ALPHA_PRICING, NEWS)])
def bookmark_all_tabs(urls):
	return Draft("Bookmark every open tab.",
	             dict(tabs=list(urls)),
	             [fact("bookmarks", "len_eq", 0)],
	             [fact("bookmarks", "contains", url) for url in urls],
	             [call("bookmark_page", url=url) for url in urls] + [done()])


@template(BROWSER, SkillCategories.DATA_RETRIEVAL, Difficulties.EASY, MCP, tools=["get_page_content"],
          variants=[ALPHA, WEATHER, GAMMA, NEWS])
def read_page_title(url):
	title = title_of(url)
	return Draft("What is the title of the open page? Answer with the title only.",
	             dict(tabs=[url]),
	             [fact("active_url", "eq", url)],
	             [fact("answer", "eq", title)],
	             [call("get_page_content"), done(answer=title)])


@template(BROWSER, SkillCategories.DATA_RETRIEVAL, Difficulties.EASY, GUI, variants=[BETA, ALPHA_DOCS, NEWS])
def read_tab_title(url):
	title = title_of(url)
	return Draft("Which page title does the active tab show? Answer with the title only.",
	             dict(tabs=[url]),
	             [fact("active_url", "eq", url)],
	             [fact("answer", "eq", title)],
	             [screenshot(), done(answer=title)])


@template(BROWSER, SkillCategories.DATA_RETRIEVAL, Difficulties.MEDIUM, MCP, tools=["get_page_content"],
          variants=[(ALPHA_PRICING, "How many dollars per month does Alpha Pro cost? Answer with the number only.", "12"),
                    (WEATHER, "How many degrees does the weather page report? Answer with the number only.", "21"),
                    (ALPHA_DOCS, "Which version does the Alpha documentation mention? Answer with the version only.", "4.2")])
def read_page_fact(variant):
	url, question, answer = variant
	return Draft(question,
	             dict(tabs=[url]),
	             [fact("active_url", "eq", url)],
	             [fact("answer", "eq", answer)],
	             [call("get_page_content"), done(answer=answer)])


@template(BROWSER, SkillCategories.DATA_RETRIEVAL, Difficulties.HARD, MCP, tools=["navigate_to", "get_page_content"],
          variants=[ALPHA_PRICING, WEATHER, NEWS])
def visit_and_read_title(url):
	title = title_of(url)
	return Draft("Open {} and report its page title.".format(url),
	             dict(tabs=["about:blank"]),
	             [fact("active_url", "eq", "about:blank")],
	             [fact("active_url", "eq", url), fact("answer", "eq", title)],
	             [call("navigate_to", url=url), call("get_page_content"), done(answer=title)])


@template(BROWSER, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, MCP, tools=["navigate_to"],
          variants=[GAMMA, NEWS, WEATHER])
def open_url(url):
	return Draft("Go to {} in the current tab.".format(url),
	             dict(tabs=[ALPHA]),
	             [fact("active_url", "eq", ALPHA)],
	             [fact("active_url", "eq", url)],
	             [call("navigate_to", url=url), done()])


@template(BROWSER, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, MCP, tools=["open_new_tab"],
          variants=[BETA, ALPHA_DOCS, GAMMA])
def open_url_in_new_tab(url):
	return Draft("Open {} in a new tab.".format(url),
	             dict(tabs=[ALPHA]),
	             [fact("tab_count", "eq", 1)],
	             [fact("tab_count", "eq", 2), fact("active_url", "eq", url)],
	             [call("open_new_tab", url=url), done()])


@template(BROWSER, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, MCP, tools=["bring_back_last_tab"],
          variants=[NEWS, GAMMA, WEATHER])
def reopen_closed_tab(url):
	return Draft("Bring back the tab that was closed last.",
	             dict(tabs=[ALPHA], closed_tabs=[url]),
	             [fact("closed_tab_count", "eq", 1)],
	             [fact("tabs", "contains", url), fact("closed_tab_count", "eq", 0)],
	             [call("bring_back_last_tab"), done()])


@template(BROWSER, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, GUI, variants=[ALPHA_PRICING, BETA])
def reopen_closed_tab_with_keys(url):
	return Draft("Restore the most recently closed tab using the keyboard.",
	             dict(tabs=[NEWS], closed_tabs=[url]),
	             [fact("closed_tab_count", "eq", 1)],
	             [fact("tabs", "contains", url), fact("closed_tab_count", "eq", 0)],
	             [key("Ctrl+Shift+T"), done()])


@template(BROWSER, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, GUI, variants=[GAMMA, WEATHER])
def close_active_tab(url):
	return Draft("Close the active tab.",
	             dict(tabs=[ALPHA, url], active=1),
	             [fact("tab_count", "eq", 2)],
	             [fact("tabs", "excludes", url), fact("tab_count", "eq", 1)],
	             [key("Ctrl+W"), done()])


@template(BROWSER, SkillCategories.NAVIGATION_BROWSING, Difficulties.MEDIUM, MCP, tools=["switch_tab"],
          variants=[((ALPHA, BETA, GAMMA), 2), ((NEWS, GAMMA), 1), ((ALPHA, WEATHER, NEWS), 1)])
def switch_to_tab(variant):
	urls, index = variant
	return Draft("Switch to the tab showing {}.".format(title_of(urls[index])),
	             dict(tabs=list(urls), active=0),
	             [fact("active_url", "eq", urls[0])],
	             [fact("active_url", "eq", urls[index]), fact("tab_count", "eq", len(urls))],
	             [call("switch_tab", index=index), done()])


@template(BROWSER, SkillCategories.SEARCH_QUERY, Difficulties.EASY, MCP, tools=["navigate_to"],
          variants=["weather", "widgets", "alpha pricing"])
def web_search(term):
	return Draft("Search the web for {}.".format(term),
	             dict(tabs=["about:blank"]),
	             [fact("active_url", "eq", "about:blank")],
	             [fact("active_url", "eq", search_url(term))],
	             [call("navigate_to", url=term), done()])


@template(BROWSER, SkillCategories.SEARCH_QUERY, Difficulties.EASY, GUI, variants=["daily news", "gamma", "beta portal"])
def web_search_typed(term):
	return Draft("Type a web search for {} into the address bar.".format(term),
	             dict(tabs=[ALPHA]),
	             [fact("active_url", "eq", ALPHA)],
	             [fact("active_url", "eq", search_url(term))],
	             [key("Ctrl+L"), type_text(term), key("Enter"), done()])


@template(BROWSER, SkillCategories.SEARCH_QUERY, Difficulties.MEDIUM, GUI, tools=["navigate_to"],
          variants=SEARCH_RESULTS)
def search_and_open_result(variant):
	term, url = variant
	return Draft("Search the web for {} and open the first result.".format(term),
	             dict(tabs=["about:blank"]),
	             [fact("active_url", "eq", "about:blank")],
	             [fact("active_url", "eq", url)],
	             [call("navigate_to", url=term), click(*FIRST_LINK), done()])


@template(BROWSER, SkillCategories.SEARCH_QUERY, Difficulties.MEDIUM, MCP, tools=["open_new_tab"],
          variants=["gamma shop", "beta weather", "news"])
def search_in_new_tab(term):
	return Draft("Search for {} in a new tab.".format(term),
	             dict(tabs=[ALPHA]),
	             [fact("tab_count", "eq", 1)],
	             [fact("tab_count", "eq", 2), fact("active_url", "eq", search_url(term))],
	             [call("open_new_tab", url=term), done()])


@template(BROWSER, SkillCategories.SEARCH_QUERY, Difficulties.HARD, MCP, tools=["navigate_to", "bookmark_page"],
          variants=SEARCH_RESULTS)
def search_and_bookmark_result(variant):
	term, url = variant
	return Draft("Search the web for {}, open the first result and bookmark it.".format(term),
	             dict(tabs=["about:blank"]),
	             [fact("bookmarks", "len_eq", 0)],
	             [fact("active_url", "eq", url), fact("bookmarks", "contains", url)],
	             [call("navigate_to", url=term), click(*FIRST_LINK), call("bookmark_page", url=url), done()])


@template(BROWSER, SkillCategories.EXECUTION_AUTOMATION, Difficulties.EASY, GUI, variants=[ALPHA_DOCS, NEWS, GAMMA])
def print_page(url):
	return Draft("Print the current page.",
	             dict(tabs=[url]),
	             [fact("printed_pages", "len_eq", 0)],
	             [fact("printed_pages", "contains", url)],
	             [key("Ctrl+P"), key("Enter"), done()])


@template(BROWSER, SkillCategories.EXECUTION_AUTOMATION, Difficulties.EASY, GUI, variants=[WEATHER, ALPHA])
def save_page(url):
	return Draft("Save the current page.",
	             dict(tabs=[url]),
	             [fact("saved_pages", "len_eq", 0)],
	             [fact("saved_pages", "contains", url)],
	             [key("Ctrl+S"), key("Enter"), done()])


@template(BROWSER, SkillCategories.EXECUTION_AUTOMATION, Difficulties.MEDIUM, MCP, tools=["switch_tab"],
          variants=[NEWS, ALPHA_PRICING])
def print_second_tab(url):
	return Draft("Print the page in the second tab.",
	             dict(tabs=[ALPHA, url], active=0),
	             [fact("printed_pages", "len_eq", 0)],
	             [fact("printed_pages", "contains", url)],
	             [call("switch_tab", index=1), key("Ctrl+P"), key("Enter"), done()])


@template(BROWSER, SkillCategories.EXECUTION_AUTOMATION, Difficulties.HARD, MCP, tools=["bring_back_last_tab"],
          variants=[GAMMA, ALPHA_DOCS])
def reopen_and_print(url):
	return Draft("Reopen the last closed tab and print it.",
	             dict(tabs=[ALPHA], closed_tabs=[url]),
	             [fact("closed_tab_count", "eq", 1)],
	             [fact("printed_pages", "contains", url), fact("closed_tab_count", "eq", 0)],
	             [call("bring_back_last_tab"), key("Ctrl+P"), key("Enter"), done()])


@template(BROWSER, SkillCategories.EXECUTION_AUTOMATION, Difficulties.HARD, GUI, tools=["navigate_to"],
          variants=[("Ada", "ada@example.org"), ("Lin", "lin@example.org")])
def submit_contact_form(variant):
	name, email = variant
	return Draft("Send the contact form at {} with name {} and email {}.".format(FORM_URL, name, email),
	             dict(tabs=[ALPHA]),
	             [fact("submitted_forms", "len_eq", 0)],
	             [fact("submitted_forms", "contains", dict(name=name, email=email))],
	             [call("navigate_to", url=FORM_URL),
	              click(240, 315), type_text(name),
	              click(240, 355), type_text(email),
	              click(100, 395), done()])


@template(BROWSER, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.EASY, MCP, tools=["delete_browsing_data"],
          variants=[(ALPHA, BETA, NEWS), (GAMMA, WEATHER)])
def clear_all_history(history):
	return Draft("Delete the complete browsing history.",
	             dict(tabs=[ALPHA], history=list(history)),
	             [fact("history", "len_eq", len(history))],
	             [fact("history", "len_eq", 0), fact("data_cleared", "eq", True)],
	             [call("delete_browsing_data", time_range="all_time"), done()])


@template(BROWSER, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.MEDIUM, MCP,
          tools=["navigate_to", "delete_browsing_data"], variants=[GAMMA, NEWS])
def clear_last_hour(url):
	return Draft("Visit {}, then delete only the browsing data of the last hour.".format(url),
	             dict(tabs=[ALPHA], history=[ALPHA]),
	             [fact("history", "len_eq", 1)],
	             [fact("history", "eq", [ALPHA]), fact("data_cleared", "eq", True), fact("active_url", "eq", url)],
	             [call("navigate_to", url=url), call("delete_browsing_data", time_range="last_hour"), done()])


@template(BROWSER, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.EASY, GUI, variants=[ALPHA, NEWS])
def open_privacy_panel(url):
	return Draft("Open the privacy settings.",
	             dict(tabs=[url]),
	             [fact("privacy_settings_open", "eq", False)],
	             [fact("privacy_settings_open", "eq", True)],
	             [key("Ctrl+Shift+Delete"), done()])


@template(BROWSER, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.MEDIUM, MCP, tools=["open_privacy_settings"],
          variants=[("do_not_track", PRIVACY_DNT, "Send Do Not Track requests"),
                    ("block_third_party_cookies", PRIVACY_COOKIES, "Block third-party cookies")])
def enable_privacy_setting(variant):
	setting, toggle, label = variant
	return Draft("Turn on the privacy setting \"{}\".".format(label),
	             dict(tabs=[ALPHA]),
	             [fact("setting:" + setting, "eq", False)],
	             [fact("setting:" + setting, "eq", True)],
	             [call("open_privacy_settings"), click(*toggle), done()])


@template(BROWSER, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.HARD, MCP, tools=["open_privacy_settings"],
          variants=[GAMMA, BETA])
def harden_privacy(url):
	return Draft("Enable Do Not Track and block third-party cookies, then close the privacy settings.",
	             dict(tabs=[url]),
	             [fact("setting:do_not_track", "eq", False), fact("setting:block_third_party_cookies", "eq", False)],
	             [fact("setting:do_not_track", "eq", True),
	              fact("setting:block_third_party_cookies", "eq", True),
	              fact("privacy_settings_open", "eq", False)],
	             [call("open_privacy_settings"), click(*PRIVACY_DNT), click(*PRIVACY_COOKIES), click(*PRIVACY_CLOSE),
	              done()])


#~~ mini_sheet


def _column(values, column="A", start=1):
	return dict(("{}{}".format(column, start + i), value) for i, value in enumerate(values))


@template(SHEET, SkillCategories.DATA_RETRIEVAL, Difficulties.EASY, MCP, tools=["get_cell"],
          variants=[("B3", 42), ("D5", "Oslo"), ("A7", 3.5)])
def read_cell(variant):
	ref, value = variant
	answer = display(value)
	return Draft("What value does cell {} show? Answer with the value only.".format(ref),
	             dict(cells={ref: value}),
	             [fact("cell:" + ref, "eq", value)],
	             [fact("answer", "eq", answer)],
	             [call("get_cell", ref=ref), done(answer=answer)])


@template(SHEET, SkillCategories.DATA_RETRIEVAL, Difficulties.EASY, GUI, variants=[("C2", 75), ("E4", "Lima")])
def read_cell_on_screen(variant):
	ref, value = variant
	answer = display(value)
	return Draft("Look at the sheet and report the value of {}.".format(ref),
	             dict(cells={ref: value}),
	             [fact("cell:" + ref, "eq", value)],
	             [fact("answer", "eq", answer)],
	             [screenshot(), done(answer=answer)])


@template(SHEET, SkillCategories.DATA_RETRIEVAL, Difficulties.MEDIUM, MCP, tools=["get_range"],
          variants=[(14, 9, 27, 3), (5, 50, 12, 8)])
def read_range_maximum(values):
	answer = display(max(values))
	return Draft("What is the largest value in A1:A4? Answer with the number only.",
	             dict(cells=_column(values)),
	             [fact("cell:A1", "eq", values[0])],
	             [fact("answer", "eq", answer)],
	             [call("get_range", range="A1:A4"), done(answer=answer)])


@template(SHEET, SkillCategories.DATA_RETRIEVAL, Difficulties.MEDIUM, MCP, tools=["calculate"],
          variants=[(10, 20, 30, 40), (7, 8, 9, 6)])
def calculate_without_writing(values):
	answer = display(sum(values))
	return Draft("Report the sum of A1:A4 without changing the sheet.",
	             dict(cells=_column(values)),
	             [fact("raw:A5", "eq", None)],
	             [fact("answer", "eq", answer), fact("raw:A5", "eq", None)],
	             [call("calculate", formula="=SUM(A1:A4)"), done(answer=answer)])


@template(SHEET, SkillCategories.DATA_RETRIEVAL, Difficulties.HARD, MCP, tools=["get_cell"],
          variants=[("Data", "C2", 17), ("Archive", "B6", 230)])
def read_cell_on_other_sheet(variant):
	sheet, ref, value = variant
	answer = display(value)
	return Draft("Report the value of {} on sheet {} without leaving Sheet1.".format(ref, sheet),
	             dict(sheets={"Sheet1": {"A1": "Summary"}, sheet: {ref: value}}),
	             [fact("active_sheet", "eq", "Sheet1")],
	             [fact("answer", "eq", answer), fact("active_sheet", "eq", "Sheet1")],
	             [call("get_cell", ref=ref, sheet=sheet), done(answer=answer)])


@template(SHEET, SkillCategories.DATA_MANIPULATION, Difficulties.EASY, MCP, tools=["set_cell"],
          variants=[("C4", 120), ("B2", "Done"), ("E8", 7.5)])
def write_cell(variant):
	ref, value = variant
	return Draft("Set cell {} to {}.".format(ref, display(value)),
	             dict(cells={"A1": "Notes"}),
	             [fact("raw:" + ref, "eq", None)],
	             [fact("cell:" + ref, "eq", value)],
	             [call("set_cell", ref=ref, value=value), done()])


@template(SHEET, SkillCategories.DATA_MANIPULATION, Difficulties.EASY, GUI, variants=[("B5", 64), ("D2", "North")])
def type_into_cell(variant):
	ref, value = variant
	return Draft("Type {} into cell {}.".format(display(value), ref),
	             dict(cells={"A1": "Notes"}),
	             [fact("raw:" + ref, "eq", None)],
	             [fact("cell:" + ref, "eq", value)],
	             [click(*cell_center(ref)), type_text(display(value)), key("Enter"), done()])


@template(SHEET, SkillCategories.DATA_MANIPULATION, Difficulties.MEDIUM, MCP, tools=["set_cell"],
          variants=[(3, 5, 7, 9), (12, 4, 6, 2)])
def add_sum_formula(values):
	return Draft("Put a formula into A5 that sums A1:A4.",
	             dict(cells=_column(values)),
	             [fact("raw:A5", "eq", None)],
	             [fact("raw:A5", "eq", "=SUM(A1:A4)"), fact("cell:A5", "eq", sum(values))],
	             [call("set_cell", ref="A5", value="=SUM(A1:A4)"), done()])


@template(SHEET, SkillCategories.DATA_MANIPULATION, Difficulties.MEDIUM, MCP, tools=["clear_range"],
          variants=[("B", ("x", "y", "z")), ("C", (1, 2, 3))])
def clear_column_block(variant):
	column, values = variant
	refs = ["{}{}".format(column, row) for row in (1, 2, 3)]
	return Draft("Clear the cells {}:{}.".format(refs[0], refs[-1]),
	             dict(cells=_column(values, column=column)),
	             [fact("cell:" + refs[0], "ne", None)],
	             [fact("cell:" + ref, "eq", None) for ref in refs],
	             [call("clear_range", range="{}:{}".format(refs[0], refs[-1])), done()])


@template(SHEET, SkillCategories.DATA_MANIPULATION, Difficulties.HARD, MCP, tools=["sort_range"],
          variants=[(30, 10, 40, 20), (8, 3, 5, 1)])
def sort_column(values):
	ordered = sorted(values)
	return Draft("Sort A1:A4 in ascending order.",
	             dict(cells=_column(values)),
	             [fact("cell:A1", "eq", values[0])],
	             [fact("cell:A{}".format(i + 1), "eq", value) for i, value in enumerate(ordered)],
	             [call("sort_range", range="A1:A4"), done()])


@template(SHEET, SkillCategories.SEARCH_QUERY, Difficulties.EASY, MCP, tools=["search_cells"],
          variants=[("Widget", "B4"), ("Gear", "D9"), ("Valve", "F2")])
def find_cell(variant):
	needle, ref = variant
	answer = "Sheet1!" + ref
	return Draft("Which cell contains {}? Answer in the form Sheet!Cell.".format(needle),
	             dict(cells={"A1": "Item", "A2": "Bolt", ref: needle}),
	             [fact("cell:" + ref, "eq", needle)],
	             [fact("answer", "eq", answer)],
	             [call("search_cells", query=needle), done(answer=answer)])


@template(SHEET, SkillCategories.SEARCH_QUERY, Difficulties.EASY, GUI, variants=[("Gasket", "C3"), ("Spring", "E6")])
def find_cell_on_screen(variant):
	needle, ref = variant
	answer = "Sheet1!" + ref
	return Draft("Look at the sheet: which cell holds {}? Answer in the form Sheet!Cell.".format(needle),
	             dict(cells={"A1": "Part", ref: needle}),
	             [fact("cell:" + ref, "eq", needle)],
	             [fact("answer", "eq", answer)],
	             [screenshot(), done(answer=answer)])


@template(SHEET, SkillCategories.SEARCH_QUERY, Difficulties.MEDIUM, MCP, tools=["search_cells"],
          variants=[("Stock", "D6", "Gadget"), ("Parts", "B11", "Rotor")])
def find_cell_on_other_sheet(variant):
	sheet, ref, needle = variant
	answer = "{}!{}".format(sheet, ref)
	return Draft("Find the cell holding {} in the workbook. Answer in the form Sheet!Cell.".format(needle),
	             dict(sheets={"Sheet1": {"A1": "Index"}, sheet: {ref: needle}}),
	             [fact("active_sheet", "eq", "Sheet1")],
	             [fact("answer", "eq", answer)],
	             [call("search_cells", query=needle), done(answer=answer)])


@template(SHEET, SkillCategories.SEARCH_QUERY, Difficulties.HARD, MCP, tools=["search_cells", "set_cell"],
          variants=[("Pears", 3, 9), ("Plums", 4, 11)])
def find_and_update(variant):
	name, row, value = variant
	cells = {"A1": "Fruit", "B1": "Qty", "A2": "Apples", "B2": 4, "A3": "Pears", "B3": 5, "A4": "Plums", "B4": 2}
	target = "B{}".format(row)
	return Draft("Find {} and set its quantity in the next column to {}.".format(name, value),
	             dict(cells=cells),
	             [fact("cell:" + target, "ne", value)],
	             [fact("cell:" + target, "eq", value), fact("cell:B2", "eq", 4)],
	             [call("search_cells", query=name), call("set_cell", ref=target, value=value), done()])


@template(SHEET, SkillCategories.EXECUTION_AUTOMATION, Difficulties.EASY, GUI, variants=["A1", "C1", "B2"])
def make_cell_bold(ref):
	return Draft("Make cell {} bold.".format(ref),
	             dict(cells={ref: "Header"}),
	             [fact("format:" + ref, "excludes", "bold")],
	             [fact("format:" + ref, "contains", "bold")],
	             [click(*cell_center(ref)), key("Ctrl+B"), done()])


@template(SHEET, SkillCategories.EXECUTION_AUTOMATION, Difficulties.MEDIUM, MCP, tools=["set_format"],
          variants=[(0.25, 0.5, 0.75), (0.1, 0.2, 0.4)])
def format_as_percent(values):
	return Draft("Format B1:B3 as percentages.",
	             dict(cells=_column(values, column="B")),
	             [fact("format:B1", "excludes", "percent")],
	             [fact("format:B{}".format(row), "contains", "percent") for row in (1, 2, 3)],
	             [call("set_format", range="B1:B3", format="percent"), done()])


@template(SHEET, SkillCategories.EXECUTION_AUTOMATION, Difficulties.MEDIUM, GUI, variants=[(30, 10, 40, 20), (6, 2, 9, 4)])
def sort_with_toolbar(values):
	ordered = sorted(values)
	return Draft("Sort the numbers in column A ascending with the toolbar.",
	             dict(cells=_column(values), selection="A1"),
	             [fact("cell:A1", "eq", values[0])],
	             [fact("cell:A{}".format(i + 1), "eq", value) for i, value in enumerate(ordered)],
	             [click(195, 35), done()])


@template(SHEET, SkillCategories.EXECUTION_AUTOMATION, Difficulties.HARD, MCP, tools=["set_cell"],
          variants=[((2, 3, 4), (10, 20, 30)), ((5, 6, 7), (2, 2, 2))])
def fill_products(variant):
	quantities, prices = variant
	cells = dict(_column(quantities))
	cells.update(_column(prices, column="B"))
	checker = [fact("cell:C{}".format(row), "eq", quantities[row - 1] * prices[row - 1]) for row in (1, 2, 3)]
	solution = [call("set_cell", ref="C{}".format(row), value="=A{0}*B{0}".format(row)) for row in (1, 2, 3)]
	return Draft("Fill C1:C3 with formulas multiplying column A with column B.",
	             dict(cells=cells),
	             [fact("raw:C1", "eq", None)],
	             checker,
	             solution + [done()])


@template(SHEET, SkillCategories.EXECUTION_AUTOMATION, Difficulties.HARD, GUI, variants=[(4, 8, 15, 16), (1, 1, 2, 3)])
def type_total_formula(values):
	return Draft("Type a formula into A5 that totals A1:A4.",
	             dict(cells=_column(values)),
	             [fact("raw:A5", "eq", None)],
	             [fact("cell:A5", "eq", sum(values))],
	             [click(*cell_center("A5")), type_text("=SUM(A1:A4)"), key("Enter"), done()])


@template(SHEET, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, MCP, tools=["switch_sheet"],
          variants=["Budget", "Q2"])
def switch_to_sheet(name):
	return Draft("Switch to the sheet {}.".format(name),
	             dict(sheets={"Sheet1": {}, name: {"A1": "Plan"}}),
	             [fact("active_sheet", "eq", "Sheet1")],
	             [fact("active_sheet", "eq", name)],
	             [call("switch_sheet", name=name), done()])


@template(SHEET, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, GUI, variants=["Budget", "Totals"])
def next_sheet_with_keys(name):
	return Draft("Move to the next sheet using the keyboard.",
	             dict(sheets={"Sheet1": {}, name: {}}),
	             [fact("active_sheet", "eq", "Sheet1")],
	             [fact("active_sheet", "eq", name)],
	             [key("Ctrl+PageDown"), done()])


@template(SHEET, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, GUI, variants=["Budget", "Costs"])
def previous_sheet_with_keys(name):
	return Draft("Go back to the previous sheet using the keyboard.",
	             dict(sheets={"Sheet1": {}, name: {}}, active_sheet=name),
	             [fact("active_sheet", "eq", name)],
	             [fact("active_sheet", "eq", "Sheet1")],
	             [key("Ctrl+PageUp"), done()])


@template(SHEET, SkillCategories.NAVIGATION_BROWSING, Difficulties.EASY, GUI, variants=["D7", "F12"])
def jump_to_first_cell(ref):
	return Draft("Jump back to cell A1 using the keyboard.",
	             dict(cells={"A1": "Start"}, selection=ref),
	             [fact("selection", "eq", ref)],
	             [fact("selection", "eq", "A1")],
	             [key("Ctrl+Home"), done()])


@template(SHEET, SkillCategories.NAVIGATION_BROWSING, Difficulties.MEDIUM, MCP, tools=["add_sheet"],
          variants=["Q3", "Archive", "Notes"])
def add_new_sheet(name):
	return Draft("Add a sheet named {}.".format(name),
	             dict(cells={"A1": "Main"}),
	             [fact("sheets", "excludes", name)],
	             [fact("sheets", "contains", name), fact("active_sheet", "eq", name)],
	             [call("add_sheet", name=name), done()])


@template(SHEET, SkillCategories.NAVIGATION_BROWSING, Difficulties.HARD, MCP, tools=["switch_sheet", "get_cell"],
          variants=[("Data", "B2", 31), ("Ledger", "E5", "Paid")])
def open_sheet_and_read(variant):
	sheet, ref, value = variant
	answer = display(value)
	return Draft("Open the sheet {} and report the value of {}.".format(sheet, ref),
	             dict(sheets={"Sheet1": {}, sheet: {ref: value}}),
	             [fact("active_sheet", "eq", "Sheet1")],
	             [fact("active_sheet", "eq", sheet), fact("answer", "eq", answer)],
	             [call("switch_sheet", name=sheet), call("get_cell", ref=ref), done(answer=answer)])


@template(SHEET, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.EASY, GUI, variants=[("B2", 12), ("D4", 99.5)])
def currency_with_keys(variant):
	ref, value = variant
	return Draft("Format cell {} as currency.".format(ref),
	             dict(cells={ref: value}),
	             [fact("format:" + ref, "excludes", "currency")],
	             [fact("format:" + ref, "contains", "currency")],
	             [click(*cell_center(ref)), key("Ctrl+Shift+4"), done()])


@template(SHEET, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.EASY, GUI, variants=[("C3", 0.3), ("A6", 0.05)])
def percent_with_keys(variant):
	ref, value = variant
	return Draft("Format cell {} as a percentage.".format(ref),
	             dict(cells={ref: value}),
	             [fact("format:" + ref, "excludes", "percent")],
	             [fact("format:" + ref, "contains", "percent")],
	             [click(*cell_center(ref)), key("Ctrl+Shift+5"), done()])


@template(SHEET, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.MEDIUM, MCP, tools=["set_format"],
          variants=[(10, 20, 30), (4.5, 9, 13.5)])
def currency_range(values):
	return Draft("Format B1:B3 as currency.",
	             dict(cells=_column(values, column="B")),
	             [fact("format:B1", "excludes", "currency")],
	             [fact("format:B{}".format(row), "contains", "currency") for row in (1, 2, 3)],
	             [call("set_format", range="B1:B3", format="currency"), done()])


@template(SHEET, SkillCategories.CONFIGURATION_SETTINGS, Difficulties.HARD, MCP, tools=["add_sheet", "set_cell", "set_format"],
          variants=["Report", "Summary2"])
def prepare_header_sheet(name):
	return Draft("Add a sheet {0}, write Total into its A1 and make that cell bold.".format(name),
	             dict(cells={"A1": "Main"}),
	             [fact("sheets", "excludes", name)],
	             [fact("sheets", "contains", name),
	              fact("cell:{}!A1".format(name), "eq", "Total"),
	              fact("format:{}!A1".format(name), "contains", "bold")],
	             [call("add_sheet", name=name),
	              call("set_cell", ref="A1", value="Total", sheet=name),
	              call("set_format", range="A1", format="bold", sheet=name),
	              done()])
