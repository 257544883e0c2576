# coding=utf-8
"""
``mini_browser``, a simulated web browser with tabs, bookmarks, history, print and save dialogs, a privacy panel
and a small catalog of static pages.

Screen geometry (1280x800)::

    tabs             tab-<i>         (10+160i, 0, 150, 30), new-tab-button right after the last tab
    toolbar          back-button     (10, 40, 30, 30)
                     address-bar     (50, 40, 860, 30)
                     bookmark-star   (920, 40, 30, 30)
                     menu-button     (1240, 40, 30, 30)
    page             page-content    (0, 80, 1000, 700), link-<j> at (40, 120+40j, 400, 30)
    menu             menu-<item>     (1030, 75+30j, 240, 30)
    print/save       dialog          (340, 150, 600, 400), confirm (760, 500, 80, 30), cancel (850, 500, 80, 30)
    privacy panel    privacy-panel   (200, 100, 880, 600)
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import copy

from .app import AppModel, element
from .exceptions import ActionFailed, SetupError

APP_ID = "mini_browser"

SEARCH_PREFIX = "https://search.example/?q="
FORM_URL = "https://forms.example/contact"

PAGES = collections.OrderedDict([
	("about:blank", dict(title="New Tab", content="", links=[])),
	("https://a.example", dict(title="Alpha Home",
	                           content="Welcome to Alpha.",
	                           links=[("Docs", "https://a.example/docs"), ("Pricing", "https://a.example/pricing")])),
	("https://a.example/docs", dict(title="Alpha Docs",
	                                content="Alpha documentation. Version 4.2.",
	                                links=[("Home", "https://a.example")])),
	("https://a.example/pricing", dict(title="Alpha Pricing",
	                                   content="Alpha Pro costs 12 dollars per month.",
	                                   links=[("Home", "https://a.example")])),
	("https://b.example", dict(title="Beta Portal",
	                           content="Beta portal with local services.",
	                           links=[("Weather", "https://b.example/weather")])),
	("https://b.example/weather", dict(title="Beta Weather",
	                                   content="Today: sunny, 21 degrees.",
	                                   links=[("Portal", "https://b.example")])),
	("https://c.example", dict(title="Gamma Shop", content="Gamma sells widgets.", links=[])),
	(FORM_URL, dict(title="Contact Form", content="Send us a message.", links=[], form=True)),
	("https://news.example", dict(title="Daily News",
	                              content="Top story: Local library opens new wing.",
	                              links=[("Alpha", "https://a.example")]))
])

SETTINGS = ("do_not_track", "block_third_party_cookies")
TIME_RANGES = ("last_hour", "all_time")

MENU_ITEMS = (
	("menu-new-tab", "New tab"),
	("menu-history", "History"),
	("menu-bookmarks", "Bookmarks"),
	("menu-save-page", "Save page"),
	("menu-print", "Print"),
	("menu-settings", "Settings")
)

DIALOG_ELEMENTS = {
	"print": ("print-dialog", "print-button", "print-cancel"),
	"save": ("save-dialog", "save-button", "save-cancel"),
	"privacy": ("privacy-panel", "toggle-do-not-track", "toggle-third-party-cookies", "clear-data-button", "privacy-close")
}

DIALOG_NAMES = {
	"print": "Print dialog",
	"save": "Save dialog",
	"privacy": "Privacy settings"
}


def is_url(text):
	return isinstance(text, str) and (text.startswith("https://") or text.startswith("http://") or text.startswith("about:"))


def normalize_url(text):
	"""
	Turns address bar input into a URL: URLs pass, host names get a scheme, anything else becomes a search.

	    >>> normalize_url("c.example")
	    'https://c.example'
	    >>> normalize_url("Alpha Docs")
	    'https://search.example/?q=alpha+docs'
	"""
	text = text.strip()
	if is_url(text):
		if text.startswith("http") and text.endswith("/") and text.count("/") == 3:
			text = text[:-1]
		return text
	if " " not in text and "." in text:
		return "https://" + text
	return search_url(text)


def search_url(query):
	return SEARCH_PREFIX + "+".join(query.lower().split())


def search(query):
	tokens = [token for token in query.lower().split() if token]
	results = []
	for url, page in PAGES.items():
		if not url.startswith("https://"):
			continue
		haystack = (page["title"] + " " + page["content"]).lower()
		if tokens and all(token in haystack for token in tokens):
			results.append(url)
	return results


def title_of(url):
	if url in PAGES:
		return PAGES[url]["title"]
	if url.startswith(SEARCH_PREFIX):
		return "Search: " + url[len(SEARCH_PREFIX):].replace("+", " ")
	if url == "about:history":
		return "History"
	if url == "about:bookmarks":
		return "Bookmarks"
	return url


class Browser(AppModel):
	APP_ID = APP_ID

	TOOL_DEFINITIONS = (
		("navigate_to", "Loads a URL or search terms in the active tab.",
		 [dict(name="url", type="string", required=True, description="URL or search terms")]),
		("open_new_tab", "Opens a new tab, optionally loading a URL in it.",
		 [dict(name="url", type="string", required=False, description="URL to load")]),
		("switch_tab", "Activates the tab at the given zero based index.",
		 [dict(name="index", type="integer", required=True, description="Tab index")]),
		("get_page_content", "Returns title, URL, text and links of the active page.", []),
		("bring_back_last_tab", "Reopens the most recently closed tab.", []),
		("bookmark_page", "Adds a URL to the bookmarks.",
		 [dict(name="url", type="string", required=True, description="URL to bookmark")]),
		("delete_browsing_data", "Deletes the browsing history of a time range.",
		 [dict(name="time_range", type="string", required=False, description="last_hour or all_time")]),
		("open_privacy_settings", "Opens the privacy and security settings panel.", [])
	)

	SETUP_FIELDS = ("tabs", "active", "bookmarks", "history", "closed_tabs", "settings", "print_dialog_open",
	                "save_dialog_open", "privacy_settings_open", "form")

	FACTS = ("active_url", "active_title", "tabs", "tab_count", "bookmarks", "history", "closed_tab_count",
	         "print_dialog_open", "save_dialog_open", "privacy_settings_open", "menu_open", "printed_pages",
	         "saved_pages", "submitted_forms", "data_cleared", "address_focused", "setting:do_not_track",
	         "setting:block_third_party_cookies", "answer")

	#~~ setup

	def _setup(self, state):
		self._reject_unknown_fields(state, self.SETUP_FIELDS)

		tabs = state.get("tabs", ["about:blank"])
		if not isinstance(tabs, list) or not tabs:
			raise SetupError("tabs must be a non-empty list of URLs", app_id=APP_ID)
		self._tabs = [dict(url=self._checked_url(url), back=[], scroll=0) for url in tabs]

		self._active = state.get("active", 0)
		if not isinstance(self._active, int) or not 0 <= self._active < len(self._tabs):
			raise SetupError("active tab {!r} out of range".format(self._active), app_id=APP_ID)

		self._bookmarks = [self._checked_url(url) for url in state.get("bookmarks", [])]
		if len(set(self._bookmarks)) != len(self._bookmarks):
			raise SetupError("contradictory state: duplicate bookmark", app_id=APP_ID)
		self._history = [self._checked_url(url) for url in state.get("history", [])]
		self._session_start = len(self._history)
		self._closed = [dict(url=self._checked_url(url), back=[], scroll=0) for url in state.get("closed_tabs", [])]

		settings = state.get("settings", dict())
		if not isinstance(settings, dict):
			raise SetupError("settings must be an object", app_id=APP_ID)
		unknown = sorted(set(settings.keys()) - set(SETTINGS))
		if unknown:
			raise SetupError("unknown setting {}".format(", ".join(unknown)), app_id=APP_ID)
		self._settings = dict((key, bool(settings.get(key, False))) for key in SETTINGS)

		dialogs = [name for name in ("print", "save", "privacy") if state.get(self._dialog_fact(name), False)]
		if len(dialogs) > 1:
			raise SetupError("contradictory state: more than one dialog open", app_id=APP_ID)
		self._dialog = dialogs[0] if dialogs else None
		self._menu_open = False

		self._address_focused = False
		self._address_buffer = ""
		self._form = dict(name="", email="")
		self._form_focus = None
		form = state.get("form")
		if form is not None:
			if self._active_tab["url"] != FORM_URL:
				raise SetupError("form state requires the contact form page", app_id=APP_ID)
			unknown = sorted(set(form.keys()) - set(self._form.keys()))
			if unknown:
				raise SetupError("unknown form field {}".format(", ".join(unknown)), app_id=APP_ID)
			self._form.update(form)

		self._printed = []
		self._saved = []
		self._submitted = []
		self._data_cleared = False

	@staticmethod
	def _dialog_fact(name):
		if name == "privacy":
			return "privacy_settings_open"
		return name + "_dialog_open"

	def _checked_url(self, url):
		if not is_url(url):
			raise SetupError("invalid URL {!r}".format(url), app_id=APP_ID)
		return url

	@property
	def _active_tab(self):
		return self._tabs[self._active]

	def _page(self, url):
		if url in PAGES:
			page = PAGES[url]
			return dict(title=page["title"], content=page["content"], links=list(page["links"]), form=page.get("form", False))
		if url.startswith(SEARCH_PREFIX):
			query = url[len(SEARCH_PREFIX):].replace("+", " ")
			results = search(query)
			return dict(title=title_of(url),
			            content="{} results for {}".format(len(results), query),
			            links=[(title_of(u), u) for u in results],
			            form=False)
		if url == "about:history":
			seen = []
			for u in reversed(self._history):
				if u not in seen:
					seen.append(u)
			return dict(title="History", content="Recently visited pages.", links=[(title_of(u), u) for u in seen], form=False)
		if url == "about:bookmarks":
			return dict(title="Bookmarks", content="Saved bookmarks.", links=[(title_of(u), u) for u in self._bookmarks], form=False)
		return dict(title="Page not found", content="The page {} does not exist.".format(url), links=[], form=False)

	#~~ rendering

	def _elements(self):
		result = []
		for i, tab in enumerate(self._tabs):
			result.append(element("tab-{}".format(i), "tab", title_of(tab["url"]), (10 + 160 * i, 0, 150, 30),
			                      "selected" if i == self._active else None))
		result.append(element("new-tab-button", "button", "New tab", (10 + 160 * len(self._tabs), 0, 30, 30)))

		url = self._active_tab["url"]
		result.append(element("back-button", "button", "Back", (10, 40, 30, 30)))
		result.append(element("address-bar", "textbox",
		                      self._address_buffer if self._address_focused else url,
		                      (50, 40, 860, 30),
		                      "focused" if self._address_focused else None))
		result.append(element("bookmark-star", "button", "Bookmark", (920, 40, 30, 30),
		                      "checked" if url in self._bookmarks else None))
		result.append(element("menu-button", "button", "Menu", (1240, 40, 30, 30),
		                      "expanded" if self._menu_open else None))

		page = self._page(url)
		result.append(element("page-content", "document", page["title"], (0, 80, 1000, 700)))
		for j, (label, _) in enumerate(page["links"]):
			result.append(element("link-{}".format(j), "link", label, (40, 120 + 40 * j, 400, 30)))
		if page["form"]:
			for offset, field in enumerate(("name", "email")):
				value = self._form[field]
				label = field.capitalize() + (": " + value if value else "")
				result.append(element("field-" + field, "textbox", label, (40, 300 + 40 * offset, 400, 30),
				                      "focused" if self._form_focus == field else None))
			result.append(element("submit-button", "button", "Submit", (40, 380, 120, 30)))

		if self._menu_open:
			for j, (element_id, label) in enumerate(MENU_ITEMS):
				result.append(element(element_id, "menuitem", label, (1030, 75 + 30 * j, 240, 30)))

		if self._dialog == "print":
			result.append(element("print-dialog", "dialog", "Print", (340, 150, 600, 400)))
			result.append(element("print-button", "button", "Print", (760, 500, 80, 30)))
			result.append(element("print-cancel", "button", "Cancel", (850, 500, 80, 30)))
		elif self._dialog == "save":
			result.append(element("save-dialog", "dialog", "Save page", (340, 150, 600, 400)))
			result.append(element("save-button", "button", "Save", (760, 500, 80, 30)))
			result.append(element("save-cancel", "button", "Cancel", (850, 500, 80, 30)))
		elif self._dialog == "privacy":
			result.append(element("privacy-panel", "dialog", "Privacy and security", (200, 100, 880, 600)))
			result.append(element("toggle-do-not-track", "switch", "Send Do Not Track requests", (240, 180, 800, 40),
			                      "checked" if self._settings["do_not_track"] else None))
			result.append(element("toggle-third-party-cookies", "switch", "Block third-party cookies", (240, 230, 800, 40),
			                      "checked" if self._settings["block_third_party_cookies"] else None))
			result.append(element("clear-data-button", "button", "Clear browsing data", (240, 280, 300, 40)))
			result.append(element("privacy-close", "button", "Close", (960, 110, 100, 30)))

		return result

	def _focus(self):
		if self._address_focused:
			return "address-bar"
		if self._form_focus is not None:
			return "field-" + self._form_focus
		return None

	#~~ state transitions

	def _navigate(self, url):
		tab = self._active_tab
		if tab["url"] != url:
			tab["back"].append(tab["url"])
			if tab["url"] == FORM_URL:
				self._form = dict(name="", email="")
		tab["url"] = url
		tab["scroll"] = 0
		if not url.startswith("about:"):
			self._history.append(url)
		self._menu_open = False
		self._address_focused = False
		self._address_buffer = ""
		self._form_focus = None
		return "Page loaded: {}".format(url)

	def _open_tab(self, url=None):
		self._tabs.append(dict(url="about:blank", back=[], scroll=0))
		self._active = len(self._tabs) - 1
		self._address_focused = False
		self._form_focus = None
		if url:
			self._navigate(normalize_url(url))
		return "New tab opened"

	def _close_tab(self):
		if len(self._tabs) == 1:
			raise ActionFailed("cannot close the last tab")
		self._closed.append(self._tabs.pop(self._active))
		self._active = min(self._active, len(self._tabs) - 1)
		return "Tab closed"

	def _reopen_tab(self):
		if not self._closed:
			raise ActionFailed("no closed tab to restore")
		self._tabs.append(self._closed.pop())
		self._active = len(self._tabs) - 1
		return "Closed tab reopened"

	def _bookmark(self, url):
		if url not in self._bookmarks:
			self._bookmarks.append(url)
		return "Page bookmarked"

	def _open_dialog(self, name):
		if self._dialog is not None and self._dialog != name:
			raise ActionFailed("blocked by the open {}".format(DIALOG_NAMES[self._dialog]))
		self._dialog = name
		self._menu_open = False
		return "{} opened".format(DIALOG_NAMES[name])

	def _close_dialog(self):
		name = self._dialog
		self._dialog = None
		return "{} closed".format(DIALOG_NAMES[name])

	def _print(self):
		self._printed.append(self._active_tab["url"])
		self._dialog = None
		return "Page printed"

	def _save(self):
		self._saved.append(self._active_tab["url"])
		self._dialog = None
		return "Page saved"

	def _clear_history(self, time_range):
		if time_range == "all_time":
			self._history = []
		else:
			self._history = self._history[:self._session_start]
		self._session_start = min(self._session_start, len(self._history))
		self._data_cleared = True
		return "Browsing data deleted"

	def _submit(self):
		if self._active_tab["url"] != FORM_URL:
			raise ActionFailed("no form on this page")
		for field in ("name", "email"):
			if not self._form[field]:
				raise ActionFailed("form incomplete: {} is required".format(field))
		self._submitted.append(dict(name=self._form["name"], email=self._form["email"]))
		self._form = dict(name="", email="")
		self._form_focus = None
		return "Form submitted"

	#~~ GUI handlers

	def on_click(self, target, double=False):
		element_id = target.element_id

		if self._dialog is not None and element_id not in DIALOG_ELEMENTS[self._dialog]:
			raise ActionFailed("blocked by the open {}".format(DIALOG_NAMES[self._dialog]))

		if element_id != "address-bar":
			self._address_focused = False
			self._address_buffer = ""
		if not element_id.startswith("field-"):
			self._form_focus = None
		if self._menu_open and not element_id.startswith("menu-"):
			self._menu_open = False

		if element_id.startswith("tab-"):
			self._active = int(element_id[len("tab-"):])
			return "Tab switched"
		elif element_id == "new-tab-button":
			return self._open_tab()
		elif element_id == "back-button":
			tab = self._active_tab
			if not tab["back"]:
				raise ActionFailed("no previous page")
			url = tab["back"].pop()
			tab["url"] = url
			if not url.startswith("about:"):
				self._history.append(url)
			return "Page loaded: {}".format(url)
		elif element_id == "address-bar":
			self._address_focused = True
			self._address_buffer = ""
			return "Address bar focused"
		elif element_id == "bookmark-star":
			url = self._active_tab["url"]
			if url in self._bookmarks:
				self._bookmarks.remove(url)
				return "Bookmark removed"
			return self._bookmark(url)
		elif element_id == "menu-button":
			self._menu_open = not self._menu_open
			return "Menu opened" if self._menu_open else "Menu closed"
		elif element_id.startswith("menu-"):
			self._menu_open = False
			if element_id == "menu-new-tab":
				return self._open_tab()
			elif element_id == "menu-history":
				return self._navigate("about:history")
			elif element_id == "menu-bookmarks":
				return self._navigate("about:bookmarks")
			elif element_id == "menu-save-page":
				return self._open_dialog("save")
			elif element_id == "menu-print":
				return self._open_dialog("print")
			elif element_id == "menu-settings":
				return self._open_dialog("privacy")
		elif element_id.startswith("link-"):
			links = self._page(self._active_tab["url"])["links"]
			return self._navigate(links[int(element_id[len("link-"):])][1])
		elif element_id in ("field-name", "field-email"):
			self._form_focus = element_id[len("field-"):]
			return "{} field focused".format(self._form_focus.capitalize())
		elif element_id == "submit-button":
			return self._submit()
		elif element_id == "print-button":
			return self._print()
		elif element_id == "save-button":
			return self._save()
		elif element_id in ("print-cancel", "save-cancel", "privacy-close"):
			return self._close_dialog()
		elif element_id == "toggle-do-not-track":
			self._settings["do_not_track"] = not self._settings["do_not_track"]
			return "Do Not Track {}".format("enabled" if self._settings["do_not_track"] else "disabled")
		elif element_id == "toggle-third-party-cookies":
			self._settings["block_third_party_cookies"] = not self._settings["block_third_party_cookies"]
			return "Third-party cookies {}".format("blocked" if self._settings["block_third_party_cookies"] else "allowed")
		elif element_id == "clear-data-button":
			return self._clear_history("all_time")

		return "Nothing happened"

	def on_type(self, text):
		if self._dialog is not None:
			raise ActionFailed("blocked by the open {}".format(DIALOG_NAMES[self._dialog]))
		if self._address_focused:
			self._address_buffer += text
			return "Typed into address bar"
		if self._form_focus is not None:
			self._form[self._form_focus] += text
			return "Typed into {} field".format(self._form_focus.capitalize())
		raise ActionFailed("no focused text field")

	def on_key(self, keys):
		if keys == "Escape":
			if self._dialog is not None:
				return self._close_dialog()
			if self._menu_open:
				self._menu_open = False
				return "Menu closed"
			if self._address_focused:
				self._address_focused = False
				self._address_buffer = ""
				return "Address bar unfocused"
			return "Nothing to close"

		if keys == "Enter":
			if self._dialog == "print":
				return self._print()
			if self._dialog == "save":
				return self._save()
			if self._dialog is not None:
				raise ActionFailed("nothing to confirm")
			if self._address_focused:
				if not self._address_buffer.strip():
					raise ActionFailed("address bar is empty")
				return self._navigate(normalize_url(self._address_buffer))
			if self._form_focus is not None:
				return self._submit()
			raise ActionFailed("nothing to confirm")

		if keys == "Ctrl+P":
			return self._open_dialog("print")
		if keys == "Ctrl+S":
			return self._open_dialog("save")
		if keys == "Ctrl+Shift+Delete":
			return self._open_dialog("privacy")

		if self._dialog is not None:
			raise ActionFailed("blocked by the open {}".format(DIALOG_NAMES[self._dialog]))

		if keys == "Ctrl+T":
			return self._open_tab()
		if keys == "Ctrl+W":
			return self._close_tab()
		if keys == "Ctrl+Shift+T":
			return self._reopen_tab()
		if keys == "Ctrl+D":
			return self._bookmark(self._active_tab["url"])
		if keys == "Ctrl+L":
			self._form_focus = None
			self._address_focused = True
			self._address_buffer = ""
			return "Address bar focused"
		if keys == "Ctrl+Tab":
			self._active = (self._active + 1) % len(self._tabs)
			return "Tab switched"

		raise ActionFailed("unsupported key combination {}".format(keys))

	def on_scroll(self, direction):
		tab = self._active_tab
		if direction == "down":
			tab["scroll"] += 1
		else:
			tab["scroll"] = max(0, tab["scroll"] - 1)
		return "Scrolled {}".format(direction)

	#~~ MCP tools

	def tool_navigate_to(self, url):
		if not url.strip():
			raise ActionFailed("url must not be empty")
		return self._navigate(normalize_url(url))

	def tool_open_new_tab(self, url=None):
		return self._open_tab(url)

	def tool_switch_tab(self, index):
		if not 0 <= index < len(self._tabs):
			raise ActionFailed("no tab at index {}".format(index))
		self._active = index
		return "Tab switched"

	def tool_get_page_content(self):
		url = self._active_tab["url"]
		page = self._page(url)
		lines = ["Title: {}".format(page["title"]), "URL: {}".format(url)]
		if page["content"]:
			lines.append(page["content"])
		if page["links"]:
			lines.append("Links: {}".format(", ".join(label for label, _ in page["links"])))
		return "\n".join(lines)

	def tool_bring_back_last_tab(self):
		return self._reopen_tab()

	def tool_bookmark_page(self, url):
		return self._bookmark(normalize_url(url))

	def tool_delete_browsing_data(self, time_range="all_time"):
		if time_range not in TIME_RANGES:
			raise ActionFailed("unknown time range {}".format(time_range))
		return self._clear_history(time_range)

	def tool_open_privacy_settings(self):
		self._dialog = "privacy"
		self._menu_open = False
		return "Privacy settings opened"

	#~~ facts

	def _fact(self, name):
		if name.startswith("setting:"):
			return self._settings[name[len("setting:"):]]

		url = self._active_tab["url"]
		facts = {
			"active_url": lambda: url,
			"active_title": lambda: title_of(url),
			"tabs": lambda: [tab["url"] for tab in self._tabs],
			"tab_count": lambda: len(self._tabs),
			"bookmarks": lambda: list(self._bookmarks),
			"history": lambda: list(self._history),
			"closed_tab_count": lambda: len(self._closed),
			"print_dialog_open": lambda: self._dialog == "print",
			"save_dialog_open": lambda: self._dialog == "save",
			"privacy_settings_open": lambda: self._dialog == "privacy",
			"menu_open": lambda: self._menu_open,
			"printed_pages": lambda: list(self._printed),
			"saved_pages": lambda: list(self._saved),
			"submitted_forms": lambda: copy.deepcopy(self._submitted),
			"data_cleared": lambda: self._data_cleared,
			"address_focused": lambda: self._address_focused
		}
		return facts[name]()

	def snapshot(self):
		result = AppModel.snapshot(self)
		result.update(dict(tabs=copy.deepcopy(self._tabs),
		                   active=self._active,
		                   bookmarks=list(self._bookmarks),
		                   history=list(self._history),
		                   closed=copy.deepcopy(self._closed),
		                   settings=dict(self._settings),
		                   dialog=self._dialog,
		                   menu_open=self._menu_open,
		                   address=[self._address_focused, self._address_buffer],
		                   form=dict(self._form),
		                   form_focus=self._form_focus,
		                   printed=list(self._printed),
		                   saved=list(self._saved),
		                   submitted=copy.deepcopy(self._submitted),
		                   data_cleared=self._data_cleared))
		return result
