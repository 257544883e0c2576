# coding=utf-8
"""
Scripted policies: deterministic rule tables that make the whole pipeline runnable without a model endpoint.

A table is an ordered list of :class:`Rule` instances. On every step the first rule whose ``when`` holds for the
current :class:`EpisodeContext` produces the output, if none holds the episode terminates with failure, so every
table is total.

Bundled tables:

  * ``reference``: replays the stored reference solution of a task, the offline expert
  * ``wander``: tries a dotted tool name, then clicks around the menus for 17 steps and gives up
  * ``student``: follows the reference solution but lacks a configured set of shortcuts and tools, wanders once
    it hits one of those and learns them from ``Use <keys> to ...`` and ``Call <tool>(...) to ...`` rules in its
    prompt
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import re

from evolvecua.model import Action, ActionTypes

from .base import Episode, PolicyHandle, PolicyKinds, PolicyOutput

WANDER_STEPS = 17

STUDENT_GAPS = {
	"mini_browser": ["key:Ctrl+P", "tool:bookmark_page", "tool:bring_back_last_tab", "key:Ctrl+Shift+T"],
	"mini_sheet": ["key:Ctrl+PageUp", "key:Ctrl+Home", "tool:get_range"]
}
"""Shortcuts and tools the bundled student does not know until its prompt teaches them."""

WANDER = {
	# menu, save entry, close the dialog again, then scroll and miss
	"mini_browser": [Action.gui(ActionTypes.CLICK, coordinates=(1255, 55)),
	                 Action.gui(ActionTypes.CLICK, coordinates=(1150, 180)),
	                 Action.gui(ActionTypes.KEY_COMBO, keys="Escape"),
	                 Action.gui(ActionTypes.SCROLL, direction="down"),
	                 Action.gui(ActionTypes.CLICK, coordinates=(1270, 790)),
	                 Action.gui(ActionTypes.SCROLL, direction="up")],
	"mini_sheet": [Action.gui(ActionTypes.SCREENSHOT),
	               Action.gui(ActionTypes.SCROLL, direction="down"),
	               Action.gui(ActionTypes.CLICK, coordinates=(1270, 790)),
	               Action.gui(ActionTypes.SCROLL, direction="up"),
	               Action.gui(ActionTypes.KEY_COMBO, keys="Escape")]
}
_default_wander = [Action.gui(ActionTypes.SCREENSHOT),
                   Action.gui(ActionTypes.SCROLL, direction="down"),
                   Action.gui(ActionTypes.SCROLL, direction="up")]

_use_regex = re.compile(r"\bUse (\S+) to ")
_call_regex = re.compile(r"\bCall ([a-z0-9_]+)\(")
_word_regex = re.compile(r"[a-z]+")


def learned_items(prompt):
	"""
	Returns the action keys taught by the rules in a prompt.

	    >>> sorted(learned_items("- Use Ctrl+P to open print dialog\\n- Call bookmark_page(url) to bookmark page"))
	    ['key:Ctrl+P', 'tool:bookmark_page']
	"""
	if not prompt:
		return set()
	result = set("key:" + keys for keys in _use_regex.findall(prompt))
	result.update("tool:" + name for name in _call_regex.findall(prompt))
	return result


def wander_action(app_id, index):
	actions = WANDER.get(app_id, _default_wander)
	return actions[index % len(actions)]


def dotted_guess(task):
	"""
	A tool call with a dotted name made up from the application and the first word of the goal, the kind of call a
	model unfamiliar with the tool naming emits. It never decodes.
	"""
	words = _word_regex.findall(task.goal.lower())
	name = "{}.{}".format(task.app_id, words[0] if words else "run")
	return "<tool_call>\n{{\"name\":\"{}\",\"arguments\":{{}}}}\n</tool_call>".format(name)


class Rule(collections.namedtuple("Rule", "name, when, act, reasoning")):
	"""
	Arguments:
	    name (str): Name of the rule.
	    when (callable): Predicate over an :class:`EpisodeContext`.
	    act (callable): Produces an :class:`~evolvecua.model.Action` or raw text for the context.
	    reasoning (str): Reasoning text emitted with the action.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, name, when, act, reasoning=""):
		return cls(name, when, act, reasoning)


def _always(context):
	return True


class EpisodeContext(object):
	def __init__(self, task, prompt, tools):
		self.task = task
		self.prompt = prompt
		self.tools = tools
		self.observation = None
		self.result = None
		self.step = 0
		self.state = dict()


class ScriptedPolicy(PolicyHandle):
	kind = PolicyKinds.SCRIPTED

	def __init__(self, policy_id, rules):
		PolicyHandle.__init__(self, policy_id)
		self._rules = list(rules)

	@property
	def rules(self):
		return list(self._rules)

	def start(self, task, prompt, tools):
		return ScriptedEpisode(self._rules, task, prompt, tools)

	@classmethod
	def from_table(cls, policy_id, table):
		"""
		Creates a policy from a declarative table, a list of entries like::

		    {"goal_contains": "print", "actions": [{"name": "computer", "arguments": {"action": "key_combo", "keys": "Ctrl+P"}}]}
		    {"actions": [{"name": "computer", "arguments": {"action": "click", "coordinate": [0, 0]}}], "repeat": true}

		An entry applies while the task goal contains ``goal_contains`` (case insensitive, all goals if absent) and
		it has actions left, ``repeat`` cycles through its actions forever.
		"""
		rules = []
		for i, entry in enumerate(table):
			actions = [Action.from_payload(payload) for payload in entry.get("actions", [])]
			if not actions:
				continue
			needle = entry.get("goal_contains")
			repeat = bool(entry.get("repeat", False))

			def when(context, needle=needle, actions=actions, repeat=repeat):
				if needle is not None and needle.lower() not in context.task.goal.lower():
					return False
				return repeat or context.step < len(actions)

			def act(context, actions=actions):
				return actions[context.step % len(actions)]

			rules.append(Rule.create("table-{}".format(i), when, act))
		return cls(policy_id, rules)


class ScriptedEpisode(Episode):
	def __init__(self, rules, task, prompt, tools):
		Episode.__init__(self, task, prompt, tools)
		self._rules = rules
		self._context = EpisodeContext(task, prompt, tools)

	@property
	def context(self):
		return self._context

	def next(self, observation, result):
		context = self._context
		context.observation = observation
		context.result = result

		output = None
		for rule in self._rules:
			if rule.when(context):
				output = self._output(rule.act(context), rule.reasoning)
				break
		if output is None:
			output = PolicyOutput.for_action(Action.terminate(success=False), reasoning="No rule applies.")

		context.step += 1
		return output

	@staticmethod
	def _output(produced, reasoning):
		if isinstance(produced, Action):
			return PolicyOutput.for_action(produced, reasoning=reasoning)
		return PolicyOutput(reasoning, reasoning + "\n" + produced if reasoning else produced)


##~~ bundled tables


def reference_rules(library):
	def solution(context):
		if "solution" not in context.state:
			context.state["solution"] = library.solution(context.task.task_id)
		return context.state["solution"]

	return [
		Rule.create("replay",
		            lambda context: context.step < len(solution(context)),
		            lambda context: solution(context)[context.step],
		            "Following the reference solution."),
		Rule.create("finish",
		            _always,
		            lambda context: Action.terminate(success=True),
		            "The reference solution is complete.")
	]


def _wander_rules(start):
	"""
	Rules for a dotted guess at step ``start(context)``, then :data:`WANDER_STEPS` wandering steps, then giving up.
	Inactive while ``start(context)`` is ``None``.
	"""
	def offset(context):
		first = start(context)
		return None if first is None else context.step - first

	return [
		Rule.create("guess",
		            lambda context: offset(context) == 0,
		            lambda context: dotted_guess(context.task),
		            "There should be a tool for this."),
		Rule.create("give_up",
		            lambda context: offset(context) is not None and offset(context) > WANDER_STEPS,
		            lambda context: Action.terminate(success=False),
		            "I could not find a way to do this."),
		Rule.create("wander",
		            lambda context: offset(context) is not None and offset(context) > 0,
		            lambda context: wander_action(context.task.app_id, offset(context) - 1),
		            "Looking around for the right control.")
	]


def wander_rules():
	return _wander_rules(lambda context: 0)


def student_rules(library, gaps=None):
	if gaps is None:
		gaps = STUDENT_GAPS

	def plan(context):
		state = context.state
		if "solution" not in state:
			state["solution"] = library.solution(context.task.task_id)
			state["missing"] = set(gaps.get(context.task.app_id, ())) - learned_items(context.prompt)
			state["stuck_at"] = None
		if state["stuck_at"] is None and context.step < len(state["solution"]) \
				and state["solution"][context.step].key in state["missing"]:
			state["stuck_at"] = context.step
		return state

	rules = _wander_rules(lambda context: plan(context)["stuck_at"])
	rules.extend([
		Rule.create("follow",
		            lambda context: context.step < len(plan(context)["solution"]),
		            lambda context: context.state["solution"][context.step],
		            "I know how to do the next step."),
		Rule.create("finish",
		            _always,
		            lambda context: Action.terminate(success=True),
		            "The task is done.")
	])
	return rules
