# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging

from evolvecua.model.codec import OPEN_TAG, encode_action


class PolicyKinds(object):
	LLM = "llm"
	SCRIPTED = "scripted"


class PolicyOutput(collections.namedtuple("PolicyOutput", "reasoning, text")):
	"""
	What a policy emits for one step: free reasoning and the raw text the action is decoded from.
	"""

	__slots__ = ()

	@classmethod
	def for_action(cls, action, reasoning=""):
		text = encode_action(action)
		if reasoning:
			text = reasoning + "\n" + text
		return cls(reasoning, text)

	@classmethod
	def from_text(cls, text):
		index = text.find(OPEN_TAG) if text else -1
		reasoning = text[:index].strip() if index >= 0 else (text or "").strip()
		return cls(reasoning, text or "")


class PolicyHandle(object):
	"""
	Base class of all policies. A policy starts one :class:`Episode` per task attempt, episodes never share state.

	Arguments:
	    policy_id (str): Identifier of the policy, recorded in every trajectory it produces.
	"""

	kind = None

	def __init__(self, policy_id):
		self._logger = logging.getLogger(__name__)
		self._policy_id = policy_id

	@property
	def policy_id(self):
		return self._policy_id

	def start(self, task, prompt, tools):
		"""
		Arguments:
		    task (TaskSpec): The task to attempt.
		    prompt (str): The system prompt, the base prompt optionally augmented with experience.
		    tools (list): Tool schemas of the task's application.

		Returns:
		    Episode: A fresh episode.
		"""
		raise NotImplementedError()

	def to_dict(self):
		return dict(policy_id=self._policy_id, kind=self.kind)

	def __repr__(self):
		return "{}({!r})".format(self.__class__.__name__, self._policy_id)


class Episode(object):
	def __init__(self, task, prompt, tools):
		self.task = task
		self.prompt = prompt
		self.tools = tools

	def next(self, observation, result):
		"""
		Arguments:
		    observation (ScreenState): The current screen.
		    result (str): Result text of the previous action, ``None`` on the first step.

		Returns:
		    PolicyOutput: What the policy emits.
		"""
		raise NotImplementedError()
