# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

from .base import Episode, PolicyHandle, PolicyKinds, PolicyOutput
from .prompts import build_request, observation_message


class LlmPolicy(PolicyHandle):
	"""
	A policy backed by a chat completion endpoint. The system message is the prompt handed to :meth:`start`
	unchanged, every step adds the rendered observation as user message and the completion as assistant message.

	Arguments:
	    policy_id (str): Identifier of the policy.
	    client (LlmClient): Client used for completions.
	    model (str): Model id sent with every request.
	    history (int): Number of previous exchanges kept in the request, ``None`` keeps all.
	"""

	kind = PolicyKinds.LLM

	def __init__(self, policy_id, client, model=None, history=None):
		PolicyHandle.__init__(self, policy_id)
		self._client = client
		self._model = model
		self._history = history

	def start(self, task, prompt, tools):
		return LlmEpisode(self, task, prompt, tools)

	def complete(self, messages):
		return self._client.complete(build_request(self._model, messages))

	@property
	def history(self):
		return self._history

	def to_dict(self):
		result = PolicyHandle.to_dict(self)
		result["model"] = self._model
		return result


class LlmEpisode(Episode):
	def __init__(self, policy, task, prompt, tools):
		Episode.__init__(self, task, prompt, tools)
		self._policy = policy
		self._exchanges = []

	def next(self, observation, result):
		user = observation_message(observation, result=result, step=len(self._exchanges))

		exchanges = self._exchanges
		if self._policy.history is not None:
			exchanges = exchanges[len(exchanges) - self._policy.history:] if self._policy.history else []

		messages = [("system", self.prompt)]
		for previous_user, previous_assistant in exchanges:
			messages.append(("user", previous_user))
			messages.append(("assistant", previous_assistant))
		messages.append(("user", user))

		text = self._policy.complete(messages)
		self._exchanges.append((user, text))
		return PolicyOutput.from_text(text)
