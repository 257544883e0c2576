# coding=utf-8
"""
LLM clients. All clients implement ``complete(request) -> str`` for a request dict like::

    {"model": "qwen-7b", "messages": [{"role": "system", "content": ...}, {"role": "user", "content": ...}]}

and are safe to call from several rollout threads at once.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import logging
import os
import threading
import time

import requests

from evolvecua.util import append_jsonl, canonical_json, ensure_dir, read_json, read_jsonl, sha1_of, write_json

from .exceptions import EndpointError, ReplayMiss


def request_key(request):
	"""
	Returns the replay key of a request, the SHA1 of its canonical JSON form.
	"""
	return sha1_of(canonical_json(request))


def extract_completion(data):
	"""
	Extracts the completion text from an endpoint response. Chat completion style responses
	(``{"choices": [{"message": {"content": ...}}]}``) as well as plain ``{"content": ...}`` or ``{"text": ...}``
	objects are understood.

	Returns:
	    str: The completion, ``None`` if the response carries none.
	"""
	if not isinstance(data, dict):
		return None

	choices = data.get("choices")
	if isinstance(choices, list) and choices:
		choice = choices[0]
		if isinstance(choice, dict):
			message = choice.get("message")
			if isinstance(message, dict) and isinstance(message.get("content"), str):
				return message["content"]
			if isinstance(choice.get("text"), str):
				return choice["text"]

	for key in ("content", "text", "response"):
		if isinstance(data.get(key), str):
			return data[key]
	return None


class LlmClient(object):
	name = "llm"

	def complete(self, request):
		raise NotImplementedError()


class HttpClient(LlmClient):
	"""
	Synchronous client for an HTTP chat completion endpoint.

	Arguments:
	    endpoint (str): URL the request JSON is POSTed to.
	    model (str): Model id filled into requests that do not carry one.
	    token (str): Optional bearer token.
	    timeout (float): Request timeout in seconds.
	"""

	name = "http"

	def __init__(self, endpoint, model=None, token=None, timeout=60):
		self._logger = logging.getLogger(__name__)
		self._endpoint = endpoint
		self._model = model
		self._token = token
		self._timeout = timeout

	@property
	def endpoint(self):
		return self._endpoint

	def complete(self, request):
		if not self._endpoint:
			raise EndpointError("http", "no endpoint configured")

		payload = dict(request)
		if self._model and not payload.get("model"):
			payload["model"] = self._model

		headers = {"Content-Type": "application/json"}
		if self._token:
			headers["Authorization"] = "Bearer {}".format(self._token)

		try:
			start = time.time()
			r = requests.post(self._endpoint, json=payload, headers=headers, timeout=self._timeout)
			r.raise_for_status()
			data = r.json()
			self._logger.debug("Got completion from {} in {:.2f}s".format(self._endpoint, time.time() - start))
		except requests.exceptions.RequestException as e:
			raise EndpointError(self._endpoint, str(e))
		except ValueError:
			raise EndpointError(self._endpoint, "response is not JSON")

		text = extract_completion(data)
		if text is None:
			raise EndpointError(self._endpoint, "response carries no completion")
		return text


class ReplayClient(LlmClient):
	"""
	Deterministic client answering from recorded responses.

	Responses are looked up by :func:`request_key` in an in-memory mapping and in a fixture folder holding one
	``<key>.json`` file ``{"request": {...}, "response": "..."}`` per request. A ``default`` response may be given
	for requests without a recording, otherwise those raise :class:`ReplayMiss`.
	"""

	name = "replay"

	def __init__(self, folder=None, responses=None, default=None):
		self._logger = logging.getLogger(__name__)
		self._folder = folder
		self._responses = dict(responses or dict())
		self._default = default
		self._mutex = threading.Lock()
		self.calls = 0

	def add(self, request, response):
		with self._mutex:
			self._responses[request_key(request)] = response

	def complete(self, request):
		key = request_key(request)
		with self._mutex:
			self.calls += 1
			if key in self._responses:
				return self._responses[key]

		if self._folder is not None:
			path = os.path.join(self._folder, key + ".json")
			if os.path.exists(path):
				return read_json(path)["response"]

		if self._default is not None:
			return self._default

		self._logger.warning("No recorded response for request {}".format(key))
		raise ReplayMiss(key)


class RecordingClient(LlmClient):
	"""
	Wraps another client and appends every exchange to a JSONL file as a ``req`` row followed by a ``res`` row.
	"""

	name = "recording"

	def __init__(self, client, path):
		self._client = client
		self._path = path
		self._mutex = threading.Lock()

	@property
	def path(self):
		return self._path

	def complete(self, request):
		key = request_key(request)
		response = self._client.complete(request)
		with self._mutex:
			append_jsonl(self._path, [dict(direction="req", key=key, request=request),
			                          dict(direction="res", key=key, response=response)])
		return response


def seed_fixtures(recording, folder):
	"""
	Turns the rows of a recording into a replay fixture folder.

	Returns:
	    int: Number of fixtures written.
	"""
	ensure_dir(folder)
	requests_by_key = dict()
	count = 0
	for row in read_jsonl(recording):
		if row.get("direction") == "req":
			requests_by_key[row["key"]] = row.get("request")
		elif row.get("direction") == "res" and row.get("key") in requests_by_key:
			write_json(os.path.join(folder, row["key"] + ".json"),
			           dict(request=requests_by_key[row["key"]], response=row.get("response")))
			count += 1
	return count
