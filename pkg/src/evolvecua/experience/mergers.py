# coding=utf-8
"""
Mergers shrink a bucket that outgrew its capacity. Both get the bucket's entries before the insertion (``old``,
oldest first) and the entries just inserted (``fresh``) and return at most ``capacity`` entries.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import logging

from evolvecua.policy.prompts import build_request, render
from evolvecua.util import json_values

from .bank import MAX_RULE_LENGTH, ExperienceEntry, conform_text
from .exceptions import ExtractionFailed

MERGE_TEMPLATE = "merge.jinja2"


class RecencyMerger(object):
	"""
	Keeps the most recent entries.
	"""

	def merge(self, old, fresh, capacity):
		combined = list(old) + list(fresh)
		return combined[-capacity:]


class LlmMerger(object):
	"""
	Asks a model to summarize a bucket. The response must be a JSON list of rule texts, the merged entries keep the
	index keys of the bucket and the union of all sources. Unusable responses fall back to :class:`RecencyMerger`.
	"""

	def __init__(self, client, model=None, max_length=MAX_RULE_LENGTH, over_length="truncate"):
		self._logger = logging.getLogger(__name__)
		self._client = client
		self._model = model
		self._max_length = max_length
		self._over_length = over_length
		self._fallback = RecencyMerger()

	def merge(self, old, fresh, capacity):
		entries = list(old) + list(fresh)
		if not entries:
			return []

		try:
			texts = self._texts(entries, old, fresh, capacity)
		except ExtractionFailed as error:
			self._logger.warning("{}, keeping the most recent entries".format(error))
			return self._fallback.merge(old, fresh, capacity)

		first = entries[0]
		sources = []
		for entry in entries:
			sources.extend(s for s in entry.sources if s not in sources)
		iteration = max(entry.created_iteration for entry in entries)

		result = []
		for text in texts:
			text = conform_text(text, max_length=self._max_length, over_length=self._over_length)
			if not text:
				continue
			result.append(ExperienceEntry.create(text, first.knowledge_type, first.skill, first.app_id,
			                                     sources=sources, created_iteration=iteration,
			                                     max_length=self._max_length))
		if not result:
			self._logger.warning("Merger returned no usable rules, keeping the most recent entries")
			return self._fallback.merge(old, fresh, capacity)
		return result

	def _texts(self, entries, old, fresh, capacity):
		first = entries[0]
		prompt = render(MERGE_TEMPLATE,
		                app_id=first.app_id,
		                skill=first.skill,
		                knowledge_type=first.knowledge_type,
		                old=old,
		                fresh=fresh,
		                capacity=capacity)
		response = self._client.complete(build_request(self._model, [("user", prompt)]))

		for value in json_values(response, openers="["):
			if isinstance(value, list) and all(isinstance(item, str) for item in value):
				return value
		raise ExtractionFailed("merger response holds no list of rules", response=response)
