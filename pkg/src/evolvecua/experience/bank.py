# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging

from evolvecua.model import KnowledgeTypes, SkillCategories
from evolvecua.util import read_json, write_json

BANK_VERSION = 1

DEFAULT_CAPACITY = 8
MAX_RULE_LENGTH = 300

KNOWLEDGE_ORDER = (KnowledgeTypes.STRATEGY,
                   KnowledgeTypes.ENVIRONMENT_KNOWLEDGE,
                   KnowledgeTypes.TOOL_PATTERN,
                   KnowledgeTypes.ERROR_RECOVERY)

SECTION_START = "--- Relevant experience ---"
SECTION_END = "--- End of experience ---"

logger = logging.getLogger(__name__)


class ExperienceEntry(collections.namedtuple("ExperienceEntry", "text, knowledge_type, skill, app_id, sources, created_iteration")):
	"""
	One concise, imperative rule.

	Arguments:
	    text (str): The rule, at most :data:`MAX_RULE_LENGTH` characters.
	    knowledge_type (str): One of :class:`~evolvecua.model.KnowledgeTypes`.
	    skill (str): One of :class:`~evolvecua.model.SkillCategories`.
	    app_id (str): Application the rule applies to.
	    sources (tuple): Ids of the trajectories the rule was extracted from.
	    created_iteration (int): Iteration the rule was extracted in.
	"""

	__slots__ = ()

	@classmethod
	def create(cls, text, knowledge_type, skill, app_id, sources=(), created_iteration=0, max_length=MAX_RULE_LENGTH):
		text = (text or "").strip()
		if not text:
			raise ValueError("Experience text must not be empty")
		if len(text) > max_length:
			raise ValueError("Experience text exceeds {} characters".format(max_length))
		if knowledge_type not in KnowledgeTypes.values():
			raise ValueError("Unknown knowledge type {!r}".format(knowledge_type))
		if skill not in SkillCategories.values():
			raise ValueError("Unknown skill category {!r}".format(skill))
		if not app_id:
			raise ValueError("Experience needs an application")
		return cls(text, knowledge_type, skill, app_id, tuple(sources), int(created_iteration))

	@property
	def key(self):
		return self.app_id, self.skill, self.knowledge_type

	def to_dict(self):
		return dict(text=self.text,
		            knowledge_type=self.knowledge_type,
		            skill=self.skill,
		            app_id=self.app_id,
		            sources=list(self.sources),
		            created_iteration=self.created_iteration)

	@classmethod
	def from_dict(cls, data):
		return cls.create(data["text"], data["knowledge_type"], data["skill"], data["app_id"],
		                  sources=data.get("sources", ()), created_iteration=data.get("created_iteration", 0))


def conform_text(text, max_length=MAX_RULE_LENGTH, over_length="truncate"):
	"""
	Applies the conciseness cap to a rule text.

	    >>> conform_text("Use Ctrl+P to open print dialog", max_length=12)
	    'Use Ctrl+P t'
	    >>> conform_text("Use Ctrl+P to open print dialog", max_length=12, over_length="drop") is None
	    True

	Returns:
	    str: The text, cut to ``max_length`` if ``over_length`` is ``truncate``. ``None`` if it is too long and
	        ``over_length`` is ``drop``.
	"""
	text = (text or "").strip()
	if len(text) <= max_length:
		return text
	if over_length == "drop":
		logger.warning("Dropping experience of {} characters: {}...".format(len(text), text[:40]))
		return None
	logger.warning("Truncating experience of {} characters to {}".format(len(text), max_length))
	return text[:max_length].rstrip()


def _union(a, b):
	result = list(a)
	result.extend(s for s in b if s not in result)
	return tuple(result)


class ExperienceBank(object):
	"""
	Rules indexed by ``(app_id, skill, knowledge_type)``. Every bucket holds at most ``capacity`` entries, oldest
	first. Banks are snapshots, :meth:`insert_and_merge` returns a new bank and leaves this one untouched.

	Arguments:
	    capacity (int): Maximum entries per bucket.
	    iteration (int): Iteration the snapshot was taken in.
	"""

	def __init__(self, capacity=DEFAULT_CAPACITY, iteration=0, buckets=None):
		if capacity < 1:
			raise ValueError("capacity must be at least 1")
		self._capacity = int(capacity)
		self._iteration = int(iteration)
		self._buckets = collections.OrderedDict()
		for key, entries in (buckets or dict()).items():
			if entries:
				self._buckets[key] = tuple(entries)

	@property
	def capacity(self):
		return self._capacity

	@property
	def iteration(self):
		return self._iteration

	def keys(self):
		return list(self._buckets.keys())

	def bucket(self, app_id, skill, knowledge_type):
		return list(self._buckets.get((app_id, skill, knowledge_type), ()))

	def entries(self, app_id=None):
		result = []
		for key, entries in self._buckets.items():
			if app_id is None or key[0] == app_id:
				result.extend(entries)
		return result

	def texts(self, app_id=None):
		return [entry.text for entry in self.entries(app_id=app_id)]

	def stamped(self, iteration):
		return ExperienceBank(capacity=self._capacity, iteration=iteration, buckets=self._buckets)

	def __len__(self):
		return sum(len(entries) for entries in self._buckets.values())

	def __eq__(self, other):
		return isinstance(other, ExperienceBank) \
		       and self._capacity == other._capacity \
		       and dict(self._buckets) == dict(other._buckets)

	def __ne__(self, other):
		return not self.__eq__(other)

	##~~ insertion

	def insert_and_merge(self, entries, merger, iteration=None):
		"""
		Inserts entries into their buckets. Texts already present in a bucket are not inserted again, their sources
		are added to the existing entry instead. Buckets over capacity afterwards are merged by ``merger``, a merger
		result still over capacity is cut to the most recent entries.

		Arguments:
		    entries (list): :class:`ExperienceEntry` instances.
		    merger: Merger offering ``merge(old, fresh, capacity)``.
		    iteration (int): Iteration stamp of the new bank, defaults to this bank's stamp.

		Returns:
		    ExperienceBank: The new bank.
		"""
		buckets = collections.OrderedDict((key, list(values)) for key, values in self._buckets.items())
		fresh = collections.OrderedDict()

		for entry in entries:
			bucket = buckets.setdefault(entry.key, [])
			added = fresh.setdefault(entry.key, [])
			for i, existing in enumerate(bucket):
				if existing.text == entry.text:
					bucket[i] = existing._replace(sources=_union(existing.sources, entry.sources))
					break
			else:
				for i, existing in enumerate(added):
					if existing.text == entry.text:
						added[i] = existing._replace(sources=_union(existing.sources, entry.sources))
						break
				else:
					added.append(entry)

		for key, added in fresh.items():
			old = buckets[key]
			if len(old) + len(added) <= self._capacity:
				buckets[key] = old + added
				continue

			logger.debug("Merging bucket {} with {} old and {} fresh entries".format("/".join(key), len(old), len(added)))
			merged = _dedupe(merger.merge(old, added, self._capacity))
			if len(merged) > self._capacity:
				logger.warning("Merger returned {} entries for {}, capacity is {}, keeping the most recent".format(len(merged), "/".join(key), self._capacity))
				merged = merged[-self._capacity:]
			buckets[key] = merged

		return ExperienceBank(capacity=self._capacity,
		                      iteration=self._iteration if iteration is None else iteration,
		                      buckets=buckets)

	##~~ prompt composition

	def relevant(self, task):
		"""
		Returns the entries relevant for ``task``: same application and any of its skills. Grouped by knowledge type,
		newest first within each group. A text relevant under several skills is returned once.
		"""
		skills = list(task.skills)
		result = []
		for knowledge_type in KNOWLEDGE_ORDER:
			ranked = []
			for skill_index, skill in enumerate(skills):
				entries = self._buckets.get((task.app_id, skill, knowledge_type), ())
				for position, entry in enumerate(entries):
					ranked.append((-entry.created_iteration, -position, skill_index, entry))
			ranked.sort(key=lambda item: item[:3])

			seen = set()
			for _, _, _, entry in ranked:
				if entry.text in seen:
					continue
				seen.add(entry.text)
				result.append(entry)
		return result

	def compose_prompt(self, prompt_base, task):
		"""
		Appends the relevant experience to a prompt. Without relevant entries the prompt is returned unchanged.

		Arguments:
		    prompt_base (str): The base prompt.
		    task (TaskSpec): The task the prompt is for.

		Returns:
		    str: The composed prompt.
		"""
		entries = self.relevant(task)
		if not entries:
			return prompt_base

		lines = [SECTION_START]
		for knowledge_type in KNOWLEDGE_ORDER:
			group = [entry for entry in entries if entry.knowledge_type == knowledge_type]
			if not group:
				continue
			lines.append("{}:".format(knowledge_type.replace("_", " ").capitalize()))
			lines.extend("- " + entry.text for entry in group)
		lines.append(SECTION_END)
		return prompt_base + "\n\n" + "\n".join(lines)

	##~~ persistence

	def to_dict(self):
		entries = []
		for key in sorted(self._buckets.keys()):
			entries.extend(entry.to_dict() for entry in self._buckets[key])
		return dict(version=BANK_VERSION, capacity=self._capacity, iteration=self._iteration, entries=entries)

	@classmethod
	def from_dict(cls, data):
		buckets = collections.OrderedDict()
		for item in data.get("entries", []):
			entry = ExperienceEntry.from_dict(item)
			buckets.setdefault(entry.key, []).append(entry)
		return cls(capacity=data.get("capacity", DEFAULT_CAPACITY), iteration=data.get("iteration", 0), buckets=buckets)

	def save(self, path):
		write_json(path, self.to_dict())

	@classmethod
	def load(cls, path):
		return cls.from_dict(read_json(path))


def _dedupe(entries):
	result = []
	for entry in entries:
		for i, existing in enumerate(result):
			if existing.text == entry.text:
				result[i] = existing._replace(sources=_union(existing.sources, entry.sources))
				break
		else:
			result.append(entry)
	return result
