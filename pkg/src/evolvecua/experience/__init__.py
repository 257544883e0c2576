# coding=utf-8
"""
The experience bank: concise rules extracted from successful and failed trajectories, indexed by application,
skill category and knowledge type, and appended to the prompts of matching tasks.

.. autoclass:: ExperienceEntry

.. autoclass:: ExperienceBank
   :members:

.. autofunction:: extract

.. autofunction:: build_bank
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging

from evolvecua.policy import best_attempt

from .bank import DEFAULT_CAPACITY, MAX_RULE_LENGTH, ExperienceBank, ExperienceEntry, conform_text
from .exceptions import ExperienceException, ExtractionFailed
from .extractors import DeterministicExtractor, Draft, Extractor, LlmExtractor
from .mergers import LlmMerger, RecencyMerger

logger = logging.getLogger(__name__)


def extract(success, failure, skill, extractor, task, iteration=0, max_length=MAX_RULE_LENGTH, over_length="truncate"):
	"""
	Extracts rules from a successful trajectory and an optional failed one of the same task.

	Arguments:
	    success (Trajectory): A trajectory with a successful verdict.
	    failure (Trajectory): A failed trajectory of the same task or ``None``.
	    skill (str): Skill category the rules are filed under.
	    extractor (Extractor): The extractor.
	    task (TaskSpec): The task, source of the application id.
	    iteration (int): Creation stamp of the entries.
	    max_length (int): Conciseness cap.
	    over_length (str): ``truncate`` or ``drop`` rules longer than ``max_length``.

	Returns:
	    list: :class:`ExperienceEntry` instances, empty if the extractor output was unusable.
	"""
	if not success.success:
		raise ValueError("Trajectory {} is not successful".format(success.trajectory_id))
	if failure is not None and failure.task_id != success.task_id:
		raise ValueError("Trajectories {} and {} belong to different tasks".format(success.trajectory_id, failure.trajectory_id))

	try:
		drafts = extractor.rules(task, success, failure, skill)
	except ExtractionFailed as error:
		logger.warning("No experience from {}: {}".format(success.trajectory_id, error))
		return []

	sources = [success.trajectory_id]
	if failure is not None:
		sources.append(failure.trajectory_id)

	result = []
	for draft in drafts:
		text = conform_text(draft.text, max_length=max_length, over_length=over_length)
		if not text:
			continue
		result.append(ExperienceEntry.create(text, draft.knowledge_type, skill, task.app_id,
		                                     sources=sources, created_iteration=iteration, max_length=max_length))
	return result


def insert_and_merge(bank, entries, merger, iteration=None):
	return bank.insert_and_merge(entries, merger, iteration=iteration)


def compose_prompt(prompt_base, bank, task):
	return bank.compose_prompt(prompt_base, task)


def pair_trajectories(records):
	"""
	Pairs the best success of every task with a failure of the same task.

	Arguments:
	    records (list): ``(task, trajectory)`` pairs, trajectories carrying verdicts.

	Returns:
	    list: ``(task, success, failure)`` triples in order of first appearance of the task, ``failure`` is ``None``
	        for tasks without a failed trajectory. Tasks without a success are left out.
	"""
	tasks = collections.OrderedDict()
	successes = dict()
	failures = dict()
	for task, trajectory in records:
		if trajectory is None:
			continue
		tasks.setdefault(task.task_id, task)
		if trajectory.success:
			successes.setdefault(task.task_id, []).append(trajectory)
		elif trajectory.steps:
			failures.setdefault(task.task_id, []).append(trajectory)

	result = []
	for task_id, task in tasks.items():
		if task_id not in successes:
			continue
		success = best_attempt(successes[task_id])
		candidates = failures.get(task_id)
		result.append((task, success, candidates[0] if candidates else None))
	return result


def build_bank(records, prior, extractor, merger, iteration=0, max_length=MAX_RULE_LENGTH, over_length="truncate"):
	"""
	Builds the next bank snapshot. Every task with a success contributes one extraction per skill tag, paired with
	a failure of the same task when there is one.

	Arguments:
	    records (list): ``(task, trajectory)`` pairs with verdicts.
	    prior (ExperienceBank): The previous snapshot.
	    extractor (Extractor): Rule extractor.
	    merger: Merger for buckets over capacity.
	    iteration (int): Stamp of the new snapshot and its new entries.

	Returns:
	    ExperienceBank: The new snapshot.
	"""
	entries = []
	for task, success, failure in pair_trajectories(records):
		for skill in task.skills:
			try:
				entries.extend(extract(success, failure, skill, extractor, task, iteration=iteration,
				                       max_length=max_length, over_length=over_length))
			except Exception:
				logger.exception("Extraction failed for {} under {}".format(task.task_id, skill))

	bank = prior.insert_and_merge(entries, merger, iteration=iteration)
	logger.info("Experience bank of iteration {} holds {} entries ({} extracted)".format(iteration, len(bank), len(entries)))
	return bank


def create_extractor(designation, client=None, model=None, max_length=MAX_RULE_LENGTH):
	"""
	Creates an extractor from its designation, ``deterministic`` or ``llm``.
	"""
	if designation == "deterministic":
		return DeterministicExtractor()
	elif designation == "llm":
		if client is None:
			raise ValueError("The llm extractor needs an endpoint or replay fixtures")
		return LlmExtractor(client, model=model, max_length=max_length)
	raise ValueError("Unknown extractor {!r}".format(designation))


def create_merger(designation, client=None, model=None, max_length=MAX_RULE_LENGTH, over_length="truncate"):
	"""
	Creates a merger from its designation, ``recency`` or ``llm``.
	"""
	if designation == "recency":
		return RecencyMerger()
	elif designation == "llm":
		if client is None:
			raise ValueError("The llm merger needs an endpoint or replay fixtures")
		return LlmMerger(client, model=model, max_length=max_length, over_length=over_length)
	raise ValueError("Unknown merger {!r}".format(designation))


__all__ = ["ExperienceEntry", "ExperienceBank", "Draft", "Extractor", "DeterministicExtractor", "LlmExtractor",
           "RecencyMerger", "LlmMerger", "extract", "insert_and_merge", "compose_prompt", "pair_trajectories",
           "build_bank", "create_extractor", "create_merger", "conform_text", "DEFAULT_CAPACITY", "MAX_RULE_LENGTH",
           "ExperienceException", "ExtractionFailed"]
