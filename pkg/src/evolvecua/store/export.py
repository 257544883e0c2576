# coding=utf-8
"""
Export of the dataset pool as a supervised fine-tuning dataset.

``dataset.jsonl`` holds one chat sample per line::

    {"id": "<trajectory id>", "task_id": ..., "app_id": ..., "iteration": ..., "origin": ..., "policy_id": ...,
     "score": ..., "messages": [{"role": "system", "content": <prompt>},
                                {"role": "user", "content": <rendered observation>},
                                {"role": "assistant", "content": <reasoning + tool call block>}, ...]}

``manifest.json`` carries the training hyperparameters for the external trainer, ``export_report.json`` lists the
records that could not be exported.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import io
import logging
import os

from evolvecua.model.codec import decode_action, encode_action
from evolvecua.model.exceptions import FormatError
from evolvecua.policy.prompts import observation_message, prompt_base
from evolvecua.util import canonical_json, read_jsonl, sha1_of, write_json

from .exceptions import EmptyPool

DATASET_FILE = "dataset.jsonl"
MANIFEST_FILE = "manifest.json"
REPORT_FILE = "export_report.json"

SFT_DEFAULTS = collections.OrderedDict([
	("learning_rate", 2e-5),
	("lora_rank", 8),
	("image_max_pixels", 50176),
	("max_images", 30),
	("cutoff_len", 32768),
	("attempts_per_task", 3),
	("success_threshold", 0.5)
])
"""Hyperparameters recorded for the downstream trainer."""

logger = logging.getLogger(__name__)


class TrainingManifest(collections.namedtuple("TrainingManifest", "base_model, mode, iteration, hyperparameters, reset_to_base")):
	__slots__ = ()

	@classmethod
	def create(cls, base_model=None, mode="distill_exp", iteration=0, hyperparameters=None, reset_to_base=True):
		values = collections.OrderedDict(SFT_DEFAULTS)
		values.update(hyperparameters or dict())
		return cls(base_model, mode, int(iteration), values, bool(reset_to_base))

	def to_dict(self):
		result = dict(self.hyperparameters)
		result.update(base_model=self.base_model,
		              mode=self.mode,
		              iteration=self.iteration,
		              reset_to_base=self.reset_to_base)
		return result


class ExportResult(collections.namedtuple("ExportResult", "dataset, manifest, samples, skipped")):
	"""
	Arguments:
	    dataset (str): Path of the dataset file.
	    manifest (str): Path of the manifest file.
	    samples (int): Number of exported samples.
	    skipped (list): ``{"task_id", "trajectory_id", "reason"}`` entries of records left out.
	"""

	__slots__ = ()


def build_sample(record, tools):
	"""
	Turns a pool record into a chat sample.

	Raises:
	    ValueError: A step of the trajectory has no decoded action or no observation.
	"""
	trajectory = record.trajectory
	messages = [dict(role="system", content=prompt_base(record.task, tools))]

	result = None
	for index, step in enumerate(trajectory.steps):
		if step.action is None:
			raise ValueError("step {} holds no decodable action".format(index))
		if step.observation is None:
			raise ValueError("step {} holds no observation".format(index))

		messages.append(dict(role="user", content=observation_message(step.observation, result=result, step=index)))
		call = encode_action(step.action)
		messages.append(dict(role="assistant", content=step.reasoning + "\n" + call if step.reasoning else call))
		result = step.result

	return collections.OrderedDict([
		("id", trajectory.trajectory_id),
		("task_id", record.task_id),
		("app_id", record.task.app_id),
		("iteration", record.iteration),
		("origin", record.origin),
		("policy_id", record.policy_id),
		("score", trajectory.score),
		("messages", messages)
	])


def export_sft(pool, folder, manifest, replay_ratio=1.0, simulator=None):
	"""
	Writes ``dataset.jsonl``, ``manifest.json`` and ``export_report.json`` into ``folder``.

	Arguments:
	    pool (DatasetPool): The pool to export.
	    folder (str): Target folder.
	    manifest (TrainingManifest): Training metadata.
	    replay_ratio (float): Share of earlier iterations' records to include.
	    simulator (Simulator): Source of the tool lists, the default simulator if ``None``.

	Returns:
	    ExportResult: Paths and counts.

	Raises:
	    EmptyPool: The pool holds no records.
	"""
	records = pool.view(replay_ratio=replay_ratio)
	if not records:
		raise EmptyPool()

	if simulator is None:
		from evolvecua.sim import simulator as default_simulator
		simulator = default_simulator()

	tools = dict()
	lines = []
	skipped = []
	for record in records:
		app_id = record.task.app_id
		if app_id not in tools:
			tools[app_id] = simulator.tools(app_id)
		try:
			sample = build_sample(record, tools[app_id])
		except ValueError as error:
			logger.warning("Skipping {} in the export: {}".format(record.trajectory.trajectory_id, error))
			skipped.append(dict(task_id=record.task_id, trajectory_id=record.trajectory.trajectory_id, reason=str(error)))
			continue
		lines.append(canonical_json(sample))

	if not os.path.isdir(folder):
		os.makedirs(folder)

	content = "".join(line + "\n" for line in lines)
	dataset = os.path.join(folder, DATASET_FILE)
	with io.open(dataset, "w", encoding="utf-8", newline="\n") as f:
		f.write(content)

	data = manifest.to_dict()
	data.update(samples=len(lines),
	            dataset=DATASET_FILE,
	            dataset_sha1=sha1_of(content),
	            replay_ratio=replay_ratio)
	manifest_path = os.path.join(folder, MANIFEST_FILE)
	write_json(manifest_path, data)
	write_json(os.path.join(folder, REPORT_FILE), dict(exported=len(lines),
	                                                   pool_size=len(pool),
	                                                   view_size=len(records),
	                                                   skipped=skipped))

	logger.info("Exported {} samples to {} ({} skipped)".format(len(lines), dataset, len(skipped)))
	return ExportResult(dataset, manifest_path, len(lines), skipped)


def verify_dataset(path):
	"""
	Re-parses every assistant turn of a dataset file.

	Returns:
	    list: ``(sample id, turn index, error message)`` for every turn that does not decode.
	"""
	errors = []
	for sample in read_jsonl(path):
		for index, message in enumerate(sample.get("messages", [])):
			if message.get("role") != "assistant":
				continue
			try:
				decode_action(message.get("content"))
			except FormatError as error:
				errors.append((sample.get("id"), index, error.message))
	return errors
