# coding=utf-8
"""
This module bundles commonly used utility methods or helper classes that are used in multiple places within
EvolveCUA's source code.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import contextlib
import hashlib
import io
import json
import logging
import os
import shutil
import tempfile

logger = logging.getLogger(__name__)


def get_class(name):
	"""
	Retrieves the class object for a given fully qualified class name.

	Taken from http://stackoverflow.com/a/452981/2028598.

	Arguments:
	    name (str): The fully qualified class name, including all modules separated by ``.``

	Returns:
	    type: The class if it could be found.

	Raises:
	    ImportError
	"""

	parts = name.split(".")
	module = ".".join(parts[:-1])
	m = __import__(module)
	for comp in parts[1:]:
		m = getattr(m, comp)
	return m


def dict_merge(a, b):
	"""
	Recursively deep-merges two dictionaries.

	Taken from https://www.xormedia.com/recursively-merge-dictionaries-in-python/

	Example::

	    >>> a = dict(foo="foo", bar="bar", fnord=dict(a=1))
	    >>> b = dict(foo="other foo", fnord=dict(b=2, l=["some", "list"]))
	    >>> expected = dict(foo="other foo", bar="bar", fnord=dict(a=1, b=2, l=["some", "list"]))
	    >>> dict_merge(a, b) == expected
	    True

	Arguments:
	    a (dict): The dictionary to merge ``b`` into
	    b (dict): The dictionary to merge into ``a``

	Returns:
	    dict: ``b`` deep-merged into ``a``
	"""

	from copy import deepcopy

	if not isinstance(b, dict):
		return b
	result = deepcopy(a)
	for k, v in b.items():
		if k in result and isinstance(result[k], dict):
			result[k] = dict_merge(result[k], v)
		else:
			result[k] = deepcopy(v)
	return result


def canonical_json(data, indent=None):
	"""
	Serializes ``data`` to JSON with sorted keys and fixed separators, so that equal values always yield
	identical text.

	    >>> canonical_json(dict(b=1, a=[1, 2]))
	    '{"a":[1,2],"b":1}'
	"""
	if indent is None:
		return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
	return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=indent, separators=(",", ": "))


def sha1_of(text):
	if not isinstance(text, bytes):
		text = text.encode("utf-8")
	return hashlib.sha1(text).hexdigest()


@contextlib.contextmanager
def atomic_write(filename, mode="w", prefix="tmp", suffix="", permissions=0o644, max_permissions=0o777):
	if os.path.exists(filename):
		permissions |= os.stat(filename).st_mode
	permissions &= max_permissions

	folder = os.path.dirname(os.path.abspath(filename))
	if not os.path.isdir(folder):
		os.makedirs(folder)

	kwargs = dict()
	if "b" not in mode:
		kwargs["encoding"] = "utf-8"
	temp_file = tempfile.NamedTemporaryFile(mode=mode, prefix=prefix, suffix=suffix, dir=folder, delete=False, **kwargs)
	try:
		yield temp_file
	finally:
		temp_file.close()
	os.chmod(temp_file.name, permissions)
	shutil.move(temp_file.name, filename)


def write_json(path, data):
	with atomic_write(path, prefix="evolvecua-", suffix=".json") as f:
		f.write(canonical_json(data, indent=2))
		f.write("\n")


def read_json(path):
	with io.open(path, "r", encoding="utf-8") as f:
		return json.load(f)


def write_jsonl(path, rows):
	with atomic_write(path, prefix="evolvecua-", suffix=".jsonl") as f:
		for row in rows:
			f.write(canonical_json(row))
			f.write("\n")


def append_jsonl(path, rows):
	folder = os.path.dirname(os.path.abspath(path))
	if not os.path.isdir(folder):
		os.makedirs(folder)
	with io.open(path, "a", encoding="utf-8") as f:
		for row in rows:
			f.write(canonical_json(row))
			f.write("\n")


def read_jsonl(path):
	if not os.path.exists(path):
		return []

	result = []
	with io.open(path, "r", encoding="utf-8") as f:
		for line in f:
			line = line.strip()
			if not line:
				continue
			result.append(json.loads(line))
	return result


def silent_remove(file):
	"""
	Silently removes a file. Does not raise an error if the file doesn't exist.

	Arguments:
	    file (string): The path of the file to be removed
	"""

	try:
		os.remove(file)
	except OSError:
		pass


def ensure_dir(path):
	if not os.path.isdir(path):
		os.makedirs(path)
	return path


def json_values(text, openers="{["):
	"""
	Yields the JSON objects and lists embedded in free text, e.g. a model response wrapping its answer in prose or
	code fences. Scanning resumes after every decoded value.

	    >>> list(json_values('Sure: {"score": 1} and [1, 2]'))
	    [{'score': 1}, [1, 2]]
	    >>> list(json_values('[{"a": 1}]', openers="{"))
	    [{'a': 1}]
	"""
	if not text:
		return

	decoder = json.JSONDecoder()

	def next_opener(start):
		positions = [p for p in (text.find(c, start) for c in openers) if p >= 0]
		return min(positions) if positions else -1

	position = next_opener(0)
	while position >= 0:
		try:
			value, end = decoder.raw_decode(text, position)
		except ValueError:
			position = next_opener(position + 1)
			continue
		yield value
		position = next_opener(end)
