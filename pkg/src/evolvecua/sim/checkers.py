# coding=utf-8
"""
Ground truth checkers: predicate lists over the facts an application exposes.

A predicate is a dict like::

    {"fact": "bookmarks", "op": "contains", "value": "https://b.example"}
    {"fact": "cell:A4", "op": "eq", "value": {"fact": "cell:B4"}}

``value`` is either a literal or a reference to another fact of the same application.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import collections
import logging

from .exceptions import UnknownFact
from .formula import is_number

logger = logging.getLogger(__name__)

NUMERIC_TOLERANCE = 1e-9


def _eq(actual, expected):
	if is_number(actual) and is_number(expected):
		return abs(actual - expected) <= NUMERIC_TOLERANCE
	return actual == expected


def _contains(actual, expected):
	if isinstance(actual, (list, tuple, str)):
		return expected in actual
	return False


def _matches(actual, expected):
	return isinstance(actual, str) and isinstance(expected, str) and expected.lower() in actual.lower()


def _gte(actual, expected):
	return is_number(actual) and is_number(expected) and actual >= expected - NUMERIC_TOLERANCE


def _lte(actual, expected):
	return is_number(actual) and is_number(expected) and actual <= expected + NUMERIC_TOLERANCE


def _len_eq(actual, expected):
	return isinstance(actual, (list, tuple, str)) and len(actual) == expected


OPERATORS = {
	"eq": _eq,
	"ne": lambda actual, expected: not _eq(actual, expected),
	"contains": _contains,
	"excludes": lambda actual, expected: isinstance(actual, (list, tuple, str)) and not _contains(actual, expected),
	"matches": _matches,
	"gte": _gte,
	"lte": _lte,
	"len_eq": _len_eq
}


def is_fact_reference(value):
	# any other object is a literal, e.g. a submitted form
	return isinstance(value, dict) and set(value.keys()) == {"fact"}


def validate_predicate(predicate):
	"""
	Raises:
	    ValueError: The predicate is malformed.
	"""
	if not isinstance(predicate, dict):
		raise ValueError("predicate must be an object")
	if not isinstance(predicate.get("fact"), str) or not predicate["fact"]:
		raise ValueError("predicate is missing its fact")
	if predicate.get("op") not in OPERATORS:
		raise ValueError("unknown predicate operator {!r}".format(predicate.get("op")))
	if "value" not in predicate:
		raise ValueError("predicate on {} is missing its value".format(predicate["fact"]))


def describe(predicate):
	"""
	    >>> describe({"fact": "print_dialog_open", "op": "eq", "value": True})
	    'print_dialog_open eq true'
	"""
	value = predicate.get("value")
	if is_fact_reference(value):
		text = "fact " + value["fact"]
	elif isinstance(value, bool):
		text = "true" if value else "false"
	else:
		text = repr(value) if isinstance(value, str) else str(value)
	return "{} {} {}".format(predicate.get("fact"), predicate.get("op"), text)


def evaluate_predicate(app, predicate):
	"""
	Evaluates one predicate against an application. Predicates on facts the application does not know are
	unsatisfied.

	Returns:
	    bool: Whether the predicate holds.
	"""
	try:
		actual = app.fact(predicate["fact"])
		value = predicate["value"]
		if is_fact_reference(value):
			value = app.fact(value["fact"])
	except UnknownFact as error:
		logger.warning("Predicate {} is unsatisfiable: {}".format(describe(predicate), error))
		return False
	return bool(OPERATORS[predicate["op"]](actual, value))


class OracleVerdict(collections.namedtuple("OracleVerdict", "score, success, satisfied, total")):
	"""
	Arguments:
	    score (float): Fraction of satisfied predicates.
	    success (bool): Whether all predicates are satisfied.
	    satisfied (tuple): The satisfied predicates.
	    total (int): Number of predicates.
	"""

	__slots__ = ()

	def to_dict(self):
		return dict(score=self.score, success=self.success, satisfied=[describe(p) for p in self.satisfied], total=self.total)


class Checker(collections.namedtuple("Checker", "checker_id, app_id, predicates")):
	__slots__ = ()

	@classmethod
	def create(cls, checker_id, app_id, predicates):
		predicates = tuple(predicates or ())
		if not predicates:
			raise ValueError("checker {} has no predicates".format(checker_id))
		for predicate in predicates:
			validate_predicate(predicate)
		return cls(checker_id, app_id, predicates)

	def check(self, app):
		"""
		Checks the final state of an application. Pure, the application is not modified.

		Returns:
		    OracleVerdict: The verdict.
		"""
		satisfied = tuple(p for p in self.predicates if evaluate_predicate(app, p))
		total = len(self.predicates)
		return OracleVerdict(len(satisfied) / total, len(satisfied) == total, satisfied, total)

	def to_dict(self):
		return dict(app_id=self.app_id, predicates=[dict(p) for p in self.predicates])

	@classmethod
	def from_dict(cls, checker_id, data):
		return cls.create(checker_id, data.get("app_id"), data.get("predicates"))
