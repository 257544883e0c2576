# coding=utf-8
"""
Recursive descent evaluator for the formula subset of ``mini_sheet``.

Supported are numbers, cell references (optionally sheet qualified as ``Data!B2``), ranges as function arguments,
``+ - * /``, unary minus, parentheses and the functions ``SUM``, ``AVERAGE``, ``MIN``, ``MAX`` and ``COUNT``.
Evaluation errors surface as :class:`FormulaError` carrying one of the spreadsheet error codes.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import math
import re

ERROR_GENERIC = "#ERROR"
ERROR_DIV0 = "#DIV/0!"
ERROR_CYCLE = "#CYCLE"

ERROR_CODES = (ERROR_GENERIC, ERROR_DIV0, ERROR_CYCLE)

_token_regex = re.compile(r"\s*(?:"
                          r"(?P<number>\d+(?:\.\d+)?)"
                          r"|(?P<ref>(?:[A-Za-z][A-Za-z0-9_]*!)?[A-Za-z]+\d+(?::[A-Za-z]+\d+)?)"
                          r"|(?P<name>[A-Za-z]+)"
                          r"|(?P<op>[-+*/(),])"
                          r")")


class FormulaError(Exception):
	def __init__(self, code, *args, **kwargs):
		Exception.__init__(self, code, *args, **kwargs)
		self.code = code

	def __str__(self):
		return self.code


def is_number(value):
	return isinstance(value, (int, float)) and not isinstance(value, bool)


def normalize_number(value):
	if isinstance(value, float) and value.is_integer():
		return int(value)
	return value


def tokenize(text):
	tokens = []
	pos = 0
	text = text.rstrip()
	while pos < len(text):
		match = _token_regex.match(text, pos)
		if match is None or match.end() == pos:
			raise FormulaError(ERROR_GENERIC)
		kind = match.lastgroup
		tokens.append((kind, match.group(kind)))
		pos = match.end()
	return tokens


def _sum(values):
	return math.fsum(values)


def _average(values):
	if not values:
		raise FormulaError(ERROR_DIV0)
	return math.fsum(values) / len(values)


def _min(values):
	return min(values) if values else 0


def _max(values):
	return max(values) if values else 0


def _count(values):
	return len(values)


FUNCTIONS = {
	"SUM": _sum,
	"AVERAGE": _average,
	"MIN": _min,
	"MAX": _max,
	"COUNT": _count
}


class Formula(object):
	"""
	One parsed formula.

	Arguments:
	    text (str): The formula including its leading ``=``.
	    resolve (callable): ``resolve(sheet, ref)`` returning the computed value of a cell, ``sheet`` is ``None``
	        for unqualified references. May raise :class:`FormulaError`.
	    expand (callable): ``expand(sheet, start, end)`` returning the references of a rectangular range.
	"""

	def __init__(self, text, resolve, expand):
		if not text.startswith("="):
			raise FormulaError(ERROR_GENERIC)
		self._tokens = tokenize(text[1:])
		self._pos = 0
		self._resolve = resolve
		self._expand = expand

	def evaluate(self):
		if not self._tokens:
			raise FormulaError(ERROR_GENERIC)

		# a bare reference passes strings through
		if len(self._tokens) == 1 and self._tokens[0][0] == "ref" and ":" not in self._tokens[0][1]:
			value = self._lookup(self._tokens[0][1])
			return 0 if value is None else normalize_number(value)

		value = self._expression()
		if self._pos != len(self._tokens):
			raise FormulaError(ERROR_GENERIC)
		return normalize_number(value)

	##~~ grammar

	def _peek(self, offset=0):
		index = self._pos + offset
		if index < len(self._tokens):
			return self._tokens[index]
		return None, None

	def _take(self):
		token = self._peek()
		self._pos += 1
		return token

	def _expect(self, op):
		kind, text = self._take()
		if kind != "op" or text != op:
			raise FormulaError(ERROR_GENERIC)

	def _expression(self):
		value = self._term()
		while self._peek() in (("op", "+"), ("op", "-")):
			_, op = self._take()
			other = self._term()
			value = value + other if op == "+" else value - other
		return value

	def _term(self):
		value = self._unary()
		while self._peek() in (("op", "*"), ("op", "/")):
			_, op = self._take()
			other = self._unary()
			if op == "*":
				value = value * other
			else:
				if other == 0:
					raise FormulaError(ERROR_DIV0)
				value = value / other
		return value

	def _unary(self):
		if self._peek() == ("op", "-"):
			self._take()
			return -self._unary()
		if self._peek() == ("op", "+"):
			self._take()
			return self._unary()
		return self._primary()

	def _primary(self):
		kind, text = self._take()
		if kind == "number":
			return float(text) if "." in text else int(text)
		elif kind == "ref":
			if ":" in text:
				raise FormulaError(ERROR_GENERIC)
			return self._numeric(self._lookup(text))
		elif kind == "name":
			function = FUNCTIONS.get(text.upper())
			if function is None:
				raise FormulaError(ERROR_GENERIC)
			self._expect("(")
			values = []
			if self._peek() != ("op", ")"):
				values.extend(self._argument())
				while self._peek() == ("op", ","):
					self._take()
					values.extend(self._argument())
			self._expect(")")
			return function(values)
		elif kind == "op" and text == "(":
			value = self._expression()
			self._expect(")")
			return value
		raise FormulaError(ERROR_GENERIC)

	def _argument(self):
		kind, text = self._peek()
		if kind == "ref" and ":" in text:
			self._take()
			sheet, start, end = self._split_range(text)
			values = [self._resolve(sheet, ref) for ref in self._expand(sheet, start, end)]
			return [v for v in values if is_number(v)]
		return [self._expression()]

	##~~ helpers

	@staticmethod
	def _split_ref(text):
		if "!" in text:
			sheet, ref = text.split("!", 1)
			return sheet, ref.upper()
		return None, text.upper()

	def _split_range(self, text):
		sheet, cells = self._split_ref(text)
		start, end = cells.split(":", 1)
		return sheet, start, end

	def _lookup(self, text):
		sheet, ref = self._split_ref(text)
		return self._resolve(sheet, ref)

	@staticmethod
	def _numeric(value):
		if value is None:
			return 0
		if is_number(value):
			return value
		raise FormulaError(ERROR_GENERIC)


def evaluate(text, resolve, expand):
	"""
	Evaluates ``text``.

	    >>> evaluate("=2*(3+4)-1", None, None)
	    13

	Raises:
	    FormulaError: The formula is malformed or its evaluation failed.
	"""
	return Formula(text, resolve, expand).evaluate()
