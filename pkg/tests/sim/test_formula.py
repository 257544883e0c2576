# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import unittest

from ddt import ddt, data, unpack

from evolvecua.sim.formula import ERROR_DIV0, ERROR_GENERIC, FormulaError, evaluate

CELLS = {
	"A1": 1,
	"A2": 2,
	"A3": "text",
	"A4": 4.5,
	"B1": None
}


def resolve(sheet, ref):
	if sheet not in (None, "Data"):
		raise FormulaError(ERROR_GENERIC)
	if sheet == "Data":
		return 100
	return CELLS.get(ref)


def expand(sheet, start, end):
	column = start[0]
	return ["{}{}".format(column, row) for row in range(int(start[1:]), int(end[1:]) + 1)]


@ddt
class FormulaTest(unittest.TestCase):

	@data(
		("=2*(3+4)-1", 13),
		("=10/4", 2.5),
		("=-3+5", 2),
		("=+2", 2),
		("=2.5*2", 5),
		("=A1+A2", 3),
		("=a1*10", 10),
		("=B1+1", 1),
		("=Data!B2/4", 25),
		("=SUM(A1:A4)", 7.5),
		("=sum(A1, A2, 3)", 6),
		("=AVERAGE(A1:A2)", 1.5),
		("=MIN(A1:A4)", 1),
		("=MAX(A1:A4)", 4.5),
		("=COUNT(A1:A4)", 3),
		("=MIN()", 0),
		("=A3", "text"),
		("=B1", 0)
	)
	@unpack
	def test_evaluate(self, text, expected):
		self.assertEqual(expected, evaluate(text, resolve, expand))

	def test_integral_results_are_ints(self):
		self.assertIsInstance(evaluate("=2.5*2", resolve, expand), int)

	@data(
		("=1/0", ERROR_DIV0),
		("=A1/(A2-2)", ERROR_DIV0),
		("=AVERAGE()", ERROR_DIV0),
		("=1+", ERROR_GENERIC),
		("=(1+2", ERROR_GENERIC),
		("=1 2", ERROR_GENERIC),
		("=FOO(1)", ERROR_GENERIC),
		("=A3+1", ERROR_GENERIC),
		("=A1:A2", ERROR_GENERIC),
		("=Other!A1", ERROR_GENERIC),
		("=", ERROR_GENERIC),
		("=1 $ 2", ERROR_GENERIC),
		("1+2", ERROR_GENERIC)
	)
	@unpack
	def test_errors(self, text, code):
		with self.assertRaises(FormulaError) as context:
			evaluate(text, resolve, expand)
		self.assertEqual(code, context.exception.code)
		self.assertEqual(code, str(context.exception))
