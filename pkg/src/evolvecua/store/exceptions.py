# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"


class StoreException(Exception):
	pass


class EmptyPool(StoreException):
	def __init__(self, *args, **kwargs):
		StoreException.__init__(self, *args, **kwargs)
		self.message = "The dataset pool holds no trajectories to export"

	def __str__(self):
		return self.message


class DuplicateIteration(StoreException):
	def __init__(self, iteration, *args, **kwargs):
		StoreException.__init__(self, iteration, *args, **kwargs)
		self.iteration = iteration
		self.message = "Iteration {iteration} has already been recorded".format(iteration=iteration)

	def __str__(self):
		return self.message
