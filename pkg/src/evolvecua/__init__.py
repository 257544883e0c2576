#!/usr/bin/env python
# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import sys

#~~ version

from ._version import get_versions
__version__ = get_versions()['version']
del get_versions

#~~ main


def main(argv=None):
	from evolvecua.cli import run
	sys.exit(run(argv))


if __name__ == "__main__":
	main()
