# -*- coding: utf-8 -*-
#
# EvolveCUA documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import sys, os

# Modules to document with autodoc live in ../src
sys.path.insert(0, os.path.abspath('../src/'))

import evolvecua._version
from datetime import date

year_since = 2026
year_current = date.today().year

# -- General configuration -----------------------------------------------------

needs_sphinx = '1.7'

extensions = ['sphinx.ext.todo', 'sphinx.ext.autodoc', 'sphinx.ext.napoleon']
todo_include_todos = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'EvolveCUA'
copyright = u'%d-%d, The EvolveCUA Project' % (year_since, year_current) if year_current > year_since else u'%d, The EvolveCUA Project' % year_since

# The short X.Y version.
version = evolvecua._version.get_versions()["version"]
# The full version, including alpha/beta/rc tags.
release = version

exclude_patterns = ['_build']

pygments_style = 'sphinx'

numfig = True

# -- Options for HTML output ---------------------------------------------------

# on_rtd is whether we are on readthedocs.org
on_rtd = os.environ.get('READTHEDOCS', None) == 'True'

if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme
    html_theme = 'sphinx_rtd_theme'
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

html_static_path = []

htmlhelp_basename = 'EvolveCUAdoc'

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'evolvecua', u'EvolveCUA Documentation',
     [u'The EvolveCUA Project'], 1)
]

# -- Options for autodoc -------------------------------------------------------

autodoc_member_order = 'bysource'
