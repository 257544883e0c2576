#!/usr/bin/env python
# coding=utf-8

from setuptools import setup, find_packages
import os

#-----------------------------------------------------------------------------------------------------------------------

# Requirements for our application
INSTALL_REQUIRES = [
	"PyYAML>=5.1,<7",
	"requests>=2.20,<3",
	"jinja2>=2.10,<4"
]

# Additional requirements for optional install options
EXTRA_REQUIRES = dict(
	# Dependencies for developing EvolveCUA
	develop=[
		# Testing dependencies
		"mock>=2.0",
		"pytest>=3.6",
		"ddt",

		# Documentation dependencies
		"sphinx>=1.7",
		"sphinx_rtd_theme"
	]
)

# Additional requirements for setup
SETUP_REQUIRES = []

#-----------------------------------------------------------------------------------------------------------------------
# Anything below here is just command setup and general setup configuration

def read_version():
	scope = dict()
	with open(os.path.join(os.path.dirname(os.path.realpath(__file__)), "src", "evolvecua", "_version.py")) as f:
		exec(f.read(), scope)
	return scope["VERSION"]


def package_data_dirs(source, sub_folders):
	dirs = []

	for d in sub_folders:
		folder = os.path.join(source, d)
		if not os.path.exists(folder):
			continue

		for dirname, _, files in os.walk(folder):
			dirname = os.path.relpath(dirname, source)
			for f in files:
				dirs.append(os.path.join(dirname, f))

	return dirs


def params():
	name = "EvolveCUA"
	version = read_version()

	description = "Self-evolving hybrid MCP and GUI computer use agent pipeline"
	long_description = open("README.md").read()
	long_description_content_type = "text/markdown"

	install_requires = INSTALL_REQUIRES
	extras_require = EXTRA_REQUIRES
	setup_requires = SETUP_REQUIRES
	python_requires = ">=3.6"

	classifiers = [
		"Development Status :: 3 - Alpha",
		"Environment :: Console",
		"Intended Audience :: Science/Research",
		"License :: OSI Approved :: GNU Affero General Public License v3",
		"Natural Language :: English",
		"Operating System :: OS Independent",
		"Programming Language :: Python :: 3",
		"Topic :: Scientific/Engineering :: Artificial Intelligence"
	]
	author = "The EvolveCUA Project"
	license = "AGPLv3"

	packages = find_packages(where="src")
	package_dir = {
		"": "src",
	}
	package_data = {
		"evolvecua": package_data_dirs("src/evolvecua", ["templates"]),
		"evolvecua.sim": package_data_dirs("src/evolvecua/sim", ["data"])
	}

	include_package_data = True
	zip_safe = False

	if os.environ.get('READTHEDOCS', None) == 'True':
		# read the docs can't install the develop extra, the documentation dependencies are added explicitly
		install_requires = install_requires + extras_require['develop']

	entry_points = {
		"console_scripts": [
			"evolvecua = evolvecua:main"
		]
	}

	return locals()

setup(**params())
