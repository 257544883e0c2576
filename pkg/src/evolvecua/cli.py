# coding=utf-8
"""
Command line interface.

::

    evolvecua [--run-dir DIR] [--config FILE] [--seed N] [--iterations K] [--mode MODE] [--debug] <verb>

Verbs: ``init``, ``collect``, ``evaluate``, ``evolve``, ``export-sft`` and ``report``. Failures exit with 2 for
configuration errors, 3 for failed (resumable) phases, 4 for failing LLM endpoints and 1 for anything else, and write
``{"error": ..., "message": ..., "phase": ...}`` to stderr.
"""

from __future__ import absolute_import, print_function

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import argparse
import copy
import logging
import os
import sys

from evolvecua import __version__
from evolvecua.orchestrator import Orchestrator, RunConfig, training_manifest
from evolvecua.orchestrator.exceptions import ConfigurationInvalid, PhaseFailed, RunLocked
from evolvecua.orchestrator.report import build_report, render_report
from evolvecua.orchestrator.state import Phases
from evolvecua.policy.exceptions import EndpointError, UnknownPolicy
from evolvecua.settings import default_settings, settings
from evolvecua.store import DatasetPool
from evolvecua.store.exceptions import StoreException
from evolvecua.store.export import export_sft
from evolvecua.util import canonical_json, ensure_dir, write_json

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_PHASE = 3
EXIT_ENDPOINT = 4

VERBS = ("init", "collect", "evaluate", "evolve", "export-sft", "report")

logger = logging.getLogger(__name__)


def _add_global_flags(parser, suppress=False):
	default = dict(default=argparse.SUPPRESS) if suppress else dict()

	parser.add_argument("-c", "--config", action="store", dest="config", **default,
	                    help="Specify the config file to use. Defaults to <run-dir>/config.yaml")
	parser.add_argument("-b", "--run-dir", "--basedir", action="store", dest="run_dir", **default,
	                    help="Specify the run directory. Defaults to the current working directory")
	parser.add_argument("--logging", action="store", dest="logConf", **default,
	                    help="Specify the config file to use for configuring logging. Defaults to <run-dir>/logging.yaml")
	parser.add_argument("--seed", action="store", type=int, dest="seed", **default,
	                    help="Override the random seed of the run")
	parser.add_argument("--iterations", action="store", type=int, dest="iterations", **default,
	                    help="Override the number of evolution iterations")
	parser.add_argument("--mode", action="store", choices=["distill_exp", "exp_only"], dest="mode", **default,
	                    help="Override the evolution mode")
	parser.add_argument("-d", "--debug", action="store_true", dest="debug", **default,
	                    help="Enable debug logging and the per step rollout log")


def create_parser():
	parser = argparse.ArgumentParser(prog="evolvecua")

	parser.add_argument("-v", "--version", action="store_true", dest="version",
	                    help="Output EvolveCUA's version and exit")
	_add_global_flags(parser)

	verbs = parser.add_subparsers(dest="verb", metavar="verb")
	for verb, help in (("init", "Create a run directory with the default configuration"),
	                   ("collect", "Collect expert trajectories on the seed tasks and build the first pool"),
	                   ("evaluate", "Run the baseline iteration up to the generation plan"),
	                   ("evolve", "Run or resume the full evolution"),
	                   ("export-sft", "Export the current pool as a fine-tuning dataset to <run-dir>/export"),
	                   ("report", "Print profile, gaps, plan and bank of the latest iteration")):
		_add_global_flags(verbs.add_parser(verb, help=help), suppress=True)

	return parser


def _error(error, phase=None):
	message = getattr(error, "message", None) or str(error)
	print(canonical_json(dict(error=error.__class__.__name__, message=message, phase=phase)), file=sys.stderr)


def run(argv=None):
	"""
	Runs the command line interface.

	Returns:
	    int: The exit status.
	"""
	parser = create_parser()
	args = parser.parse_args(argv)

	if args.version:
		print("EvolveCUA version {}".format(__version__))
		return EXIT_OK

	if not args.verb:
		parser.print_usage(sys.stderr)
		return EXIT_CONFIG

	run_dir = os.path.abspath(args.run_dir or os.getcwd())

	try:
		s = settings(init=True, basedir=run_dir, configfile=args.config)

		from evolvecua.logging import setup_logging
		setup_logging(run_dir, debug=args.debug, logConf=args.logConf)

		if args.verb == "init":
			return _init(s)
		elif args.verb == "export-sft":
			return _export(s, run_dir)
		elif args.verb == "report":
			return _report(run_dir)

		config = RunConfig.from_settings(s, run_dir=run_dir, mode=args.mode, iterations=args.iterations, seed=args.seed)
		stop_after = dict(collect=Phases.ACCUMULATE, evaluate=Phases.PLAN_GENERATION).get(args.verb)
		summary = Orchestrator(config).run(stop_after=stop_after)
		print(canonical_json(summary.to_dict(), indent=2))
		return EXIT_OK

	except (ConfigurationInvalid, RunLocked, UnknownPolicy) as error:
		_error(error)
		return EXIT_CONFIG
	except EndpointError as error:
		_error(error, phase=_failed_phase(run_dir))
		return EXIT_ENDPOINT
	except PhaseFailed as error:
		_error(error, phase=error.phase)
		return EXIT_PHASE
	except StoreException as error:
		_error(error, phase=args.verb)
		return EXIT_PHASE
	except Exception as error:
		logger.exception("Unexpected error while running {}".format(args.verb))
		_error(error, phase=args.verb)
		return EXIT_FAILURE


def _failed_phase(run_dir):
	from evolvecua.orchestrator import STATE_FILE
	from evolvecua.orchestrator.state import RunState
	path = os.path.join(run_dir, STATE_FILE)
	if not os.path.exists(path):
		return None
	failure = RunState.load(path).failure
	return failure.get("phase") if failure else None


def _init(s):
	if os.path.exists(s.configfile):
		logger.info("Keeping existing configuration {}".format(s.configfile))
	else:
		for key, value in default_settings.items():
			s.set([key], copy.deepcopy(value), force=True)
		s.save(force=True)
		logger.info("Wrote default configuration to {}".format(s.configfile))

	for folder in ("logs", "store", "iterations"):
		s.getBaseFolder(folder)
	print(s.basedir)
	return EXIT_OK


def _export(s, run_dir):
	config = RunConfig.from_settings(s, run_dir=run_dir)
	path = os.path.join(run_dir, "store", "pool.json")
	pool = DatasetPool.load(path) if os.path.exists(path) else DatasetPool()

	iteration = max(pool.history.keys()) if pool.history else 0
	manifest = training_manifest(config, iteration)
	result = export_sft(pool, ensure_dir(os.path.join(run_dir, "export")), manifest, replay_ratio=config.replay_ratio)
	print(canonical_json(dict(dataset=result.dataset, manifest=result.manifest, samples=result.samples,
	                          skipped=len(result.skipped)), indent=2))
	return EXIT_OK


def _report(run_dir):
	report = build_report(run_dir)
	write_json(os.path.join(run_dir, "report.json"), report)
	output = render_report(report)
	print(output)
	return EXIT_OK


__all__ = ["run", "create_parser", "VERBS", "EXIT_OK", "EXIT_FAILURE", "EXIT_CONFIG", "EXIT_PHASE", "EXIT_ENDPOINT"]
