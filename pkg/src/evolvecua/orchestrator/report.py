# coding=utf-8
"""
Text and JSON reports of a run directory.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import os

from evolvecua.util import read_json

from .exceptions import PhaseFailed

REPORT_PHASE = "report"


def _latest_iteration(run_dir):
	folder = os.path.join(run_dir, "iterations")
	if not os.path.isdir(folder):
		return None
	done = [int(name) for name in os.listdir(folder)
	        if name.isdigit() and os.path.exists(os.path.join(folder, name, "profile.json"))]
	return max(done) if done else None


def _optional(path):
	return read_json(path) if os.path.exists(path) else None


def build_report(run_dir):
	"""
	Collects profile, gaps, plan and bank of the latest evaluated iteration plus the run summary.

	Returns:
	    dict: The report.

	Raises:
	    PhaseFailed: No iteration has been evaluated yet.
	"""
	k = _latest_iteration(run_dir)
	if k is None:
		raise PhaseFailed(REPORT_PHASE, None, "no profile has been computed in {} yet".format(run_dir))

	folder = os.path.join(run_dir, "iterations", str(k))
	bank = _optional(os.path.join(folder, "bank.json"))
	entries = bank.get("entries", []) if bank else []

	per_app = dict()
	for entry in entries:
		per_app[entry["app_id"]] = per_app.get(entry["app_id"], 0) + 1

	summary = _optional(os.path.join(run_dir, "summary.json"))
	return dict(iteration=k,
	            profile=read_json(os.path.join(folder, "profile.json")),
	            gaps=_optional(os.path.join(folder, "gaps.json")),
	            plan=_optional(os.path.join(folder, "plan.json")),
	            bank=dict(size=len(entries), per_app=per_app, rules=[entry["text"] for entry in entries]),
	            iterations=summary.get("iterations", []) if summary else [])


def _percent(value):
	return "n/a" if value is None else "{:.1f}%".format(value * 100.0)


def _signed(value):
	return "n/a" if value is None else "{:+.3f}".format(value)


def _cell(cell):
	return "{} ({})".format(_percent(cell.get("value")), cell.get("support", 0))


def render_report(report):
	"""
	Renders a report built by :func:`build_report` as plain text.
	"""
	profile = report["profile"]
	lines = ["Iteration {}".format(report["iteration"]),
	         "",
	         "Pass rate:  {}".format(_cell(profile["pass_rate"])),
	         "LLM score:  {}".format("n/a" if profile["score_mean"].get("value") is None
	                                 else "{:.3f}".format(profile["score_mean"]["value"])),
	         "MCP ratio:  {}".format(_percent(profile["modality"]["mcp"].get("value"))),
	         "GUI ratio:  {}".format(_percent(profile["modality"]["gui"].get("value"))),
	         "Hybrid:     {}".format(_percent(profile["modality"]["hybrid"].get("value"))),
	         "",
	         "Pass rate per difficulty:"]
	for difficulty in sorted(profile["difficulty"]):
		lines.append("  {:<24} {}".format(difficulty, _cell(profile["difficulty"][difficulty])))

	lines.append("Pass rate per skill:")
	for skill in sorted(profile["skills"]):
		lines.append("  {:<24} {}".format(skill, _cell(profile["skills"][skill])))

	lines.append("Format:")
	for name in sorted(profile["format"]):
		lines.append("  {:<24} {}".format(name, _cell(profile["format"][name])))

	gaps = report.get("gaps")
	if gaps:
		lines += ["", "Gaps:", "  {:<24} {}".format("mcp", _signed(gaps.get("delta_mcp")))]
		for name, value in sorted(gaps.get("delta_difficulty", dict()).items()):
			lines.append("  {:<24} {}".format(name, _signed(value)))
		for name, value in sorted(gaps.get("delta_skill", dict()).items()):
			lines.append("  {:<24} {}".format(name, _signed(value)))
		for app_id, tools in sorted(gaps.get("underused_tools", dict()).items()):
			lines.append("  underused in {}: {}".format(app_id, ", ".join(tools) if tools else "none"))

	plan = report.get("plan")
	if plan:
		allocated = [cell for cell in plan.get("cells", []) if cell.get("count")]
		lines += ["", "Generation plan ({} tasks):".format(plan.get("budget"))]
		for cell in allocated:
			lines.append("  {:<24} {:<8} {:<4} {}".format(cell["skill"], cell["difficulty"], cell["emphasis"], cell["count"]))

	bank = report["bank"]
	lines += ["", "Experience bank: {} rules".format(bank["size"])]
	for app_id, count in sorted(bank["per_app"].items()):
		lines.append("  {:<24} {}".format(app_id, count))

	if report["iterations"]:
		lines += ["", "{:>4} {:>10} {:>8} {:>10} {:>6} {:>6}".format("iter", "pass", "score", "mcp", "pool", "bank")]
		for item in report["iterations"]:
			lines.append("{:>4} {:>10} {:>8} {:>10} {:>6} {:>6}".format(item["iteration"],
			                                                          _percent(item.get("pass_rate")),
			                                                          "n/a" if item.get("score_mean") is None else "{:.3f}".format(item["score_mean"]),
			                                                          _percent(item.get("mcp_ratio")),
			                                                          item.get("pool_size"),
			                                                          item.get("bank_size")))
	return "\n".join(lines)
