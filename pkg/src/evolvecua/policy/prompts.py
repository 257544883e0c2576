# coding=utf-8
"""
Prompt rendering. All prompts are Jinja2 templates in ``evolvecua/templates``.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import os
import threading

import jinja2

TEMPLATE_FOLDER = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "templates")

SYSTEM_TEMPLATE = "policy_system.jinja2"
OBSERVATION_TEMPLATE = "policy_observation.jinja2"

_environment = None
_environment_mutex = threading.Lock()


def environment():
	global _environment
	with _environment_mutex:
		if _environment is None:
			_environment = jinja2.Environment(loader=jinja2.FileSystemLoader(TEMPLATE_FOLDER),
			                                  undefined=jinja2.StrictUndefined,
			                                  trim_blocks=True,
			                                  lstrip_blocks=True,
			                                  autoescape=False)
	return _environment


def render(name, **context):
	return environment().get_template(name).render(**context)


def prompt_base(task, tools):
	"""
	Renders the base system prompt of a task, the prompt an LLM policy sees without injected experience.

	Arguments:
	    task (TaskSpec): The task.
	    tools (list): The :class:`~evolvecua.model.ToolSchema` list of the task's application.

	Returns:
	    str: The prompt.
	"""
	return render(SYSTEM_TEMPLATE, task=task, tools=tools)


def observation_message(screen, result=None, step=0):
	return render(OBSERVATION_TEMPLATE, screen=screen.render(), result=result, step=step)


def build_request(model, messages):
	"""
	Returns:
	    dict: A chat request ``{"model": ..., "messages": [...]}``, messages given as ``(role, content)`` pairs.
	"""
	return dict(model=model, messages=[dict(role=role, content=content) for role, content in messages])
