# coding=utf-8
"""
The tool call codec, serializing hybrid actions to and from the ``<tool_call>`` text blocks policies emit.

Wire format::

    <tool_call>
    {"name":"bookmark_page","arguments":{"url":"https://a.example"}}
    </tool_call>

The JSON object is compact, ``name`` precedes ``arguments`` and argument keys are sorted. GUI actions travel
as the reserved tool ``computer`` whose ``action`` argument carries the action type, followed by ``coordinate``
and the remaining parameters in sorted order.
"""

from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import json
import logging
import re

from . import Action, GUI_TOOL_NAME, TOOL_NAME_PATTERN
from .exceptions import FormatError, FormatStages, InvalidAction

OPEN_TAG = "<tool_call>"
CLOSE_TAG = "</tool_call>"

_block_regex = re.compile(re.escape(OPEN_TAG) + r"(.*?)(?:" + re.escape(CLOSE_TAG) + r"|\Z)", re.DOTALL)

logger = logging.getLogger(__name__)


def encode_action(action):
	"""
	Encodes an action into its canonical tool call block.

	    >>> encode_action(Action.gui("key_combo", keys="Ctrl+P"))
	    '<tool_call>\\n{"name":"computer","arguments":{"action":"key_combo","keys":"Ctrl+P"}}\\n</tool_call>'

	Arguments:
	    action (Action): The action to encode.

	Returns:
	    str: The tool call block, delimiter lines included.
	"""
	payload = json.dumps(action.as_payload(), ensure_ascii=False, separators=(",", ":"))
	return "{}\n{}\n{}".format(OPEN_TAG, payload, CLOSE_TAG)


def extract_blocks(text):
	"""
	Returns the bodies of all tool call blocks in ``text``, in order of appearance. The last block may be
	unterminated.
	"""
	if not text:
		return []
	return [match.group(1).strip() for match in _block_regex.finditer(text)]


def decode_action(text, schemas=None):
	"""
	Decodes the first well formed tool call block in ``text``.

	Blocks are tried in order of appearance, the first one that decodes into a valid action wins. Surrounding prose
	is ignored. If ``schemas`` is given, MCP calls are additionally validated against the schema registered under
	their tool name and unknown tools are rejected.

	Arguments:
	    text (str): Arbitrary model output.
	    schemas (dict): Optional mapping of tool name to :class:`~evolvecua.model.ToolSchema`.

	Returns:
	    Action: The decoded action.

	Raises:
	    FormatError: No block decoded, the error of the first block is raised.
	"""
	blocks = extract_blocks(text)
	if not blocks:
		raise FormatError(FormatStages.MISSING_BLOCK, "no {} block found".format(OPEN_TAG))

	first_error = None
	for block in blocks:
		try:
			return _decode_block(block, schemas)
		except FormatError as error:
			if first_error is None:
				first_error = error
	raise first_error


def _decode_block(block, schemas):
	try:
		payload = json.loads(block)
	except ValueError as error:
		raise FormatError(FormatStages.BAD_JSON, str(error))

	if not isinstance(payload, dict):
		raise FormatError(FormatStages.BAD_ARGS, "tool call must be a JSON object")

	name = payload.get("name")
	if isinstance(name, str) and name != GUI_TOOL_NAME and not TOOL_NAME_PATTERN.match(name):
		raise FormatError(FormatStages.BAD_ARGS,
		                  "tool name {!r} does not match [a-z0-9_]+".format(name),
		                  violations=["invalid tool name {}".format(name)])

	try:
		action = Action.from_payload(payload)
	except InvalidAction as error:
		raise FormatError(FormatStages.BAD_ARGS, error.reason, violations=[error.reason])

	if action.is_mcp and schemas is not None:
		schema = schemas.get(action.tool_name)
		if schema is None:
			raise FormatError(FormatStages.BAD_ARGS,
			                  "unknown tool {}".format(action.tool_name),
			                  violations=["unknown tool {}".format(action.tool_name)])
		violations = validate_arguments(action, schema)
		if violations:
			raise FormatError(FormatStages.BAD_ARGS, "; ".join(violations), violations=violations)

	return action


def _type_matches(value, expected):
	if expected == "any":
		return True
	if expected == "string":
		return isinstance(value, str)
	if expected == "boolean":
		return isinstance(value, bool)
	if expected == "integer":
		return isinstance(value, int) and not isinstance(value, bool)
	if expected == "number":
		return isinstance(value, (int, float)) and not isinstance(value, bool)
	if expected == "object":
		return isinstance(value, dict)
	if expected == "array":
		return isinstance(value, list)
	return False


def validate_arguments(action, schema):
	"""
	Validates the arguments of an MCP action against a tool schema.

	    >>> from evolvecua.model import ToolSchema
	    >>> schema = ToolSchema.create("bookmark_page", "", [dict(name="url", type="string", required=True)], "mini_browser")
	    >>> validate_arguments(Action.mcp("bookmark_page", dict(url="x")), schema)
	    []
	    >>> validate_arguments(Action.mcp("bookmark_page", dict()), schema)
	    ['missing required parameter url']

	Returns:
	    list: Human readable violations, empty if the arguments are valid. Never raises on bad arguments.
	"""
	violations = []
	if not action.is_mcp:
		return ["{} is not an MCP call".format(action.action_type)]
	if action.tool_name != schema.tool_name:
		violations.append("schema {} does not describe tool {}".format(schema.tool_name, action.tool_name))

	arguments = action.arguments or dict()
	for parameter in schema.parameters:
		if parameter.name not in arguments:
			if parameter.required:
				violations.append("missing required parameter {}".format(parameter.name))
			continue
		if not _type_matches(arguments[parameter.name], parameter.type):
			violations.append("parameter {} must be of type {}".format(parameter.name, parameter.type))

	known = set(p.name for p in schema.parameters)
	for name in sorted(arguments):
		if name not in known:
			violations.append("unknown parameter {}".format(name))

	return violations
