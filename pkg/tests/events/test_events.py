# coding=utf-8
from __future__ import absolute_import

__license__ = 'GNU Affero General Public License http://www.gnu.org/licenses/agpl.html'
__copyright__ = "Copyright (C) 2026 The EvolveCUA Project - Released under terms of the AGPLv3 License"

import os
import shutil
import tempfile
import unittest

import mock

from evolvecua.events import EventLogListener, EventManager, Events, GenericEventListener, all_events
from evolvecua.util import read_jsonl


class EventManagerTest(unittest.TestCase):

	def setUp(self):
		self.event_manager = EventManager()

	def test_all_events(self):
		events = all_events()
		self.assertIn(Events.RUN_STARTED, events)
		self.assertIn(Events.POOL_UPDATED, events)
		self.assertEqual(len(events), len(set(events)))

	def test_fire(self):
		callback = mock.Mock()
		self.event_manager.subscribe(Events.PHASE_DONE, callback)
		self.event_manager.subscribe(Events.PHASE_DONE, callback)

		self.event_manager.fire(Events.PHASE_DONE, dict(iteration=0, phase="evaluate"))
		self.event_manager.fire(Events.PHASE_STARTED, dict(iteration=0, phase="analyze_gaps"))
		self.event_manager.wait_until_idle()

		callback.assert_called_once_with(Events.PHASE_DONE, dict(iteration=0, phase="evaluate"))

	def test_unsubscribe(self):
		callback = mock.Mock()
		self.event_manager.subscribe(Events.RUN_DONE, callback)
		self.event_manager.unsubscribe(Events.RUN_DONE, callback)
		self.event_manager.unsubscribe(Events.RUN_DONE, callback)

		self.event_manager.fire(Events.RUN_DONE)
		self.event_manager.wait_until_idle()
		self.assertFalse(callback.called)

	def test_failing_listener(self):
		failing = mock.Mock(side_effect=RuntimeError("boom"))
		callback = mock.Mock()
		self.event_manager.subscribe(Events.BANK_UPDATED, failing)
		self.event_manager.subscribe(Events.BANK_UPDATED, callback)

		self.event_manager.fire(Events.BANK_UPDATED, dict(size=3))
		self.event_manager.wait_until_idle()

		failing.assert_called_once_with(Events.BANK_UPDATED, dict(size=3))
		callback.assert_called_once_with(Events.BANK_UPDATED, dict(size=3))

	def test_generic_listener(self):
		class Listener(GenericEventListener):
			def __init__(self, event_manager):
				GenericEventListener.__init__(self, event_manager=event_manager)
				self.received = []

			def eventCallback(self, event, payload):
				self.received.append(event)

		listener = Listener(self.event_manager)
		listener.subscribe([Events.RUN_STARTED, Events.RUN_PAUSED])
		self.event_manager.fire(Events.RUN_STARTED)
		self.event_manager.fire(Events.RUN_DONE)
		listener.unsubscribe([Events.RUN_STARTED])
		self.event_manager.fire(Events.RUN_STARTED)
		self.event_manager.fire(Events.RUN_PAUSED)
		self.event_manager.wait_until_idle()

		self.assertEqual(Events.RUN_PAUSED, listener.received[-1])
		self.assertIn(listener.received, ([Events.RUN_STARTED, Events.RUN_PAUSED], [Events.RUN_PAUSED]))


class EventLogListenerTest(unittest.TestCase):

	def setUp(self):
		self.basedir = tempfile.mkdtemp()
		self.path = os.path.join(self.basedir, "events.jsonl")
		self.event_manager = EventManager()

	def tearDown(self):
		shutil.rmtree(self.basedir)

	@mock.patch("time.time")
	def test_log(self, mock_time):
		mock_time.return_value = 1700000000.0
		listener = EventLogListener(self.path, event_manager=self.event_manager)

		self.event_manager.fire(Events.RUN_STARTED, dict(mode="exp_only", resumed=False))
		self.event_manager.fire(Events.TASK_QUARANTINED, dict(request_id="r1"))
		self.event_manager.wait_until_idle()
		listener.close()

		self.event_manager.fire(Events.RUN_DONE)
		self.event_manager.wait_until_idle()

		self.assertEqual([dict(event=Events.RUN_STARTED, payload=dict(mode="exp_only", resumed=False), time=1700000000.0),
		                  dict(event=Events.TASK_QUARANTINED, payload=dict(request_id="r1"), time=1700000000.0)],
		                 read_jsonl(self.path))
