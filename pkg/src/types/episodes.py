from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from .events import EventBody, EVENT_NAMES, Ready, event_detail


@dataclass
class EpisodeEvent:
    sample_index: int
    body: EventBody

    @property
    def name(self) -> str:
        return EVENT_NAMES[type(self.body)]

    @property
    def sensor_id(self) -> str:
        return self.body.sensor_id

    def as_row(self) -> dict:
        return {
            "event": self.name,
            "sample_index": self.sample_index,
            "sensor_id": self.sensor_id,
            "detail": event_detail(self.body),
        }


@dataclass
class EpisodeLog:
    """Chronological record of fault and SR events during one run."""

    events: List[EpisodeEvent] = field(default_factory=list)

    def add(self, sample_index: int, body: EventBody) -> EpisodeEvent:
        ev = EpisodeEvent(sample_index=sample_index, body=body)
        self.events.append(ev)
        return ev

    def of_type(self, kind: type) -> list[EpisodeEvent]:
        return [e for e in self.events if isinstance(e.body, kind)]

    def sr_durations(self) -> list[int]:
        """Samples from begin_repair to ready, one entry per completed repair."""
        return [e.body.samples_collected for e in self.of_type(Ready)]

    def rows(self) -> list[dict]:
        return [e.as_row() for e in self.events]
