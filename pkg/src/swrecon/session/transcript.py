"""Public-channel transcripts and the leakage they imply."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class Direction(str, Enum):
    ALICE_TO_BOB = "A->B"
    BOB_TO_ALICE = "B->A"


@dataclass(frozen=True)
class Message:
    """One public message.

    ``supports`` optionally lists, per payload bit, the source positions whose
    parity that bit announces. It lets a verifier replay the message.
    """

    direction: Direction
    kind: str
    payload: tuple[int, ...]
    supports: tuple[np.ndarray, ...] | None = None

    @property
    def bits(self) -> int:
        return len(self.payload)


class Transcript:
    """Ordered record of everything said over the public channel."""

    def __init__(self):
        self.messages: list[Message] = []
        self.alice_bits = 0
        self.bob_bits = 0

    def send(self, direction: Direction, kind: str, payload, supports=None) -> Message:
        payload = tuple(int(b) for b in np.asarray(payload, dtype=np.int64).ravel())
        if any(b not in (0, 1) for b in payload):
            raise ValueError("payload must be bits")
        if supports is not None:
            supports = tuple(np.asarray(s) for s in supports)
            if len(supports) != len(payload):
                raise ValueError("one support per payload bit is required")
        msg = Message(Direction(direction), kind, payload, supports)
        self.messages.append(msg)
        if msg.direction is Direction.ALICE_TO_BOB:
            self.alice_bits += msg.bits
        else:
            self.bob_bits += msg.bits
        return msg

    @property
    def total_bits(self) -> int:
        return self.alice_bits + self.bob_bits

    def by_direction(self, direction: Direction) -> list[Message]:
        return [m for m in self.messages if m.direction is direction]

    def __len__(self):
        return len(self.messages)

    def summary(self) -> dict:
        kinds: dict[str, int] = {}
        for m in self.messages:
            key = f"{m.direction.value} {m.kind}"
            kinds[key] = kinds.get(key, 0) + m.bits
        return {"messages": len(self.messages), "alice_bits": self.alice_bits,
                "bob_bits": self.bob_bits, "total_bits": self.total_bits, "by_kind": kinds}


LEAK_POLICIES = ("alice_only", "total")


def key_reduction(t: Transcript, policy: str = "total") -> int:
    """Bits to subtract from the final key for the leakage in ``t``.

    This is the bit count of the conversation, an upper bound on the mutual
    information between Alice's string and the transcript. ``"total"`` counts
    both directions; ``"alice_only"`` counts Alice's messages alone.
    """
    if policy == "total":
        return t.total_bits
    if policy == "alice_only":
        return t.alice_bits
    raise ValueError(f"unknown leakage policy {policy!r}; expected one of {LEAK_POLICIES}")


def replay_violations(t: Transcript, x, direction: Direction = Direction.ALICE_TO_BOB) -> int:
    """Count payload bits that disagree with the parity of ``x`` over their support."""
    x = np.asarray(x, dtype=np.int64)
    bad = 0
    for m in t.by_direction(direction):
        if m.supports is None:
            continue
        for bit, sup in zip(m.payload, m.supports):
            if int(x[sup].sum() & 1) != bit:
                bad += 1
    return bad
