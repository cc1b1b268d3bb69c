"""Preference-pair dataset export for external preference-optimization trainers.

Pairs are written as JSON lines with prompt/chosen/rejected (plus annotator
and context snapshot), so the file loads back into an equal list. Training
itself happens outside this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


class ValidationFailed(ValueError):
    """A preference pair is malformed (chosen == rejected, empty prompt, ...)."""


@dataclass(frozen=True)
class PreferencePair:
    prompt: str
    chosen: str
    rejected: str
    annotator: str = ""
    context_snapshot: str = ""

    def validate(self) -> None:
        if not self.prompt.strip():
            raise ValidationFailed("prompt must be nonempty")
        if self.chosen == self.rejected:
            raise ValidationFailed("chosen and rejected must differ")

    def to_dict(self) -> dict:
        return {
            "prompt": self.prompt,
            "chosen": self.chosen,
            "rejected": self.rejected,
            "annotator": self.annotator,
            "context_snapshot": self.context_snapshot,
        }


def export_preference_pairs(pairs: list[PreferencePair], path: str | Path) -> None:
    """Validate and write pairs as JSON lines; an empty list yields an empty file."""
    for pair in pairs:
        pair.validate()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in pairs:
            fh.write(json.dumps(pair.to_dict(), ensure_ascii=False))
            fh.write("\n")


def load_preference_pairs(path: str | Path) -> list[PreferencePair]:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            pairs.append(
                PreferencePair(
                    prompt=d["prompt"],
                    chosen=d["chosen"],
                    rejected=d["rejected"],
                    annotator=d.get("annotator", ""),
                    context_snapshot=d.get("context_snapshot", ""),
                )
            )
    return pairs
