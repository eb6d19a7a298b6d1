"""Tableau sequents: finite maps from labelled formulas to truth intervals.

A sequent is kept as a map, so duplicate labels are merged by interval
intersection at insertion time.  Entries with an empty interval are retained
rather than eagerly closed, so the axiom rule of the tableau fires explicitly.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .numerics import Interval, format_interval, parse_interval, rational_bits
from .syntax import Formula, parse, size, to_text


class SequentError(ValueError):
    pass


class Sequent:
    """An immutable map from formulas to intervals, in insertion order."""

    __slots__ = ("_map", "_key")

    def __init__(self, literals: Iterable[tuple[Formula, Interval]] = ()):
        m: dict[Formula, Interval] = {}
        for label, interval in literals:
            if label in m:
                m[label] = m[label].intersect(interval)
            else:
                m[label] = interval
        self._map = m
        self._key = frozenset(m.items())

    def insert(self, label: Formula, interval: Interval) -> Sequent:
        """Add a literal; an existing entry for the label is intersected."""
        out = Sequent.__new__(Sequent)
        m = dict(self._map)
        if label in m:
            m[label] = m[label].intersect(interval)
        else:
            m[label] = interval
        out._map = m
        out._key = frozenset(m.items())
        return out

    def remove(self, label: Formula) -> Sequent:
        out = Sequent.__new__(Sequent)
        m = dict(self._map)
        del m[label]
        out._map = m
        out._key = frozenset(m.items())
        return out

    def get(self, label: Formula) -> Interval | None:
        return self._map.get(label)

    def __getitem__(self, label: Formula) -> Interval:
        return self._map[label]

    def __contains__(self, label: Formula) -> bool:
        return label in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self._map)

    def items(self) -> Iterator[tuple[Formula, Interval]]:
        return iter(self._map.items())

    def labels(self) -> list[Formula]:
        return list(self._map)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        body = ", ".join(f"{to_text(f)} in {i}" for f, i in self._map.items())
        return "{" + body + "}"

    def is_exact_over(self, labels: Iterable[Formula]) -> bool:
        """Total on the given label set (one interval per label)."""
        wanted = set(labels)
        return wanted == set(self._map)

    def is_subsequent(self, other: Sequent) -> bool:
        """Pointwise interval inclusion; both sides must share one label set."""
        if set(self._map) != set(other._map):
            raise SequentError("sub-sequent check over mismatched label sets")
        return all(i.is_subset(other._map[f]) for f, i in self._map.items())

    def combined_size(self) -> int:
        """Sum of literal sizes; each literal adds its formula size, the binary
        sizes of the four interval endpoints, and 3."""
        total = 0
        for f, interval in self._map.items():
            total += size(f) + rational_bits(interval.lo) + rational_bits(interval.hi) + 3
        return total

    def to_json(self) -> dict:
        return {
            "literals": [
                {"formula": to_text(f), "interval": format_interval(i)}
                for f, i in self._map.items()
            ]
        }

    @staticmethod
    def from_json(data: dict) -> Sequent:
        try:
            raw = data["literals"]
        except (TypeError, KeyError) as exc:
            raise SequentError("sequent JSON needs a 'literals' list") from exc
        literals = []
        for entry in raw:
            literals.append((parse(entry["formula"]), parse_interval(entry["interval"])))
        return Sequent(literals)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @staticmethod
    def loads(text: str) -> Sequent:
        return Sequent.from_json(json.loads(text))
