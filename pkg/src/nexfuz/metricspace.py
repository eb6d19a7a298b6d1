"""Finite metric label spaces given by explicit rational distance matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .numerics import ZERO, format_rational, parse_rational


class MetricSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class MetricSpace:
    labels: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise MetricSpaceError("duplicate labels")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise MetricSpaceError("distance matrix shape does not match labels")
        for i in range(n):
            if self.matrix[i][i] != 0:
                raise MetricSpaceError(f"nonzero self-distance for {self.labels[i]!r}")
            for j in range(n):
                if self.matrix[i][j] < ZERO:
                    raise MetricSpaceError("negative distance")
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise MetricSpaceError("distance matrix is not symmetric")
                for k in range(n):
                    if self.matrix[i][j] > self.matrix[i][k] + self.matrix[k][j]:
                        raise MetricSpaceError("triangle inequality violated")

    @staticmethod
    def make(labels, matrix) -> MetricSpace:
        return MetricSpace(
            tuple(labels),
            tuple(tuple(Fraction(v) for v in row) for row in matrix),
        )

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MetricSpaceError(f"unknown label {label!r}") from None

    def dist(self, a: str, b: str) -> Fraction:
        return self.matrix[self.index(a)][self.index(b)]

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "dist": [[format_rational(v) for v in row] for row in self.matrix],
        }

    @staticmethod
    def from_json(data: dict) -> MetricSpace:
        try:
            labels = data["labels"]
            dist = data["dist"]
        except (TypeError, KeyError) as exc:
            raise MetricSpaceError("metric space JSON needs 'labels' and 'dist'") from exc
        matrix = [[parse_rational(v) for v in row] for row in dist]
        return MetricSpace.make(labels, matrix)

    @staticmethod
    def load(path: str) -> MetricSpace:
        with open(path, "r", encoding="utf-8") as fh:
            return MetricSpace.from_json(json.load(fh))
