"""Staggered colored-partition arrays and path admissibility.

Coordinates: rows run 1..R top to bottom.  A value cell holding part ``v``
sits at column ``v + 2``; odd-valued rows use odd columns and even-valued rows
even columns, so two cells in consecutive rows touch iff their columns differ
by one.  The leftmost slot of each row (column 1 in odd-valued rows, column 2
in even-valued rows) carries the initial condition ``k_r`` instead of a part.

A downward path visits one cell in every row, moving to an adjacent column at
each step.  On this grid a path through cells ``(r1, c1)`` and ``(r2, c2)``
exists exactly when ``|c2 - c1| <= |r2 - r1|``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, NamedTuple

AG = "AG"
AB = "AB"

# how the hat row is chosen in the odd-height (AB) arrays
HAT_DISPLAY = "display"
HAT_SENTENCE = "sentence"  # contradictory reading, kept only as a negative control


class Cell(NamedTuple):
    row: int
    col: int

    @property
    def value(self) -> int:
        return self.col - 2

    @classmethod
    def of_value(cls, row: int, value: int) -> "Cell":
        return cls(row, value + 2)


@dataclass(frozen=True)
class ArrayShape:
    case: str
    ell: int
    i: int
    hat_rule: str = HAT_DISPLAY

    def __post_init__(self):
        case = self.case.upper()
        object.__setattr__(self, "case", case)
        if case not in (AG, AB):
            raise ValueError(f"unknown case {self.case!r}")
        min_ell = 1 if case == AG else 2
        if self.ell < min_ell:
            raise ValueError(f"{case} arrays need ell >= {min_ell}")
        if not 0 <= self.i <= self.ell:
            raise ValueError(f"need 0 <= i <= ell, got i={self.i}")
        if self.hat_rule not in (HAT_DISPLAY, HAT_SENTENCE):
            raise ValueError(f"unknown hat rule {self.hat_rule!r}")

    @property
    def rows(self) -> int:
        return 2 * self.ell if self.case == AG else 2 * self.ell - 1

    def odd_row(self, r: int) -> bool:
        """True if row ``r`` holds odd values."""
        if self.case == AB and self.i % 2 == 0:
            return r % 2 == 0
        return r % 2 == 1

    def slot(self, r: int) -> Cell:
        return Cell(r, 1 if self.odd_row(r) else 2)

    def cell(self, row: int, value: int) -> Cell:
        c = Cell.of_value(row, value)
        self.validate(c)
        if c.value < 1:
            raise ValueError(f"{c} is not a value cell")
        return c

    def validate(self, c: Cell) -> None:
        if not 1 <= c.row <= self.rows:
            raise ValueError(f"row {c.row} outside 1..{self.rows}")
        if c.col < 1 or (c.col % 2 == 1) != self.odd_row(c.row):
            raise ValueError(f"column {c.col} does not exist in row {c.row}")

    def value_cells(self, value_max: int) -> list[Cell]:
        return [
            Cell.of_value(r, v)
            for v in range(1, value_max + 1)
            for r in range(1, self.rows + 1)
            if (v % 2 == 1) == self.odd_row(r)
        ]

    @property
    def hat(self) -> Cell:
        return hat_cell(self)

    def to_json(self) -> dict:
        return {"case": self.case, "ell": self.ell, "i": self.i}


def hat_cell(shape: ArrayShape) -> Cell:
    """Slot holding the single initial condition ``k_i = 1``."""
    ell, i, rows = shape.ell, shape.i, shape.rows
    if shape.case == AG or shape.hat_rule == HAT_SENTENCE:
        if i % 2 == 1:
            r = i
        elif i >= 2:
            r = 2 * ell + 1 - i
        else:
            r = 2 * ell
        # the sentence reading puts k_0 in row 2*ell, which an AB array lacks
        r = min(r, rows)
    else:
        r = i if i >= 1 else 1
    return shape.slot(r)


def copath(shape: ArrayShape, c1: Cell, c2: Cell) -> bool:
    """Whether some downward path passes through both cells."""
    shape.validate(c1)
    shape.validate(c2)
    if c1.row == c2.row:
        return c1.col == c2.col
    return abs(c1.col - c2.col) <= abs(c1.row - c2.row)


@dataclass(frozen=True)
class FrequencyArray:
    shape: ArrayShape
    freq: Mapping[Cell, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for c, m in dict(self.freq).items():
            c = Cell(*c)
            self.shape.validate(c)
            if c.value < 1:
                raise ValueError(f"{c} is an initial-condition slot, not a part")
            if m < 0:
                raise ValueError("multiplicities must be non-negative")
            if m:
                clean[c] = m
        object.__setattr__(self, "freq", dict(sorted(clean.items())))

    @classmethod
    def from_parts(cls, shape: ArrayShape, parts: Iterable) -> "FrequencyArray":
        """Build from ``(row, value)`` or ``(row, value, multiplicity)`` entries."""
        freq: dict[Cell, int] = {}
        for entry in parts:
            row, value, *rest = entry
            c = shape.cell(row, value)
            freq[c] = freq.get(c, 0) + (rest[0] if rest else 1)
        return cls(shape, freq)

    @property
    def weight(self) -> int:
        return sum(c.value * m for c, m in self.freq.items())

    @property
    def num_parts(self) -> int:
        return sum(self.freq.values())

    def without(self, c: Cell) -> "FrequencyArray":
        freq = dict(self.freq)
        freq[c] -= 1
        return FrequencyArray(self.shape, freq)

    def entries(self) -> list[list[int]]:
        return [[c.row, c.value, m] for c, m in sorted(self.freq.items(), key=lambda kv: (kv[0].row, kv[0].col))]

    def __hash__(self):
        return hash((self.shape, tuple(self.freq.items())))

    def __eq__(self, other):
        if not isinstance(other, FrequencyArray):
            return NotImplemented
        return self.shape == other.shape and self.freq == other.freq

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "cells": self.entries()}

    @classmethod
    def from_json(cls, data: dict | str) -> "FrequencyArray":
        if isinstance(data, str):
            data = json.loads(data)
        s = data["shape"]
        shape = ArrayShape(s["case"], s["ell"], s["i"])
        return cls.from_parts(shape, data["cells"])


def max_path_sum(fa: FrequencyArray, kvec: Mapping[int, int] | None = None, col_max: int | None = None) -> int:
    """Largest sum of entries along a downward path.

    ``kvec`` maps rows to the initial-condition value in their leftmost slot and
    defaults to the single hat of the shape.  Columns beyond ``col_max`` are
    ignored; since they are empty, any ``col_max`` past the last occupied column
    gives the same answer.
    """
    shape = fa.shape
    if kvec is None:
        kvec = {shape.hat.row: 1}
    needed = max([c.col for c in fa.freq] + [shape.slot(r).col for r in kvec] + [2]) + 1
    if col_max is None:
        col_max = needed
    elif col_max < needed:
        raise ValueError(f"col_max must be at least {needed}")

    entry: dict[Cell, int] = dict(fa.freq)
    for r, k in kvec.items():
        if k:
            s = shape.slot(r)
            entry[s] = entry.get(s, 0) + k

    prev: dict[int, int] = {}
    for r in range(1, shape.rows + 1):
        start = shape.slot(r).col
        cur = {}
        for c in range(start, col_max + 1, 2):
            here = entry.get(Cell(r, c), 0)
            if r == 1:
                cur[c] = here
            else:
                cur[c] = here + max(prev.get(c - 1, -1), prev.get(c + 1, -1))
        prev = cur
    return max(prev.values())


def is_admissible(fa: FrequencyArray, k: int = 1, kvec: Mapping[int, int] | None = None) -> bool:
    """Every downward path sums to at most ``k`` (general-k dynamic programme)."""
    return max_path_sum(fa, kvec) <= k


def is_admissible_k1(fa: FrequencyArray) -> bool:
    """Pairwise test for ``k = 1`` with a single hat.

    Admissible iff all multiplicities are 1, no two parts share a path, and no
    part shares a path with the hat.
    """
    shape = fa.shape
    hat = shape.hat
    cells = list(fa.freq)
    if any(m > 1 for m in fa.freq.values()):
        return False
    for n, c in enumerate(cells):
        if copath(shape, c, hat):
            return False
        for d in cells[n + 1 :]:
            if copath(shape, c, d):
                return False
    return True


def forbidden_cells(shape: ArrayShape, value_max: int) -> set[Cell]:
    """Value cells (up to ``value_max``) that share a path with the hat."""
    if value_max < 1:
        raise ValueError("value_max must be >= 1")
    hat = shape.hat
    return {c for c in shape.value_cells(value_max) if copath(shape, c, hat)}


def render(shape: ArrayShape, value_max: int) -> str:
    """Text picture of the array: ``^`` for the hat, ``.`` for forbidden cells."""
    bad = forbidden_cells(shape, value_max)
    hat = shape.hat
    lines = []
    for r in range(1, shape.rows + 1):
        slot = shape.slot(r)
        out = ["1^" if slot == hat else " ."]
        for v in range(slot.col, value_max + 1, 2):
            out.append(" ." if Cell.of_value(r, v) in bad else f"{v:>2}")
        lines.append(("  " if slot.col == 2 else "") + "  ".join(out))
    return "\n".join(lines)


@lru_cache(maxsize=None)
def load_displays() -> dict:
    """Transcribed ell = 4 array displays: ``{case: {i: [row descriptors]}}``.

    Each row descriptor records the value parity, whether the row holds the hat,
    the largest value shown and the values shown as forbidden.
    """
    text = resources.files("partition_lab").joinpath("data/displays.json").read_text()
    return json.loads(text)


def display_pattern(shape: ArrayShape, value_max: int) -> list[dict]:
    """Row descriptors of ``shape`` in the same layout as :func:`load_displays`."""
    bad = forbidden_cells(shape, value_max)
    hat = shape.hat
    out = []
    for r in range(1, shape.rows + 1):
        odd = shape.odd_row(r)
        top = value_max if (value_max % 2 == 1) == odd else value_max - 1
        out.append(
            {
                "parity": "odd" if odd else "even",
                "hat": hat.row == r,
                "max_value": top,
                "forbidden": sorted(c.value for c in bad if c.row == r),
            }
        )
    return out
