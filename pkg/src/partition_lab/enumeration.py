"""Enumeration of admissible colored partitions and classical partition families.

Generating functions come back as :class:`~partition_lab.series.Series` with
``z`` marking the number of parts and ``q`` the weight.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Callable, Iterator

from .lattice import AB, AG, ArrayShape, Cell, FrequencyArray, copath, is_admissible
from .series import Series

ClassicalPartition = tuple[int, ...]


def is_partition(parts) -> bool:
    return all(p >= 1 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


# -- admissible colored partitions ---------------------------------------------


class _Search:
    """Candidate cells for the k = 1 search, ordered by descending value.

    Cells sharing a path with the hat are dropped up front; ``conflict[n]`` is
    a bitmask of the candidates sharing a path with candidate ``n``.
    """

    def __init__(self, shape: ArrayShape, vmax: int):
        hat = shape.hat
        cells = [c for c in shape.value_cells(vmax) if not copath(shape, c, hat)]
        cells.sort(key=lambda c: (-c.value, c.row))
        self.cells = cells
        self.values = [c.value for c in cells]
        self.conflict = []
        for n, c in enumerate(cells):
            mask = 0
            for m, d in enumerate(cells):
                if m != n and copath(shape, c, d):
                    mask |= 1 << m
            self.conflict.append(mask)
        # first[w]: first candidate whose value fits in a remaining budget w
        self.first = []
        for w in range(vmax + 1):
            n = 0
            while n < len(cells) and self.values[n] > w:
                n += 1
            self.first.append(n)

    def walk(self, budget: int) -> Iterator[tuple[int, ...]]:
        """All admissible index sets of total value <= budget."""
        cells, values, conflict, first = self.cells, self.values, self.conflict, self.first
        total = len(cells)

        def rec(start, banned, remaining, chosen):
            yield chosen
            for n in range(max(start, first[remaining]), total):
                if banned >> n & 1:
                    continue
                yield from rec(n + 1, banned | conflict[n], remaining - values[n], chosen + (n,))

        yield from rec(0, 0, budget, ())

    def count(self, budget: int) -> Counter:
        """``(parts, weight) -> number`` over all admissible sets."""
        cells, values, conflict, first = self.cells, self.values, self.conflict, self.first
        total = len(cells)
        out: Counter = Counter()

        def rec(start, banned, remaining, j):
            out[(j, budget - remaining)] += 1
            for n in range(max(start, first[remaining]), total):
                if not banned >> n & 1:
                    rec(n + 1, banned | conflict[n], remaining - values[n], j + 1)

        rec(0, 0, budget, 0)
        return out


def iter_admissible(shape: ArrayShape, max_weight: int) -> Iterator[FrequencyArray]:
    """Every k = 1 admissible frequency array of weight <= max_weight."""
    search = _Search(shape, max_weight)
    for idx in search.walk(max_weight):
        yield FrequencyArray(shape, {search.cells[n]: 1 for n in idx})


def enum_admissible(shape: ArrayShape, n: int) -> list[FrequencyArray]:
    """The k = 1 admissible frequency arrays of weight exactly ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [fa for fa in iter_admissible(shape, n) if fa.weight == n]


def iter_frequency_arrays(shape: ArrayShape, max_weight: int) -> Iterator[FrequencyArray]:
    """Every frequency array of weight <= max_weight, admissible or not."""
    cells = shape.value_cells(max_weight)

    def rec(n, remaining, freq):
        if n == len(cells):
            yield FrequencyArray(shape, freq)
            return
        c = cells[n]
        for m in range(remaining // c.value + 1):
            if m:
                freq[c] = m
            yield from rec(n + 1, remaining - m * c.value, freq)
        freq.pop(c, None)

    yield from rec(0, max_weight, {})


def _dp_count(shape: ArrayShape, budget: int) -> Counter:
    # multisets of value cells grown in index order; admissibility is closed
    # under removing parts, so an inadmissible node prunes its subtree
    cells = sorted(shape.value_cells(budget), key=lambda c: (-c.value, c.row))
    out: Counter = Counter()

    def rec(start, freq, remaining, j):
        out[(j, budget - remaining)] += 1
        for n in range(start, len(cells)):
            c = cells[n]
            if c.value > remaining:
                continue
            freq[c] = freq.get(c, 0) + 1
            if is_admissible(FrequencyArray(shape, freq)):
                rec(n, freq, remaining - c.value, j + 1)
            freq[c] -= 1
            if not freq[c]:
                del freq[c]

    rec(0, {}, budget, 0)
    return out


def gen_P(shape: ArrayShape, qbound: int, method: str = "pairwise") -> Series:
    """Bivariate generating function of admissible partitions, z marking parts.

    ``method="pairwise"`` runs the pruned k = 1 search; ``method="dp"`` grows
    arbitrary multisets and filters them through the path-sum programme, which
    is much slower but shares no code with the pairwise test.
    """
    if qbound < 0:
        raise ValueError("qbound must be non-negative")
    if method == "pairwise":
        counts = _Search(shape, qbound).count(qbound)
    elif method == "dp":
        counts = _dp_count(shape, qbound)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Series(counts, qbound)


def admissible_jsonl(shape: ArrayShape, n: int) -> Iterator[str]:
    for fa in enum_admissible(shape, n):
        yield json.dumps({"n": fa.weight, "j": fa.num_parts, "cells": fa.entries()})


# -- classical families --------------------------------------------------------


def _backtrack(qbound: int, ok: Callable[[list[int]], bool]) -> Counter:
    """Count partitions of weight <= qbound by (parts, weight).

    ``ok`` sees the part list right after a (smallest so far) part is appended
    and must only inspect conditions that involve that last part.
    """
    out: Counter = Counter()

    def rec(parts, total, maxp):
        out[(len(parts), total)] += 1
        for p in range(min(maxp, qbound - total), 0, -1):
            parts.append(p)
            if ok(parts):
                rec(parts, total + p, p)
            parts.pop()

    rec([], 0, qbound)
    return out


def _check(ell: int, i: int) -> None:
    if ell < 1 or not 0 <= i <= ell:
        raise ValueError(f"need ell >= 1 and 0 <= i <= ell, got ell={ell}, i={i}")


def gordon_ok(ell: int, i: int) -> Callable[[list[int]], bool]:
    def ok(parts):
        m = len(parts) - 1
        if m >= ell and parts[m - ell] - parts[m] < 2:
            return False
        if parts[m] == 1 and parts.count(1) > i:
            return False
        return True

    return ok


def bressoud_ok(ell: int, i: int, parity: bool = True) -> Callable[[list[int]], bool]:
    base = gordon_ok(ell, i)

    def ok(parts):
        if not base(parts):
            return False
        if parity:
            m = len(parts) - 1
            j = m - ell + 1
            # windows that would run past the last part are unconstrained
            if j >= 0 and parts[j] - parts[m] < 2 and sum(parts[j:]) % 2 != i % 2:
                return False
        return True

    return ok


def gga_ok(ell: int, i: int) -> Callable[[list[int]], bool]:
    def ok(parts):
        m = len(parts) - 1
        p = parts[m]
        if p % 2 == 1 and m >= 1 and parts[m - 1] == p:
            return False
        if m >= ell:
            top = parts[m - ell]
            gap = top - p
            if gap < 2 or (top % 2 == 0 and gap == 2):
                return False
        if p <= 2 and sum(1 for x in parts if x <= 2) > i:
            return False
        return True

    return ok


def enum_gordon_B(ell: int, i: int, qbound: int) -> Series:
    """Partitions with ``lambda_j - lambda_{j+ell} >= 2`` and at most ``i`` ones;
    z counts parts."""
    _check(ell, i)
    return Series(_backtrack(qbound, gordon_ok(ell, i)), qbound)


def enum_bressoud_Bstar(ell: int, i: int, qbound: int, parity: bool = True) -> Series:
    """Gordon conditions plus the window parity rule: whenever
    ``lambda_j - lambda_{j+ell-1} < 2`` the window sum has the parity of ``i``.

    ``parity=False`` drops that rule (negative control).
    """
    _check(ell, i)
    return Series(_backtrack(qbound, bressoud_ok(ell, i, parity)), qbound)


def enum_gga_G(ell: int, i: int, qbound: int) -> Series:
    """Goellnitz-Gordon-Andrews family: odd parts not repeated, gap to the part
    ``ell`` places later at least 2 (more than 2 from an even part), and at most
    ``i`` parts of size <= 2."""
    _check(ell, i)
    return Series(_backtrack(qbound, gga_ok(ell, i)), qbound)


def excluded_residues(case: str, ell: int, i: int) -> tuple[int, set[int]]:
    case = case.upper()
    if case == AG:
        m = 2 * ell + 3
    elif case == AB:
        m = 2 * ell + 2
    else:
        raise ValueError(f"unknown case {case!r}")
    return m, {0, (i + 1) % m, (-(i + 1)) % m}


def count_congruence_A(case: str, ell: int, i: int, qbound: int) -> Series:
    """Count partitions into parts avoiding residues 0 and +-(i+1) modulo
    ``2*ell+3`` (AG) or ``2*ell+2`` (AB), by direct enumeration."""
    _check(ell, i)
    m, bad = excluded_residues(case, ell, i)
    counts = _backtrack(qbound, lambda parts: parts[-1] % m not in bad)
    flat: Counter = Counter()
    for (_, n), c in counts.items():
        flat[(0, n)] += c
    return Series(flat, qbound)
