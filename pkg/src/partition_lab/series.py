"""Truncated bivariate power series in z and q with exact integer coefficients.

A :class:`Series` stores a sparse map ``(zexp, qexp) -> coefficient`` and a
truncation order ``qbound``: every coefficient of ``q**b`` with ``b <= qbound``
is exact, nothing above it is tracked.  Values are immutable.

Binary operations on series with different bounds first lower both operands to
the smaller bound.  Division is only offered by units (constant term +-1).
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "Series",
    "make_monomial",
    "zero",
    "one",
    "add",
    "sub",
    "mul",
    "neg",
    "dilate",
    "invert",
    "lower",
    "coeff",
    "eval_z1",
    "eq_series",
    "poch_inf",
    "product_side",
    "product_side_gga",
    "from_univariate",
    "dense_mul",
    "dense_inverse",
    "to_json",
    "from_json",
]


class Series:
    __slots__ = ("qbound", "_c", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = (), qbound: int = 0):
        if qbound < 0:
            raise ValueError("qbound must be non-negative")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[tuple[int, int], int] = {}
        for (a, b), v in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in term z^{a} q^{b}")
            if b > qbound or not v:
                continue
            key = (a, b)
            c[key] = c.get(key, 0) + v
        self._c = {k: v for k, v in c.items() if v}
        self.qbound = qbound
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, qbound: int) -> "Series":
        # trusted constructor: c is already canonical and truncated
        s = object.__new__(cls)
        s._c = c
        s.qbound = qbound
        s._hash = None
        return s

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[int, int, int]]:
        """``(coefficient, zexp, qexp)`` triples sorted by ``(qexp, zexp)``."""
        return [(v, a, b) for (a, b), v in sorted(self._c.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def items(self):
        return self._c.items()

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._c.get(key, 0)

    def max_zexp(self) -> int:
        return max((a for a, _ in self._c), default=0)

    def univariate(self) -> list[int]:
        """Dense list of q-coefficients after setting z = 1."""
        out = [0] * (self.qbound + 1)
        for (_, b), v in self._c.items():
            out[b] += v
        return out

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        return add(self, _coerce(other, self.qbound))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self.qbound))

    def __rsub__(self, other):
        return sub(_coerce(other, self.qbound), self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Series._raw({}, self.qbound)
            return Series._raw({k: v * other for k, v in self._c.items()}, self.qbound)
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return neg(self)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.qbound == other.qbound and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.qbound, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"Series({format_series(self)})"

    def __str__(self):
        return format_series(self)


def _coerce(x, qbound: int) -> Series:
    if isinstance(x, Series):
        return x
    if isinstance(x, int):
        return make_monomial(x, 0, 0, qbound)
    raise TypeError(f"cannot combine Series with {type(x).__name__}")


def make_monomial(coefficient: int, zexp: int, qexp: int, qbound: int) -> Series:
    if zexp < 0 or qexp < 0:
        raise ValueError("exponents must be non-negative")
    if not coefficient or qexp > qbound:
        return Series._raw({}, qbound)
    return Series._raw({(zexp, qexp): coefficient}, qbound)


def zero(qbound: int) -> Series:
    return Series._raw({}, qbound)


def one(qbound: int) -> Series:
    return make_monomial(1, 0, 0, qbound)


def lower(s: Series, qbound: int) -> Series:
    """Re-truncate ``s`` at a smaller (or equal) bound."""
    if qbound >= s.qbound:
        return s
    return Series._raw({k: v for k, v in s._c.items() if k[1] <= qbound}, qbound)


def _common(a: Series, b: Series) -> tuple[Series, Series, int]:
    n = min(a.qbound, b.qbound)
    return lower(a, n), lower(b, n), n


def add(a: Series, b: Series) -> Series:
    a, b, n = _common(a, b)
    c = dict(a._c)
    for k, v in b._c.items():
        w = c.get(k, 0) + v
        if w:
            c[k] = w
        else:
            c.pop(k, None)
    return Series._raw(c, n)


def neg(a: Series) -> Series:
    return Series._raw({k: -v for k, v in a._c.items()}, a.qbound)


def sub(a: Series, b: Series) -> Series:
    return add(a, neg(b))


def mul(a: Series, b: Series) -> Series:
    a, b, n = _common(a, b)
    if not a._c or not b._c:
        return Series._raw({}, n)
    bt = sorted(b._c.items(), key=lambda kv: kv[0][1])
    c: dict[tuple[int, int], int] = {}
    for (za, qa), va in a._c.items():
        room = n - qa
        for (zb, qb), vb in bt:
            if qb > room:
                break
            key = (za + zb, qa + qb)
            c[key] = c.get(key, 0) + va * vb
    return Series._raw({k: v for k, v in c.items() if v}, n)


def dilate(s: Series, d: int) -> Series:
    """Substitute z -> z*q**d; terms pushed past the bound are dropped."""
    if d < 0:
        raise ValueError("dilation must be non-negative")
    if d == 0:
        return s
    n = s.qbound
    return Series._raw({(a, b + a * d): v for (a, b), v in s._c.items() if b + a * d <= n}, n)


def invert(s: Series) -> Series:
    """Truncated inverse of a series whose constant term is +-1.

    Every other term must carry a positive power of q, otherwise the inverse is
    not determined by finitely many q-orders.
    """
    c0 = s._c.get((0, 0), 0)
    if c0 not in (1, -1):
        raise ValueError("only series with constant term +-1 are invertible")
    if any(b == 0 and a != 0 for a, b in s._c):
        raise ValueError("non-constant terms at q^0 make the inverse non-truncatable")
    n = s.qbound
    # group by q-degree: level[d] = {zexp: coeff}
    level: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    for (a, b), v in s._c.items():
        level[b][a] = v
    out: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    out[0] = {0: c0}  # 1/c0 == c0 for c0 = +-1
    for d in range(1, n + 1):
        acc: dict[int, int] = {}
        for k in range(1, d + 1):
            lk = level[k]
            if not lk:
                continue
            for za, va in lk.items():
                for zb, vb in out[d - k].items():
                    acc[za + zb] = acc.get(za + zb, 0) + va * vb
        out[d] = {z: -c0 * v for z, v in acc.items() if v}
    return Series._raw({(z, d): v for d, lv in enumerate(out) for z, v in lv.items()}, n)


def coeff(s: Series, zexp: int, qexp: int) -> int:
    return s._c.get((zexp, qexp), 0)


def eval_z1(s: Series) -> Series:
    """Set z = 1."""
    return from_univariate(s.univariate(), s.qbound)


def eq_series(a: Series, b: Series) -> bool:
    """Canonical-form equality at the common (smaller) bound."""
    a, b, _ = _common(a, b)
    return a._c == b._c


# -- dense univariate helpers (z-free series as coefficient lists) -----------


def from_univariate(coeffs: Iterable[int], qbound: int) -> Series:
    return Series._raw({(0, b): v for b, v in enumerate(coeffs) if v and b <= qbound}, qbound)


def dense_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Product of two dense q-series truncated at q**n."""
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def dense_inverse(a: list[int], n: int) -> list[int]:
    if a[0] not in (1, -1):
        raise ValueError("constant term must be +-1")
    c0 = a[0]
    out = [0] * (n + 1)
    out[0] = c0
    for d in range(1, n + 1):
        acc = 0
        for k in range(1, min(d, len(a) - 1) + 1):
            if a[k]:
                acc += a[k] * out[d - k]
        out[d] = -c0 * acc
    return out


@lru_cache(maxsize=None)
def _poch_dense(start: int, step: int, n: int) -> tuple[int, ...]:
    out = [0] * (n + 1)
    out[0] = 1
    e = start
    while e <= n:
        # multiply in place by (1 - q^e), high degrees first
        for d in range(n, e - 1, -1):
            out[d] -= out[d - e]
        e += step
    return tuple(out)


@lru_cache(maxsize=None)
def _euler_inverse(n: int) -> tuple[int, ...]:
    return tuple(dense_inverse(list(_poch_dense(1, 1, n)), n))


def poch_inf(start: int, step: int, qbound: int) -> Series:
    """Truncated ``prod_{j>=0} (1 - q**(start + j*step))``."""
    if start <= 0:
        raise ValueError("start must be positive: (1;q) has no truncated inverse")
    if step < 1:
        raise ValueError("step must be >= 1")
    return from_univariate(_poch_dense(start, step, qbound), qbound)


def _check_range(ell: int, i: int) -> None:
    if ell < 1 or not 0 <= i <= ell:
        raise ValueError(f"need ell >= 1 and 0 <= i <= ell, got ell={ell}, i={i}")


def _product_over_euler(factors: list[tuple[int, int]], n: int) -> Series:
    acc = list(_euler_inverse(n))
    for start, step in factors:
        acc = dense_mul(acc, list(_poch_dense(start, step, n)), n)
    return from_univariate(acc, n)


def product_side(case: str, ell: int, i: int, qbound: int) -> Series:
    """Infinite-product side of the Andrews-Gordon (``AG``) or Andrews-Bressoud
    (``AB``) identity, divided by ``(q;q)_inf``."""
    _check_range(ell, i)
    case = case.upper()
    if case == "AG":
        m = 2 * ell + 3
        factors = [(i + 1, m), (2 * ell + 2 - i, m), (m, m)]
    elif case == "AB":
        m = 2 * ell + 2
        factors = [(i + 1, m), (2 * ell + 1 - i, m), (m, m)]
    else:
        raise ValueError(f"unknown case {case!r}")
    return _product_over_euler(factors, qbound)


def product_side_gga(ell: int, i: int, qbound: int) -> Series:
    """Goellnitz-Gordon-Andrews product side divided by ``(q;q)_inf``."""
    _check_range(ell, i)
    m = 4 * ell + 4
    factors = [(2, 4), (2 * i + 1, m), (4 * ell - 2 * i + 3, m), (m, m)]
    return _product_over_euler(factors, qbound)


# -- text / JSON ---------------------------------------------------------------


def format_series(s: Series) -> str:
    parts = []
    for v, a, b in s.terms():
        mono = []
        if a:
            mono.append("z" if a == 1 else f"z^{a}")
        if b:
            mono.append("q" if b == 1 else f"q^{b}")
        body = "*".join(mono)
        if not body:
            parts.append(str(v))
        elif v == 1:
            parts.append(body)
        elif v == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{v}*{body}")
    text = " + ".join(parts).replace("+ -", "- ") if parts else "0"
    return f"{text} + O(q^{s.qbound + 1})"


def to_json(s: Series) -> dict:
    return {"qbound": s.qbound, "terms": [list(t) for t in s.terms()]}


def from_json(data: dict | str) -> Series:
    if isinstance(data, str):
        data = json.loads(data)
    return Series((((a, b), c) for c, a, b in data["terms"]), data["qbound"])
