"""Multisums S_v, T_i and the formal algebra of three-term relations among them.

For an exponent vector ``v`` of length ``ell``::

    S_v(z, q) = sum_{n >= 0}  z^(w.n) q^(N_1^2 + ... + N_ell^2 + v.n)
                              / ((q;q)_{n_1} ... (q;q)_{n_ell})

with ``N_j = n_j + ... + n_ell``.  The weight ``w`` is the all-ones vector for
the colored-partition sums (z counts ``n_1 + ... + n_ell``) and ``<1, 2, ...,
ell>`` for the classical refinement by number of parts.  The starred variant
replaces the last denominator factor with ``(q^2;q^2)_{n_ell}``.
"""

from __future__ import annotations

import ast
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Sequence

from .series import Series, dense_inverse, dense_mul

Vector = tuple[int, ...]

# -- exponent vectors ----------------------------------------------------------


def t_vec(i: int, ell: int) -> Vector:
    """Entry ``j`` is ``max(0, j - i + 1)``: zeros, then 1 in position i, 2, 3, ..."""
    if not 1 <= i <= ell + 1:
        raise ValueError(f"t index must lie in 1..{ell + 1}")
    return tuple(max(0, j - i + 1) for j in range(1, ell + 1))


def t_vec_displayed(i: int, ell: int) -> Vector:
    """Tuple ending in ``ell - i``, i.e. shifted one place right of :func:`t_vec`.

    Only used as a negative control: it breaks every identity downstream.
    """
    if not 1 <= i <= ell + 1:
        raise ValueError(f"t index must lie in 1..{ell + 1}")
    return tuple(max(0, j - i) for j in range(1, ell + 1))


def e_vec(i: int, ell: int) -> Vector:
    if not 1 <= i <= ell:
        raise ValueError(f"e index must lie in 1..{ell}")
    return tuple(1 if j == i else 0 for j in range(1, ell + 1))


def const_vec(c: int, ell: int) -> Vector:
    return (c,) * ell


def e_sum(a: int, b: int, ell: int) -> Vector:
    """``e_a + ... + e_b`` (zero vector when b < a)."""
    return tuple(1 if a <= j <= b else 0 for j in range(1, ell + 1))


def vadd(*vs: Sequence[int]) -> Vector:
    return tuple(sum(x) for x in zip(*vs))


def vscale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * x for x in v)


def vsub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def check_vector_identities(ell: int, tvec: Callable[[int, int], Vector] = t_vec) -> bool:
    """The vector bookkeeping used when rewriting the functional equations."""
    t = lambda k: tvec(k, ell)  # noqa: E731
    one, two = const_vec(1, ell), const_vec(2, ell)
    ok = t(ell + 1) == const_vec(0, ell)
    ok &= t(1) == vadd(one, t(2))
    ok &= vsub(vscale(2, t(1)), vscale(2, t(2))) == two
    for i in range(1, ell + 1):
        e_before = e_sum(1, i - 1, ell)
        ok &= vscale(2, e_before) == vadd(vsub(two, vscale(2, t(i))), vscale(2, t(i + 1)))
        ok &= vadd(one, t(i)) == vadd(vsub(two, e_before), t(i + 1))
    for i in range(1, ell):
        ok &= vadd(e_sum(1, i, ell), t(i + 1)) == vadd(one, t(i + 2))
    return bool(ok)


# -- series evaluation ---------------------------------------------------------


@lru_cache(maxsize=None)
def _inv_poch(n: int, base: int, qbound: int) -> tuple[int, ...]:
    """Dense truncated ``1 / (q^base; q^base)_n``."""
    poly = [0] * (qbound + 1)
    poly[0] = 1
    for k in range(1, n + 1):
        e = base * k
        if e > qbound:
            break
        for d in range(qbound, e - 1, -1):
            poly[d] -= poly[d - e]
    return tuple(dense_inverse(poly, qbound))


@lru_cache(maxsize=None)
def _denominator(ns: Vector, star: bool, qbound: int) -> tuple[int, ...]:
    """Dense truncated ``1 / prod_j (q;q)_{n_j}``; last factor over q^2 if star."""
    if len(ns) == 1:
        return _inv_poch(ns[0], 2 if star else 1, qbound)
    head = _inv_poch(ns[0], 1, qbound)
    return tuple(dense_mul(list(head), list(_denominator(ns[1:], star, qbound)), qbound))


@lru_cache(maxsize=None)
def _tuples(ell: int, qbound: int, outer: int = 1, inner: int = 1) -> tuple[tuple[Vector, int], ...]:
    """All ``n`` with ``outer*N_1^2 + inner*(N_2^2 + ... + N_ell^2) <= qbound``,
    paired with that quadratic form."""
    out = []

    def rec(j, tail, big_n, acc):
        # fill n_j for j = ell, ..., 1 (innermost sum first)
        if j == 0:
            out.append((tuple(tail), acc))
            return
        coef = outer if j == 1 else inner
        nj = 0
        while True:
            nn = big_n + nj
            val = acc + coef * nn * nn
            if val > qbound:
                break
            rec(j - 1, [nj] + tail, nn, val)
            nj += 1

    rec(ell, [], 0, 0)
    return tuple(out)


def _check_vectors(v: Sequence[int], weight: Sequence[int] | None) -> tuple[Vector, Vector]:
    v = tuple(v)
    w = tuple(weight) if weight is not None else const_vec(1, len(v))
    if len(w) != len(v):
        raise ValueError("weight and v must have the same length")
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    if any(x < 0 for x in v):
        raise ValueError("only non-negative exponent vectors are supported")
    return v, w


def eval_S(v: Sequence[int], qbound: int, *, weight: Sequence[int] | None = None, star: bool = False) -> Series:
    """Truncated ``S_v`` (or the starred ``S*_v``).  ``len(v)`` fixes ell."""
    v, w = _check_vectors(v, weight)
    ell = len(v)
    acc: dict[tuple[int, int], int] = {}
    for ns, quad in _tuples(ell, qbound):
        shift = quad + dot(v, ns)
        if shift > qbound:
            continue
        zexp = dot(w, ns)
        den = _denominator(ns, star, qbound)
        for d in range(qbound - shift + 1):
            c = den[d]
            if c:
                key = (zexp, shift + d)
                acc[key] = acc.get(key, 0) + c
    return Series(acc, qbound)


def eval_T(i: int, ell: int, qbound: int, star: bool = False, tvec: Callable[[int, int], Vector] = t_vec) -> Series:
    """``T_i = S_{t_{i+1}}``: z marks ``n_1 + ... + n_ell``."""
    if not 0 <= i <= ell:
        raise ValueError(f"need 0 <= i <= ell, got i={i}")
    return eval_S(tvec(i + 1, ell), qbound, star=star)


def eval_classical(i: int, ell: int, qbound: int, star: bool = False) -> Series:
    """The classical sum side with x (stored as z) marking the number of parts."""
    if not 0 <= i <= ell:
        raise ValueError(f"need 0 <= i <= ell, got i={i}")
    return eval_S(t_vec(i + 1, ell), qbound, weight=tuple(range(1, ell + 1)), star=star)


@lru_cache(maxsize=None)
def _neg_q_odd(n: int, qbound: int) -> tuple[int, ...]:
    """Dense ``(-q; q^2)_n = prod_{m=1..n} (1 + q^(2m-1))``."""
    poly = [0] * (qbound + 1)
    poly[0] = 1
    for m in range(1, n + 1):
        e = 2 * m - 1
        if e > qbound:
            break
        for d in range(qbound, e - 1, -1):
            poly[d] += poly[d - e]
    return tuple(poly)


def eval_gga_multisum(ell: int, i: int, qbound: int, weight: Sequence[int] | None = None) -> Series:
    """Goellnitz-Gordon-Andrews multisum.

    Default weight ``<1, 2, ..., ell>`` gives the refinement by number of parts;
    pass the all-ones vector for the ``z^(n_1 + ... + n_ell)`` variant.
    """
    if ell < 1 or not 0 <= i <= ell:
        raise ValueError(f"need ell >= 1 and 0 <= i <= ell, got ell={ell}, i={i}")
    w = tuple(weight) if weight is not None else tuple(range(1, ell + 1))
    if len(w) != ell or any(x < 0 for x in w):
        raise ValueError("weight must be a non-negative vector of length ell")
    linear = tuple(2 * max(0, j - i) for j in range(1, ell + 1))  # 2(N_{i+1} + ... + N_ell)
    acc: dict[tuple[int, int], int] = {}
    for ns, quad in _tuples(ell, qbound, 1, 2):
        shift = quad + dot(linear, ns)
        if shift > qbound:
            continue
        big_n1 = sum(ns)
        room = qbound - shift
        num = _neg_q_odd(big_n1, room)
        den = [1] + [0] * room
        for nj in ns:
            den = dense_mul(den, list(_inv_poch(nj, 2, room)), room)
        body = dense_mul(list(num), den, room)
        zexp = dot(w, ns)
        for d, c in enumerate(body):
            if c:
                key = (zexp, shift + d)
                acc[key] = acc.get(key, 0) + c
    return Series(acc, qbound)


# -- formal sums of S-terms ------------------------------------------------------

Key = tuple[int, int, Vector, bool]  # (zexp, qexp, vector, star)


@dataclass(frozen=True)
class FormalSum:
    """Integer combination of terms ``z^a q^b S_v`` kept in canonical form.

    Equality is purely syntactic: two sums are equal only if they list the same
    S-terms with the same monomial coefficients.
    """

    terms: tuple[tuple[Key, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[int, int, int, Sequence[int], bool]]) -> "FormalSum":
        """From ``(coefficient, zexp, qexp, vector, star)`` entries."""
        acc: Counter = Counter()
        for c, a, b, v, star in items:
            if a < 0 or b < 0:
                raise ValueError("monomial exponents must be non-negative")
            acc[(a, b, tuple(v), bool(star))] += c
        return cls._canon(acc)

    @classmethod
    def _canon(cls, acc) -> "FormalSum":
        items = sorted((k, c) for k, c in acc.items() if c)
        lengths = {len(k[2]) for k, _ in items}
        if len(lengths) > 1:
            raise ValueError("all vectors in a formal sum must have the same length")
        return cls(tuple(items))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        acc: Counter = Counter(dict(self.terms))
        for k, c in other.terms:
            acc[k] += c
        return FormalSum._canon(acc)

    def __neg__(self) -> "FormalSum":
        return FormalSum(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __rmul__(self, c: int) -> "FormalSum":
        return FormalSum._canon(Counter({k: c * v for k, v in self.terms}))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def length(self) -> int | None:
        return len(self.terms[0][0][2]) if self.terms else None

    def vectors(self) -> set[Vector]:
        return {k[2] for k, _ in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for (a, b, v, star), c in self.terms:
            mono = "".join(["z" if a == 1 else f"z^{a}" if a else "", f"q^{b}" if b else ""])
            name = ("S*" if star else "S") + "<" + ",".join(map(str, v)) + ">"
            out.append(f"{c:+d}{('*' + mono) if mono else ''}*{name}")
        return " ".join(out)


def evaluate(fs: FormalSum, qbound: int) -> Series:
    """Expand a formal sum into a truncated series."""
    acc: dict[tuple[int, int], int] = {}
    cache: dict[tuple[Vector, bool], Series] = {}
    for (a, b, v, star), c in fs.terms:
        if b > qbound:
            continue
        s = cache.get((v, star))
        if s is None:
            s = cache[(v, star)] = eval_S(v, qbound, star=star)
        for (za, qb), val in s.items():
            if qb + b <= qbound:
                key = (za + a, qb + b)
                acc[key] = acc.get(key, 0) + c * val
    return Series(acc, qbound)


def rel_expand(i: int, v: Sequence[int], star: bool = False) -> FormalSum:
    """The atomic relation obtained by peeling one factor off the i-th denominator.

    Plain, or starred with ``i < ell``::

        S_v - S_{v+e_i} - z q^{v_i + i} S_{v + 2 t_1 - 2 t_{i+1}}

    Starred with ``i == ell``::

        S*_v - S*_{v+2e_ell} - z q^{v_ell + ell} S*_{v + 2 t_1}
    """
    v = tuple(v)
    ell = len(v)
    if not 1 <= i <= ell:
        raise ValueError(f"relation index must lie in 1..{ell}")
    if star and i == ell:
        step = vscale(2, e_vec(ell, ell))
    else:
        step = e_vec(i, ell)
    jump = vsub(vscale(2, t_vec(1, ell)), vscale(2, t_vec(i + 1, ell)))
    return FormalSum.of(
        [
            (1, 0, 0, v, star),
            (-1, 0, 0, vadd(v, step), star),
            (-1, 1, v[i - 1] + i, vadd(v, jump), star),
        ]
    )


def expand_combination(combination: Iterable[tuple[int, int, Sequence[int]]], star: bool = False) -> FormalSum:
    total = FormalSum()
    for sign, i, v in combination:
        total = total + sign * rel_expand(i, v, star)
    return total


def verify_telescope(claimed: FormalSum, combination: Sequence[tuple[int, int, Sequence[int]]], star: bool | None = None) -> bool:
    """Does the signed sum of atomic relations equal ``claimed`` term for term?"""
    if star is None:
        stars = {k[3] for k, _ in claimed.terms}
        star = stars.pop() if len(stars) == 1 else False
    lengths = {len(v) for _, _, v in combination}
    if claimed.length is not None:
        lengths.add(claimed.length)
    if len(lengths) > 1:
        raise ValueError("vector length mismatch between claim and combination")
    return expand_combination(combination, star) == claimed


# -- certificate data ------------------------------------------------------------

_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.USub, ast.Constant, ast.Name, ast.Load)


def _int_expr(text: str | int, env: dict[str, int]) -> int:
    if isinstance(text, int):
        return text
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"unsupported index expression {text!r}")
        if isinstance(node, ast.Name) and node.id not in env:
            raise ValueError(f"unknown name {node.id!r} in {text!r}")
    return eval(compile(tree, "<index>", "eval"), {"__builtins__": {}}, dict(env))


def build_vector(expr: list, ell: int, env: dict[str, int]) -> Vector:
    """Vector from primitives ``[coef, "e", a]``, ``[coef, "esum", a, b]``,
    ``[coef, "t", a]`` and ``[coef, "const", c]``."""
    env = dict(env, ell=ell)
    total = const_vec(0, ell)
    for coef, kind, *args in expr:
        vals = [_int_expr(a, env) for a in args]
        if kind == "e":
            piece = e_vec(vals[0], ell)
        elif kind == "esum":
            piece = e_sum(vals[0], vals[1], ell)
        elif kind == "t":
            piece = t_vec(vals[0], ell)
        elif kind == "const":
            piece = const_vec(vals[0], ell)
        else:
            raise ValueError(f"unknown vector primitive {kind!r}")
        total = vadd(total, vscale(_int_expr(coef, env), piece))
    return total


@lru_cache(maxsize=None)
def _certificate_data() -> dict:
    text = resources.files("partition_lab").joinpath("data/certificates.json").read_text()
    return json.loads(text)


def certificate_names() -> list[str]:
    return sorted(_certificate_data())


def certificate(name: str, ell: int, j: int | None = None) -> tuple[FormalSum, list[tuple[int, int, Vector]], bool]:
    """Instantiate a shipped telescoping certificate.

    Returns ``(claimed, combination, star)``; certificates indexed by ``j``
    require it.
    """
    entry = _certificate_data()[name]
    env = {"ell": ell}
    if "j" in entry.get("params", []):
        if j is None:
            raise ValueError(f"certificate {name!r} needs j")
        lo, hi = (_int_expr(x, env) for x in entry["j_range"])
        if not lo <= j <= hi:
            raise ValueError(f"j must lie in {lo}..{hi}")
        env["j"] = j
    star = bool(entry["star"])
    combination = []
    for block in entry["combination"]:
        var = block["index"]
        lo, hi = (_int_expr(x, env) for x in block["range"])
        for k in range(lo, hi + 1):
            local = dict(env, **{var: k})
            i = _int_expr(block["i"], local)
            combination.append((block["sign"], i, build_vector(block["vector"], ell, local)))
    claimed = FormalSum.of(
        (c, a, b, build_vector(term["vector"], ell, env), star)
        for term in entry["claimed"]
        for c, a, b in term["monomials"]
    )
    return claimed, combination, star
