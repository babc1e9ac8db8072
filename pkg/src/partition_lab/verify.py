"""End-to-end checks tying the enumerator, the multisums and the products together.

Every check returns a :class:`CheckReport`; failing reports carry the first
coefficient (smallest q-exponent, then z-exponent) where the two sides differ.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import multisum as ms
from .enumeration import (
    count_congruence_A,
    enum_bressoud_Bstar,
    enum_gga_G,
    enum_gordon_B,
    gen_P,
    iter_frequency_arrays,
)
from .lattice import AB, AG, HAT_DISPLAY, ArrayShape, display_pattern, is_admissible, is_admissible_k1, load_displays
from .series import Series, dilate, eval_z1, lower, make_monomial, product_side, product_side_gga

PASS = "pass"
FAIL = "fail"

TVECS: dict[str, Callable[[int, int], ms.Vector]] = {"resolved": ms.t_vec, "displayed": ms.t_vec_displayed}


@dataclass
class CheckReport:
    check: str
    params: dict
    status: str
    discrepancy: dict | None = None
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {"check": self.check, "params": dict(sorted(self.params.items())), "status": self.status}
        if self.discrepancy is not None:
            out["discrepancy"] = self.discrepancy
        out["millis"] = self.millis
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "CheckReport":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["check"], data["params"], data["status"], data.get("discrepancy"), data.get("millis", 0))

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        text = f"{self.status.upper():4} {self.check} {params}"
        if self.discrepancy:
            d = self.discrepancy
            text += f"  [{d.get('where', '')}: z^{d['zexp']} q^{d['qexp']} lhs={d['lhs']} rhs={d['rhs']}]"
        return text


def first_discrepancy(a: Series, b: Series) -> dict | None:
    """Least ``(qexp, zexp)`` at which the two series differ (at the common bound)."""
    n = min(a.qbound, b.qbound)
    a, b = lower(a, n), lower(b, n)
    keys = {k for k, _ in a.items()} | {k for k, _ in b.items()}
    diffs = sorted((q, z) for z, q in keys if a[z, q] != b[z, q])
    if not diffs:
        return None
    q, z = diffs[0]
    return {"zexp": z, "qexp": q, "lhs": a[z, q], "rhs": b[z, q]}


def _compare(pairs) -> dict | None:
    """First failing ``(label, lhs, rhs)`` comparison, with its label attached."""
    for label, lhs, rhs in pairs:
        d = first_discrepancy(lhs, rhs)
        if d is not None:
            d["where"] = label
            return d
    return None


def _report(name: str, params: dict, run: Callable[[], dict | None]) -> CheckReport:
    start = time.perf_counter()
    disc = run()
    millis = int(round((time.perf_counter() - start) * 1000))
    return CheckReport(name, params, PASS if disc is None else FAIL, disc, millis)


def _star(case: str) -> bool:
    case = case.upper()
    if case not in (AG, AB):
        raise ValueError(f"unknown case {case!r}")
    return case == AB


# -- functional equations --------------------------------------------------------


def fe_pairs(P: list[Series], case: str) -> list[tuple[str, Series, Series]]:
    """The functional equations for ``P_0..P_ell`` as (label, lhs, rhs) triples."""
    ell = len(P) - 1
    n = P[0].qbound
    zq = lambda j: make_monomial(1, 1, j, n)  # noqa: E731
    pairs = []
    for i in range(ell + 1):
        if i < ell:
            lhs = P[i] - dilate(P[i + 1], 1)
        elif _star(case):
            lhs = P[ell] - dilate(P[ell - 1], 1)
        else:
            lhs = P[ell] - dilate(P[ell], 1)
        rhs = Series({}, n)
        for j in range(1, i + 1):
            rhs = rhs + zq(j) * dilate(P[i - j + 1], j + 1)
        pairs.append((f"fe[{i}]", lhs, rhs))
    return pairs


def rearranged_pairs(T: list[Series], case: str) -> list[tuple[str, Series, Series]]:
    """The rewritten three- and four-term forms, each compared against zero."""
    ell = len(T) - 1
    n = T[0].qbound
    zero = Series({}, n)
    damp = Series({(0, 0): 1, (1, 1): -1}, n)  # 1 - zq
    pairs = [("rearranged[0]", T[0] - dilate(T[1], 1), zero)]
    for i in range(1, ell + 1):
        if i < ell:
            lhs = T[i] - dilate(T[i + 1], 1) - dilate(T[i - 1], 1)
        elif _star(case):
            lhs = T[ell] - 2 * dilate(T[ell - 1], 1)
        else:
            lhs = T[ell] - dilate(T[ell], 1) - dilate(T[ell - 1], 1)
        lhs = lhs + damp * dilate(T[i], 2)
        pairs.append((f"rearranged[{i}]", lhs, zero))
    return pairs


def check_fe_enumerator(case: str, ell: int, qbound: int, hat_rule: str = HAT_DISPLAY) -> CheckReport:
    params = {"case": case.upper(), "ell": ell, "qbound": qbound}
    if hat_rule != HAT_DISPLAY:
        params["hat_rule"] = hat_rule

    def run():
        P = [gen_P(ArrayShape(case, ell, i, hat_rule), qbound) for i in range(ell + 1)]
        return _compare(fe_pairs(P, case) + rearranged_pairs(P, case))

    return _report("fe_enumerator", params, run)


def check_fe_multisum(case: str, ell: int, qbound: int, tvec: str = "resolved") -> CheckReport:
    params = {"case": case.upper(), "ell": ell, "qbound": qbound}
    if tvec != "resolved":
        params["tvec"] = tvec

    def run():
        star = _star(case)
        T = [ms.eval_T(i, ell, qbound, star, TVECS[tvec]) for i in range(ell + 1)]
        return _compare(rearranged_pairs(T, case) + fe_pairs(T, case))

    return _report("fe_multisum", params, run)


# -- sum sides against each other ------------------------------------------------


def check_main_theorem(case: str, ell: int, i: int, qbound: int, tvec: str = "resolved", hat_rule: str = HAT_DISPLAY) -> CheckReport:
    params = {"case": case.upper(), "ell": ell, "i": i, "qbound": qbound}
    if tvec != "resolved":
        params["tvec"] = tvec
    if hat_rule != HAT_DISPLAY:
        params["hat_rule"] = hat_rule

    def run():
        P = gen_P(ArrayShape(case, ell, i, hat_rule), qbound)
        T = ms.eval_T(i, ell, qbound, _star(case), TVECS[tvec])
        return _compare([("enumerator vs multisum", P, T)])

    return _report("main", params, run)


def check_sum_to_product(case: str, ell: int, i: int, qbound: int, hat_rule: str = HAT_DISPLAY) -> CheckReport:
    params = {"case": case.upper(), "ell": ell, "i": i, "qbound": qbound}
    if hat_rule != HAT_DISPLAY:
        params["hat_rule"] = hat_rule

    def run():
        P = eval_z1(gen_P(ArrayShape(case, ell, i, hat_rule), qbound))
        prod = product_side(case, ell, i, qbound)
        cong = count_congruence_A(case, ell, i, qbound)
        return _compare([("enumerator vs product", P, prod), ("product vs congruence count", prod, cong)])

    return _report("product", params, run)


FAMILIES = ("gordon", "bressoud", "gga")


def check_classical(ell: int, i: int, qbound: int, family: str = "gordon", parity: bool = True) -> CheckReport:
    """Refined classical identity for one family; ``gga`` also checks its product."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    params = {"ell": ell, "i": i, "qbound": qbound, "family": family}
    if not parity:
        params["parity"] = False

    def run():
        if family == "gordon":
            return _compare([("partitions vs multisum", enum_gordon_B(ell, i, qbound), ms.eval_classical(i, ell, qbound))])
        if family == "bressoud":
            lhs = enum_bressoud_Bstar(ell, i, qbound, parity)
            return _compare([("partitions vs multisum", lhs, ms.eval_classical(i, ell, qbound, star=True))])
        lhs = enum_gga_G(ell, i, qbound)
        return _compare(
            [
                ("partitions vs multisum", lhs, ms.eval_gga_multisum(ell, i, qbound)),
                ("partitions vs product", eval_z1(lhs), product_side_gga(ell, i, qbound)),
            ]
        )

    return _report("classical", params, run)


# -- symbolic layer ----------------------------------------------------------------


def check_telescope(ell: int) -> CheckReport:
    """All shipped certificates at this ell, plus the vector bookkeeping."""
    params = {"ell": ell}

    def run():
        for name in ms.certificate_names():
            js = range(1, ell) if name.endswith("shift") else [None]
            for j in js:
                claimed, comb, star = ms.certificate(name, ell, j)
                got = ms.expand_combination(comb, star)
                if got != claimed:
                    label = name if j is None else f"{name}[j={j}]"
                    return {"zexp": 0, "qexp": 0, "lhs": str(got), "rhs": str(claimed), "where": label}
        if not ms.check_vector_identities(ell):
            return {"zexp": 0, "qexp": 0, "lhs": False, "rhs": True, "where": "vector identities"}
        return None

    return _report("telescope", params, run)


def check_relations(ell: int, qbound: int, star: bool = False, vmax: int = 3) -> CheckReport:
    """Every atomic relation on the grid ``{0..vmax}^ell`` evaluates to zero."""
    params = {"ell": ell, "qbound": qbound, "star": star, "vmax": vmax}

    def run():
        zero = Series({}, qbound)
        for i in range(1, ell + 1):
            for v in itertools.product(range(vmax + 1), repeat=ell):
                d = first_discrepancy(ms.evaluate(ms.rel_expand(i, v, star), qbound), zero)
                if d is not None:
                    d["where"] = f"rel[{i}]<{','.join(map(str, v))}>"
                    return d
        return None

    return _report("relations", params, run)


def check_fixtures(case: str, ell: int = 4) -> CheckReport:
    """Forbidden-cell patterns against the transcribed ell = 4 displays."""
    params = {"case": case.upper(), "ell": ell}

    def run():
        displays = load_displays()[case.upper()]
        for i in range(ell + 1):
            want = displays[str(i)]
            vmax = max(r["max_value"] for r in want)
            got = display_pattern(ArrayShape(case, ell, i), vmax)
            for r, (g, w) in enumerate(zip(got, want), start=1):
                if g != w:
                    return {"zexp": 0, "qexp": 0, "lhs": g, "rhs": w, "where": f"i={i} row {r}"}
            if len(got) != len(want):
                return {"zexp": 0, "qexp": 0, "lhs": len(got), "rhs": len(want), "where": f"i={i} row count"}
        return None

    return _report("fixtures", params, run)


def check_oracle(case: str, ell: int, i: int, max_weight: int) -> CheckReport:
    """Path-sum programme against the pairwise test on every small array."""
    params = {"case": case.upper(), "ell": ell, "i": i, "max_weight": max_weight}

    def run():
        for fa in iter_frequency_arrays(ArrayShape(case, ell, i), max_weight):
            a, b = is_admissible(fa), is_admissible_k1(fa)
            if a != b:
                return {"zexp": fa.num_parts, "qexp": fa.weight, "lhs": a, "rhs": b, "where": json.dumps(fa.entries())}
        return None

    return _report("oracle", params, run)


# -- suites --------------------------------------------------------------------

CHECKS: dict[str, Callable[..., CheckReport]] = {
    "fe_enumerator": check_fe_enumerator,
    "fe_multisum": check_fe_multisum,
    "main": check_main_theorem,
    "product": check_sum_to_product,
    "classical": check_classical,
    "telescope": check_telescope,
    "relations": check_relations,
    "fixtures": check_fixtures,
    "oracle": check_oracle,
}


def run_suite(config: list[dict]) -> list[CheckReport]:
    """Run ``[{"check": name, "params": {...}}, ...]`` in order."""
    if not isinstance(config, list):
        raise ValueError("config must be a list of check entries")
    jobs = []
    for entry in config:
        if not isinstance(entry, dict) or entry.get("check") not in CHECKS:
            raise ValueError(f"malformed config entry {entry!r}")
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise ValueError(f"params must be a mapping in {entry!r}")
        jobs.append((CHECKS[entry["check"]], params))
    reports = []
    for fn, params in jobs:
        try:
            reports.append(fn(**params))
        except TypeError as exc:
            raise ValueError(f"bad parameters for {fn.__name__}: {exc}") from None
    return reports


def _entry(check: str, **params) -> dict:
    return {"check": check, "params": params}


def case_config(case: str, ell: int, qbound: int, checks: str = "all", i: int | None = None) -> list[dict]:
    """Checks for one (case, ell) at a single truncation order."""
    case = case.upper()
    _star(case)
    wanted = {"fe", "main", "product", "classical", "telescope"} if checks == "all" else {checks}
    unknown = wanted - {"fe", "main", "product", "classical", "telescope"}
    if unknown:
        raise ValueError(f"unknown check selector {checks!r}")
    indices = range(ell + 1) if i is None else [i]
    out = []
    if "fe" in wanted:
        out += [_entry("fe_enumerator", case=case, ell=ell, qbound=qbound), _entry("fe_multisum", case=case, ell=ell, qbound=qbound)]
    if "main" in wanted:
        out += [_entry("main", case=case, ell=ell, i=k, qbound=qbound) for k in indices]
    if "product" in wanted:
        out += [_entry("product", case=case, ell=ell, i=k, qbound=qbound) for k in indices]
    if "classical" in wanted:
        family = "gordon" if case == AG else "bressoud"
        out += [_entry("classical", ell=ell, i=k, qbound=qbound, family=family) for k in indices]
    if "telescope" in wanted:
        out.append(_entry("telescope", ell=ell))
    return out


def default_config() -> list[dict]:
    """The full acceptance suite."""
    cfg = []
    for case in (AG, AB):
        for ell, n in ((2, 16), (3, 16), (4, 12)):
            cfg += [_entry("main", case=case, ell=ell, i=i, qbound=n) for i in range(ell + 1)]
    for case in (AG, AB):
        for ell in (2, 3):
            cfg += [_entry("product", case=case, ell=ell, i=i, qbound=24) for i in range(ell + 1)]
    for case in (AG, AB):
        for ell in (2, 3, 4):
            cfg.append(_entry("fe_enumerator", case=case, ell=ell, qbound=14))
            cfg.append(_entry("fe_multisum", case=case, ell=ell, qbound=20))
    for ell in (2, 3, 4):
        for star in (False, True):
            cfg.append(_entry("relations", ell=ell, qbound=20, star=star))
    cfg += [_entry("telescope", ell=ell) for ell in range(2, 9)]
    for ell in (1, 2, 3):
        for i in range(ell + 1):
            cfg.append(_entry("classical", ell=ell, i=i, qbound=14, family="gordon"))
            cfg.append(_entry("classical", ell=ell, i=i, qbound=14, family="bressoud"))
    for ell in (1, 2):
        cfg += [_entry("classical", ell=ell, i=i, qbound=16, family="gga") for i in range(ell + 1)]
    cfg += [_entry("fixtures", case=case) for case in (AG, AB)]
    for case in (AG, AB):
        cfg += [_entry("oracle", case=case, ell=2, i=i, max_weight=8) for i in range(3)]
    return cfg


def negative_controls() -> list[dict]:
    """Deliberately wrong readings; each entry must fail."""
    return [
        _entry("fe_enumerator", case=AB, ell=4, qbound=14, hat_rule="sentence"),
        _entry("fe_multisum", case=AG, ell=3, qbound=20, tvec="displayed"),
        _entry("classical", ell=2, i=1, qbound=14, family="bressoud", parity=False),
    ]
