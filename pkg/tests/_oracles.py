"""Slow, independent reference computations used to freeze expected values."""

import itertools


def partitions(n, maxpart=None):
    """All partitions of n as weakly decreasing tuples."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def poly_product(factors, n):
    """Multiply out the given dense polynomials, truncated at degree n."""
    out = [1] + [0] * n
    for f in factors:
        new = [0] * (n + 1)
        for a, x in enumerate(out):
            for b, y in enumerate(f):
                if a + b <= n:
                    new[a + b] += x * y
        out = new
    return out


def residue_count(m, bad, n):
    """Number of partitions of 0..n into parts whose residue mod m avoids ``bad``."""
    return [sum(1 for p in partitions(k) if all(x % m not in bad for x in p)) for k in range(n + 1)]


def array_rows(case, ell, i):
    """Row count and a per-row flag 'holds odd values', from first principles."""
    rows = 2 * ell if case == "AG" else 2 * ell - 1
    first_odd = case == "AG" or i % 2 == 1
    return rows, [(r % 2 == 1) == first_odd for r in range(1, rows + 1)]


def all_paths(case, ell, i, width):
    """Every column sequence of a full downward path, columns 1..width."""
    rows, odd = array_rows(case, ell, i)
    starts = [c for c in range(1, width + 1) if (c % 2 == 1) == odd[0]]
    paths = [[c] for c in starts]
    for r in range(1, rows):
        paths = [p + [p[-1] + d] for p in paths for d in (-1, 1) if 1 <= p[-1] + d <= width]
    return paths


def brute_max_path(case, ell, i, hat_row, entries):
    """Maximum path sum by listing every path; entries map (row, value) -> mult."""
    rows, odd = array_rows(case, ell, i)
    width = max([v + 2 for _, v in entries] + [2]) + 2
    hat_col = 1 if odd[hat_row - 1] else 2
    best = 0
    for path in all_paths(case, ell, i, width):
        total = 1 if path[hat_row - 1] == hat_col else 0
        for r, c in enumerate(path, start=1):
            total += entries.get((r, c - 2), 0)
        best = max(best, total)
    return best


def multisum_bruteforce(ell, v, n, weight=None, star=False):
    """S_v coefficients {(zexp, qexp): c} by summing over n-tuples with
    denominators expanded as partition counts into bounded numbers of parts."""
    weight = weight or [1] * ell
    out = {}
    rng = range(0, int(n ** 0.5) + 2)
    for ns in itertools.product(rng, repeat=ell):
        big = [sum(ns[j:]) for j in range(ell)]
        shift = sum(b * b for b in big) + sum(a * b for a, b in zip(v, ns))
        if shift > n:
            continue
        # 1/(q;q)_m = generating function of partitions into at most m parts
        dens = []
        for j, m in enumerate(ns):
            base = 2 if star and j == ell - 1 else 1
            dens.append([sum(1 for p in partitions(k // base) if len(p) <= m) if k % base == 0 else 0 for k in range(n + 1)])
        body = poly_product(dens, n - shift)
        z = sum(a * b for a, b in zip(weight, ns))
        for d, c in enumerate(body):
            if c:
                out[(z, shift + d)] = out.get((z, shift + d), 0) + c
    return out
