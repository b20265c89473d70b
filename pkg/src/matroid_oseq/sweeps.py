"""Deterministic exhaustive sweeps shared by the CLI and the acceptance tests.

Every sweep returns a plain dict (JSON-ready) whose content depends only on
its arguments.  Work is split into independent units that can be mapped
over a process pool; results are merged in input order.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterator, Sequence

from .complexes import SimplicialComplex, coloops, deletion, h_vector, is_cone, link, nonzero_part
from .enumeration import DEFAULT_MAX_N, enumerate_matroids
from .osequences import icp_interval_test, is_pure_O_sequence
from .search import DEFAULT_CAP, SearchCapExceeded, pure_table
from .stanley import (
    assumption_a_check,
    assumption_b_check,
    ccc_inequalities,
    ccc_test,
    rank3_certificate,
)


def ordered_map(fn: Callable[[Any], Any], items: Sequence[Any], jobs: int = 1) -> list[Any]:
    """``map`` that optionally fans out to processes but keeps input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def pure_sequences(r: int, e: int, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """Every pure O-sequence with h_1 = r and socle degree e (e = 0 gives (1,))."""
    if e == 0:
        return [(1,)]
    return list(pure_table(r, e, cap))


# shifted-sum conjecture -----------------------------------------------------


def ccc_pairs(max_r: int, max_e: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pure pairs (h, h') with h_1 <= max_r, e <= max_e meeting the inequalities."""
    for e in range(1, max_e + 1):
        lower = {r: pure_sequences(r, e - 1, cap) for r in range(1, max_r + 1)}
        for r in range(1, max_r + 1):
            for h in pure_sequences(r, e, cap):
                for r2 in range(1, r + 1) if e > 1 else [1]:
                    for h2 in lower[r2]:
                        if ccc_inequalities(h, h2):
                            yield h, h2


def _ccc_unit(args: tuple[tuple[int, ...], tuple[int, ...], int]) -> dict[str, Any]:
    h, h2, cap = args
    v = ccc_test(h, h2, cap)
    return {"h": list(h), "h2": list(h2), **v.to_json("pure")}


def ccc_sweep(
    max_r: int = 4,
    max_e: int = 3,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    sample: int | None = None,
    seed: int = 0,
) -> dict[str, Any]:
    """Shifted-sum purity over every qualifying pair, or a seeded sample of them."""
    pairs = [(h, h2, cap) for h, h2 in ccc_pairs(max_r, max_e, cap)]
    total = len(pairs)
    if sample is not None and sample < total:
        picks = sorted(random.Random(seed).sample(range(total), sample))
        pairs = [pairs[i] for i in picks]
    rows = ordered_map(_ccc_unit, pairs, jobs)
    failures = [row for row in rows if row["pure"] is False]
    undecided = [row for row in rows if row["pure"] == "undecided"]
    by_method: dict[str, int] = {}
    for row in rows:
        by_method[row["decided_by"]] = by_method.get(row["decided_by"], 0) + 1
    return {
        "sweep": "ccc",
        "max_r": max_r,
        "max_e": max_e,
        "cap": cap,
        "pairs": len(rows),
        "pairs_available": total,
        "sample": sample,
        "seed": seed,
        "distinct_shifted_sums": len({tuple(row["details"]["shifted_sum"]) for row in rows}),
        "decided_by": dict(sorted(by_method.items())),
        "failures": failures,
        "undecided": undecided,
        "truncated": bool(undecided),
        "in_proven_range": max_e <= 3,
    }


# interval property ----------------------------------------------------------


def icp_sweep(max_r: int = 4, max_e: int = 3, cap: int = DEFAULT_CAP) -> dict[str, Any]:
    """Find coordinate gaps among pure sequences and confirm each by search.

    Pure tables are exhaustive, so the pure values at index ``i`` with the
    other coordinates fixed form an interval exactly when the property holds
    there.  Each gap is re-examined with :func:`icp_interval_test`.
    """
    failures = []
    undecided = []
    groups_checked = 0
    for e in range(1, max_e + 1):
        seqs = [h for r in range(1, max_r + 1) for h in pure_sequences(r, e, cap)]
        for i in range(1, e + 1):
            groups: dict[tuple[int, ...], list[int]] = {}
            for h in seqs:
                groups.setdefault(h[:i] + h[i + 1 :], []).append(h[i])
            for key, values in sorted(groups.items()):
                groups_checked += 1
                values.sort()
                for lo, hi in zip(values, values[1:]):
                    if hi - lo <= 1:
                        continue
                    low = list(key[:i]) + [lo] + list(key[i:])
                    high = list(key[:i]) + [hi] + list(key[i:])
                    v = icp_interval_test(low, high, i, cap)
                    if v.outcome is False:
                        failures.append(v.to_json("holds"))
                    elif v.outcome is None:
                        undecided.append(v.to_json("holds"))
    return {
        "sweep": "icp",
        "max_r": max_r,
        "max_e": max_e,
        "cap": cap,
        "groups": groups_checked,
        "failures": failures,
        "undecided": undecided,
        "truncated": bool(undecided),
        "in_proven_range": max_e <= 3,
    }


# matroid enumeration and certificates --------------------------------------


def matroid_stream(max_n: int, max_rank: int | None = None, iso: bool = False, n_cap: int = DEFAULT_MAX_N) -> Iterator[SimplicialComplex]:
    for n in range(1, max_n + 1):
        for k in range(0, min(n, max_rank if max_rank is not None else n) + 1):
            yield from enumerate_matroids(n, k, up_to_isomorphism=iso, max_n=n_cap)


def _certify_unit(args: tuple[SimplicialComplex, int]) -> dict[str, Any]:
    c, cap = args
    try:
        cert = rank3_certificate(c, cap)
    except SearchCapExceeded as exc:
        return {"ok": None, "n": c.n, "facets": c.facet_lists(), "error": str(exc)}
    except Exception as exc:  # reported, never swallowed silently
        return {"ok": False, "n": c.n, "facets": c.facet_lists(), "error": str(exc)}
    ok = cert.verify()
    row: dict[str, Any] = {"ok": ok, "case": cert.case, "nodes": cert.nodes()}
    if not ok:
        row.update(n=c.n, facets=c.facet_lists(), certificate=cert.to_json())
    return row


def enumerate_report(
    n: int,
    rank: int | None = None,
    iso: bool = False,
    certify: bool = False,
    list_matroids: bool = False,
    cap: int = DEFAULT_CAP,
    n_cap: int = DEFAULT_MAX_N,
    jobs: int = 1,
) -> dict[str, Any]:
    ranks = [rank] if rank is not None else list(range(n + 1))
    report: dict[str, Any] = {"n": n, "iso": iso, "ranks": {}}
    failures: list[dict[str, Any]] = []
    undecided: list[dict[str, Any]] = []
    for k in ranks:
        mats = list(enumerate_matroids(n, k, up_to_isomorphism=iso, max_n=n_cap))
        entry: dict[str, Any] = {"count": len(mats)}
        hist: dict[str, int] = {}
        for c in mats:
            key = ",".join(map(str, h_vector(c)))
            hist[key] = hist.get(key, 0) + 1
        entry["h_vectors"] = dict(sorted(hist.items()))
        if list_matroids:
            entry["matroids"] = [c.facet_lists() for c in mats]
        if certify and k <= 3:
            rows = ordered_map(_certify_unit, [(c, cap) for c in mats], jobs)
            cases: dict[str, int] = {}
            for row in rows:
                if row["ok"]:
                    cases[row["case"]] = cases.get(row["case"], 0) + 1
                elif row["ok"] is None:
                    undecided.append(row)
                else:
                    failures.append(row)
            entry["certificates"] = dict(sorted(cases.items()))
        report["ranks"][str(k)] = entry
    if certify:
        report["failures"] = failures
        report["undecided"] = undecided
        report["truncated"] = bool(undecided)
    return report


# assumption probes ----------------------------------------------------------


def _probe_unit(args: tuple[SimplicialComplex, int]) -> dict[str, Any]:
    c, cap = args
    a = assumption_a_check(c)
    row: dict[str, Any] = {"rank": c.rank, "h": nonzero_part(h_vector(c)), "a": a.outcome}
    if not a.passed:
        row["a_counterexample"] = a.counterexample
    b_rows = []
    for v in [x for x in range(1, c.n + 1) if c.vertices >> (x - 1) & 1 and x not in coloops(c)]:
        dele, lk = deletion(c, v), link(c, v)
        if is_cone(dele) or is_cone(lk):
            continue
        hd, hl = tuple(nonzero_part(h_vector(dele))), tuple(nonzero_part(h_vector(lk)))
        try:
            pure_d = is_pure_O_sequence(hd, cap)
            pure_l = is_pure_O_sequence(hl, cap)
            if not (pure_d.passed and pure_l.passed):
                b_rows.append({"vertex": v, "b": "undecided", "reason": "inputs not certified pure"})
                continue
            b = assumption_b_check(hd, hl, cap)
        except SearchCapExceeded:
            b_rows.append({"vertex": v, "b": "undecided"})
            continue
        b_rows.append({"vertex": v, "e": len(hd) - 1, **b.to_json("b")})
    row["b"] = b_rows
    return row


def probe_assumptions(max_n: int = 7, cap: int = DEFAULT_CAP, jobs: int = 1, n_cap: int = DEFAULT_MAX_N) -> dict[str, Any]:
    """Assumptions (a) and (b) over every matroid class with n <= max_n.

    (b) is probed on the deletion/link pairs of non-cone vertices.  Failures
    of (a) in rank <= 3, and of (b) whose shifted sum has socle degree <= 3,
    are flagged as in proven range.
    """
    mats = list(matroid_stream(max_n, iso=True, n_cap=n_cap))
    rows = ordered_map(_probe_unit, [(c, cap) for c in mats], jobs)
    a_fail, b_fail, b_undecided = [], [], []
    b_checked = b_vacuous = 0
    for c, row in zip(mats, rows):
        if row["a"] is False:
            a_fail.append({"n": c.n, "facets": c.facet_lists(), **row["a_counterexample"], "in_proven_range": c.rank <= 3})
        for b in row["b"]:
            b_checked += 1
            if b["b"] is False:
                b_fail.append({"n": c.n, "facets": c.facet_lists(), **b, "in_proven_range": b["e"] <= 3})
            elif b["b"] == "undecided":
                b_undecided.append({"n": c.n, "facets": c.facet_lists(), **b})
            elif b.get("decided_by") == "precondition_unmet":
                b_vacuous += 1
    return {
        "sweep": "assumptions",
        "max_n": max_n,
        "cap": cap,
        "matroids": len(mats),
        "a_failures": a_fail,
        "b_pairs": b_checked,
        "b_vacuous": b_vacuous,
        "b_failures": b_fail,
        "b_undecided": b_undecided,
        "truncated": bool(b_undecided),
    }


# random complexes -----------------------------------------------------------


def random_complexes(count: int, max_n: int = 7, seed: int = 0) -> Iterator[SimplicialComplex]:
    """Seeded random complexes biased towards near-matroids.

    Half are random antichains of subsets; half are random basis families of
    a fixed size (which pass purity and often fail exchange).
    """
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        if rng.random() < 0.5:
            k = rng.randint(0, n)
            pool = list(itertools.combinations(range(1, n + 1), k))
            size = rng.randint(1, len(pool))
            yield SimplicialComplex._make(n, (sum(1 << (x - 1) for x in f) for f in rng.sample(pool, size)))
        else:
            facets = []
            for _ in range(rng.randint(1, 6)):
                facets.append(sum(1 << i for i in range(n) if rng.random() < 0.5))
            yield SimplicialComplex._make(n, facets)
