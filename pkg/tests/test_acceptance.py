"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest; the
lines are collected and repeated in the pytest terminal summary.
"""

import os
import random
import subprocess
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from instances import random_pullback_instance  # noqa: E402
from hgroups.actions import (  # noqa: E402
    center,
    coset_groupoid,
    free_loop_groupoid,
    verify_action_pullback,
)
from hgroups.catalog import catalog  # noqa: E402
from hgroups.cohomology import (  # noqa: E402
    Cochain,
    GModule,
    central_extension,
    coboundary,
    cohomology_group,
    extension_class,
)
from hgroups.constructions import (  # noqa: E402
    alternating_group,
    direct_power,
    factor_permutation_action,
    klein_point_action,
    partition_reconstruction,
    semidirect_product,
    wreath_product,
)
from hgroups.covers import (  # noqa: E402
    deck_transformations,
    galois_correspondence_report,
    universal_cover,
)
from hgroups.deloop import (  # noqa: E402
    abelianization,
    eckmann_hilton_sample,
    eckmann_hilton_search,
    hom_group,
    hom_set,
)
from hgroups.group import are_isomorphic, cyclic_group, klein_four_group, symmetric_group  # noqa: E402
from hgroups.groupoid import are_equivalent, homotopy_fiber  # noqa: E402

RESULTS = []


def tuples(G):
    return [p.images for p in G.elements]


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_c1_eckmann_hilton_exhaustive():
    t = time.perf_counter()
    reports = eckmann_hilton_search(3)
    elapsed = time.perf_counter() - t
    size3 = reports[-1]
    oracle = oracles.eckmann_hilton_scan(3)
    sampled, inter4, bad4 = eckmann_hilton_sample(size=4, samples=1_000_000, seed=0)
    total = time.perf_counter() - t
    ok = (
        all(r.counterexamples == 0 for r in reports)
        and size3.operations_per_unit ** 2 == 6561
        and (size3.pairs, size3.interchange_pairs, size3.counterexamples) == oracle
        and bad4 == 0
        and total < 60
    )
    report(
        1,
        ok,
        f"sizes 1..3: {sum(r.pairs for r in reports)} pairs, "
        f"{sum(r.interchange_pairs for r in reports)} satisfy interchange, "
        f"{sum(r.counterexamples for r in reports)} counterexamples "
        f"(size 3: {size3.operations_per_unit ** 2} pairs per unit, oracle agrees); "
        f"size 4 sampled {sampled} pairs, {inter4} interchange, {bad4} counterexamples; "
        f"{elapsed:.2f}s exhaustive, {total:.1f}s total",
    )


def test_c2_product_identities():
    A3 = alternating_group(3).as_group()
    S3 = symmetric_group(3)
    V4 = klein_four_group()
    A4, S4 = catalog()["A4"], symmetric_group(4)
    S2 = symmetric_group(2)
    checks = {}
    checks["A4 = V4 x| A3"] = are_isomorphic(A4, semidirect_product(klein_point_action(A3, V4)).group)
    checks["S4 = V4 x| S3"] = are_isomorphic(S4, semidirect_product(klein_point_action(S3, V4)).group)
    checks["S4 = ker x| S3 (partitions)"] = are_isomorphic(S4, partition_reconstruction().group)
    checks["A4 = ker x| A3 (partitions)"] = are_isomorphic(A4, partition_reconstruction(alternating=True).group)
    W = wreath_product(S2, 3).group
    sd = semidirect_product(factor_permutation_action(S3, S2, 3, power=direct_power(S2, 3))).group
    checks["S2 wr S3 = S2^3 x| S3"] = are_isomorphic(W, sd)
    witnesses = all(w is not None and w.is_isomorphism() for w in checks.values())
    report(
        2,
        witnesses and W.order == 48,
        ", ".join(f"{k}: {'witness' if v is not None else 'none'}" for k, v in checks.items())
        + f"; |S2 wr S3| = {W.order}",
    )


def test_c3_galois_correspondence():
    t = time.perf_counter()
    expected = {"S3": 4, "S4": 11}
    parts, ok = [], True
    for name in ["S3", "C4", "D4", "Q8", "A4", "S4"]:
        G = catalog()[name]
        r = galois_correspondence_report(G)
        oracle = oracles.subgroup_class_count(tuples(G), G.degree)
        ok &= r.verified and len(r.rows) == oracle and expected.get(name, oracle) == oracle
        ok &= all(row.normal == row.galois for row in r.rows)
        parts.append(f"{name} {len(r.rows)} classes (oracle {oracle})")
    elapsed = time.perf_counter() - t
    ok &= elapsed < 120
    report(3, ok, "; ".join(parts) + f"; round trips, normal<->Galois 100%; {elapsed:.1f}s")


def test_c4_deck_transformations():
    groups = catalog(max_order=24)
    bad = [n for n, G in groups.items() if are_isomorphic(deck_transformations(universal_cover(G)), G) is None]
    report(4, not bad, f"Deck(universal cover) = G for {len(groups) - len(bad)}/{len(groups)} catalog groups of order <= 24")


def test_c5_fiber_corollary():
    groups = catalog(max_order=12)
    count, bad = 0, 0
    for H in groups.values():
        for G in groups.values():
            if G.order % H.order:
                continue
            for f in hom_set(H, G):
                if f.is_injective():
                    count += 1
                    if are_equivalent(coset_groupoid(f), homotopy_fiber(f)) is None:
                        bad += 1
    report(5, bad == 0 and count > 0, f"coset groupoid ~ homotopy fiber for {count - bad}/{count} injective homs")


def test_c6_action_pullback():
    rng = random.Random(2024)
    fails = []
    for i in range(100):
        name, f, alpha = random_pullback_instance(rng)
        if not verify_action_pullback(f, alpha):
            fails.append((i, name))
    report(6, not fails, f"100 random (f, alpha) instances, {len(fails)} failures")


def test_c7_free_loop_space():
    groups = catalog(max_order=24)
    ok = True
    for G in groups.values():
        X = free_loop_groupoid(G)
        els = tuples(G)
        comps = X.connected_components()
        ok &= len(comps) == len(oracles.conjugacy_classes(els))
        for b in comps:
            brute = oracles.centralizer(els, els[b[0]])
            ok &= X.automorphism_group(b[0]).order == len(brute)
            ok &= are_isomorphic(X.automorphism_group(b[0]), G.centralizer(b[0]).as_group()) is not None
    s3 = len(free_loop_groupoid(groups["S3"]).connected_components())
    s4 = len(free_loop_groupoid(groups["S4"]).connected_components())
    ok &= (s3, s4) == (3, 5)
    report(7, ok, f"components = conjugacy classes on {len(groups)} groups (S3: {s3}, S4: {s4}); vertex groups = centralizers")


def test_c8_center():
    groups = catalog(max_order=24)
    mismatched = [
        n for n, G in groups.items() if {p.images for p in center(G).members} != oracles.center(tuples(G))
    ]
    zs3, zd4 = center(groups["S3"]).order, center(groups["D4"])
    ok = not mismatched and zs3 == 1 and are_isomorphic(zd4.as_group(), cyclic_group(2)) is not None
    report(8, ok, f"center = commuting set on {len(groups) - len(mismatched)}/{len(groups)} groups; |Z(S3)| = {zs3}, Z(D4) = C2")


def test_c9_cohomology():
    t = time.perf_counter()
    rng = random.Random(9)
    C2, C3, C4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    V4 = klein_four_group()
    S3 = symmetric_group(3)
    modules = [
        GModule(C2, C2),
        GModule(C3, C3),
        GModule(S3, C2),
        GModule(V4, C3),
        GModule(C2, C3, [tuple(range(3)), tuple(C3.inverses)]),
    ]
    dd_fail = 0
    for i in range(1000):
        M = modules[i % len(modules)]
        k = i % 3
        c = Cochain(M, k, [rng.randrange(M.coefficients.order) for _ in range(M.group.order ** k)])
        if not coboundary(coboundary(c)).is_zero():
            dd_fail += 1
    H22 = cohomology_group(GModule(C2, C2), 2)
    exts = [central_extension(C2, C2, r).group for r in H22.representatives]
    ext_ok = sorted(
        ["C4" if are_isomorphic(E, C4) else "V4" if are_isomorphic(E, V4) else "?" for E in exts]
    ) == ["C4", "V4"]
    h23 = cohomology_group(GModule(C2, C3), 2).order
    h1_ok = True
    for G in catalog(max_order=12).values():
        Q, _ = abelianization(G)
        for A in (C2, C3, C4):
            h1_ok &= cohomology_group(GModule(G, A), 1).order == hom_group(Q, A).order
    small = {"C1": cyclic_group(1), "C2": C2, "C3": C3, "C4": C4, "V4": V4}
    rt_pairs = rt_fail = 0
    for G in small.values():
        for A in small.values():
            H = cohomology_group(GModule(G, A), 2)
            for i, rep in enumerate(H.representatives):
                E = central_extension(G, A, rep)
                rt_pairs += 1
                if H.class_index(extension_class(E.group, E.inclusion, E.projection)) != i:
                    rt_fail += 1
    elapsed = time.perf_counter() - t
    ok = dd_fail == 0 and H22.order == 2 and ext_ok and h23 == 1 and h1_ok and rt_fail == 0 and elapsed < 60
    report(
        9,
        ok,
        f"d(d c) = 0 on 1000 random cochains ({dd_fail} failures); |H2(C2,C2)| = {H22.order} "
        f"with extensions {{C4, V4}}; |H2(C2,C3)| = {h23}; H1 = Hom(G_ab, A) on catalog; "
        f"round trip on {rt_pairs} classes, {rt_fail} failures; {elapsed:.1f}s",
    )


ACCEPTANCE_INPUTS = [
    ["order", "C1"],
    ["order", "Oh"],
    ["elements", "S3"],
    ["conj-classes", "S4"],
    ["center", "D4"],
    ["abelianize", "S4"],
    ["hom-set", "C2", "S3"],
    ["hom-classes", "C2", "S3"],
    ["hom-group", "C6", "C4"],
    ["fiber", "A3", "S3"],
    ["coset-groupoid", "C2", "S3"],
    ["loop-groupoid", "S3"],
    ["fixed-points", "D4", "--action", "adjoint"],
    ["orbits", "S4", "--action", "adjoint"],
    ["semidirect", "S3", "S2^3"],
    ["semidirect", "A3", "V4", "--by", "points"],
    ["direct", "C2", "C3"],
    ["wreath", "S2", "3"],
    ["sign", "4"],
    ["alt", "4"],
    ["cyclic-orderings", "5"],
    ["partitions"],
    ["covers", "S3"],
    ["covers", "S4"],
    ["deck", "S3", "--subgroup", "(0 1)"],
    ["cohomology", "C2", "C2"],
    ["cohomology", "S3", "C2", "--degree", "1"],
    ["extension", "C2", "C2", "--class", "1"],
    ["eckmann-hilton", "--max-size", "2"],
    ["isomorphic", "wreath S2 3", "semidirect S3 on S2^3"],
    ["hom-group", "S3", "C2"],
    ["order", "Q9"],
]

_RUNNER = """
import io, json, sys
from hgroups.cli import main
for argv in json.loads(sys.argv[1]):
    for fmt in ("text", "json"):
        out = io.StringIO()
        code = main(["--format", fmt] + argv, stdout=out)
        sys.stdout.write(f"== {argv} {fmt} exit={code}\\n" + out.getvalue())
"""


def test_c10_determinism():
    import json

    outputs = []
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        p = subprocess.run(
            [sys.executable, "-c", _RUNNER, json.dumps(ACCEPTANCE_INPUTS)],
            capture_output=True,
            env=env,
            check=True,
        )
        outputs.append(p.stdout)
    verbs = {argv[0] for argv in ACCEPTANCE_INPUTS}
    from hgroups.cli import VERBS

    ok = outputs[0] == outputs[1] == outputs[2] and verbs == set(VERBS)
    report(
        10,
        ok,
        f"{len(ACCEPTANCE_INPUTS)} inputs x 2 formats covering all {len(VERBS)} verbs, "
        f"byte-identical across 3 runs with different hash seeds ({len(outputs[0])} bytes)",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
