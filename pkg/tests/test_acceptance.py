"""Acceptance suite: every criterion gets one printed pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The slow sweeps are
seeded and deterministic; the stated time bounds are asserted where the
criterion carries one.
"""

import itertools
import random
import time
from pathlib import Path

import evolalg as ev
from evolalg import classify, params_equivalent
from evolalg.checks import nil_nonassoc_certificate
from evolalg.cli import random_algebra, table_lines
from evolalg.monomial import monomial_witness

from conftest import (
    elements_of,
    fp_all_cubes_zero,
    fp_pa4_violation,
    monomial_disguise,
    naive_multiply,
    random_fp_matrix,
)

GOLDEN = Path(__file__).parent / "golden"
Q_GRID = ["1", "2", "3", "-1"]


def report(num, name, ok, elapsed):
    print(f"\nACCEPTANCE {num} ({name}): {'PASS' if ok else 'FAIL'} "
          f"[{elapsed:.1f}s]")
    assert ok, f"criterion {num} ({name}) failed"


def grid_instances(field, dim):
    grid = [field.coerce(g) for g in
            (Q_GRID if field.kind == "rationals" else range(1, field.p))]
    out = []
    for fam in ev.families_of_dim(dim):
        for combo in itertools.product(grid, repeat=fam.nparams):
            try:
                out.append((fam, combo, ev.catalog.instantiate(fam, field, combo)))
            except ev.ParamConstraintViolated:
                continue
    return out


def test_criterion_1_table1_reproduction(Q):
    t0 = time.time()
    ok = True
    for d in range(1, 5):
        generated = table_lines(Q, d, Q_GRID)
        golden = (GOLDEN / f"table_dim{d}.txt").read_text(encoding="utf-8")
        ok = ok and generated == golden
    elapsed = time.time() - t0
    report(1, "Table 1 reproduction", ok and elapsed < 1.0, elapsed)


def test_criterion_2_table2_reproduction(Q):
    t0 = time.time()
    generated = table_lines(Q, 5, Q_GRID)
    golden = (GOLDEN / "table_dim5.txt").read_text(encoding="utf-8")
    elapsed = time.time() - t0
    report(2, "Table 2 reproduction", generated == golden and elapsed < 1.0,
           elapsed)


def test_criterion_3_pa_iff_jordan(Q, F7):
    t0 = time.time()
    disagreements = 0
    checked = 0
    for field in (Q, F7):
        for dim in range(1, 7):
            for fam, combo, A in grid_instances(field, dim):
                checked += 1
                if ev.is_power_associative(A).verdict != ev.is_jordan(A).verdict:
                    disagreements += 1
    for dim in range(1, 7):
        for seed in range(10000):
            A = random_algebra(F7, dim, seed, "pa_mixed")
            if ev.is_power_associative(A).verdict != ev.is_jordan(A).verdict:
                disagreements += 1
            B = random_algebra(F7, dim, seed, "raw")
            if ev.is_power_associative(B).verdict != ev.is_jordan(B).verdict:
                disagreements += 1
            checked += 2
    elapsed = time.time() - t0
    print(f"  criterion 3: {checked} algebras, {disagreements} disagreements")
    report(3, "PA iff Jordan", disagreements == 0 and elapsed < 60.0, elapsed)


def test_criterion_4_albert_consistency(F7):
    t0 = time.time()
    bad = 0
    total = 0
    for n in (1, 2):
        for entries in itertools.product(range(7), repeat=n * n):
            rows = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
            A = ev.new_evolution_algebra(F7, rows)
            total += 1
            if ev.is_fourth_power_associative(A).verdict != \
                    (fp_pa4_violation(A) is None):
                bad += 1
    rng = random.Random(424242)
    for _ in range(1000):
        A = random_fp_matrix(F7, 3, rng)
        total += 1
        if ev.is_fourth_power_associative(A).verdict != \
                (fp_pa4_violation(A) is None):
            bad += 1
    elapsed = time.time() - t0
    print(f"  criterion 4: {total} algebras, {bad} disagreements")
    report(4, "Albert consistency at desk scale", bad == 0 and elapsed < 120.0,
           elapsed)


def test_criterion_5_associative_nil_theorem(F7):
    # the matrix population mirrors criterion 4 (exhaustive matrices in dim
    # <= 2, seeded samples plus catalog instances in dim 3); the element
    # quantifier x^3 = 0 is checked exhaustively over all 7^n elements
    t0 = time.time()
    bad = 0

    def agrees(A):
        nil_assoc = ev.is_nil(A).verdict and ev.is_associative(A).verdict
        cubes = fp_all_cubes_zero(A)
        e3_zero = ev.power_subspace(A, 3).dim == 0
        return nil_assoc == cubes == e3_zero

    for n in (1, 2):
        for entries in itertools.product(range(7), repeat=n * n):
            rows = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
            if not agrees(ev.new_evolution_algebra(F7, rows)):
                bad += 1
    rng = random.Random(5151)
    for _ in range(1000):
        if not agrees(random_fp_matrix(F7, 3, rng)):
            bad += 1
    for dim in (1, 2, 3):
        for fam, combo, A in grid_instances(F7, dim):
            if not agrees(A):
                bad += 1
    elapsed = time.time() - t0
    report(5, "associative-nil theorem", bad == 0, elapsed)


NIL_NONASSOC = [(4, 6), (5, 7), (5, 10), (5, 11), (5, 12),
                (6, 19), (6, 20), (6, 21), (6, 22), (6, 23), (6, 24),
                (6, 25), (6, 26)]


def test_criterion_6_nil_index_theorem(Q, F7):
    t0 = time.time()
    bad = 0
    count = 0
    for field in (Q, F7):
        grid = [field.coerce(g) for g in
                (Q_GRID if field.kind == "rationals" else range(1, field.p))]
        for dim, index in NIL_NONASSOC:
            fam = ev.family(dim, index)
            for combo in itertools.product(grid, repeat=fam.nparams):
                try:
                    A = ev.catalog.instantiate(fam, field, combo)
                except ev.ParamConstraintViolated:
                    continue
                count += 1
                ok = ev.power_subspace(A, 4).dim == 0
                ok = ok and ev.power_subspace(A, 3).dim > 0
                a, y = nil_nonassoc_certificate(A)
                ok = ok and ev.principal_power(A, a, 3) != A.zero_element()
                E2 = ev.power_subspace(A, 2)
                ok = ok and not ev.membership(E2, y)
                ok = ok and all(ev.multiply(A, y, row) == A.zero_element()
                                for row in E2.basis)
                if not ok:
                    bad += 1
    elapsed = time.time() - t0
    print(f"  criterion 6: {count} instances")
    report(6, "nil-index-4 theorem", bad == 0, elapsed)


def test_criterion_7_wedderburn_soundness(Q, F7):
    t0 = time.time()
    bad = 0
    count = 0
    for field in (Q, F7):
        for dim in range(1, 7):
            for fam, combo, A in grid_instances(field, dim):
                if fam.s == 0:
                    continue
                count += 1
                wd = ev.wedderburn(A)
                ok = wd.s == fam.s
                if fam.radical_index is not None:
                    rad_fam = ev.family(dim - fam.s, fam.radical_index)
                    expected = ev.catalog.instantiate(rad_fam, field, combo)
                    ok = ok and wd.radical.rows == expected.rows
                else:
                    ok = ok and wd.radical.n == 0
                for i in range(wd.s):
                    ui = wd.idempotents[i]
                    ok = ok and ev.multiply(A, ui, ui) == ui
                    for j in range(i + 1, wd.s):
                        ok = ok and all(field.is_zero(v) for v in
                                        ev.multiply(A, ui, wd.idempotents[j]))
                    for m in wd.radical_indices:
                        ok = ok and all(field.is_zero(v) for v in
                                        ev.multiply(A, ui, A.unit(m)))
                ok = ok and (wd.radical.n == 0 or ev.is_nil(wd.radical).verdict)
                if not ok:
                    bad += 1
    elapsed = time.time() - t0
    print(f"  criterion 7: {count} mixed instances")
    report(7, "Wedderburn soundness", bad == 0, elapsed)


def test_criterion_8_classifier_roundtrip(Q, F7):
    t0 = time.time()
    failures = []
    trips = 0
    for field in (F7, Q):
        grid = [field.coerce(g) for g in
                (Q_GRID if field.kind == "rationals" else range(1, field.p))]
        for dim in range(1, 7):
            for fam in ev.families_of_dim(dim):
                instances = []
                for combo in itertools.product(grid, repeat=fam.nparams):
                    try:
                        instances.append(
                            (combo, ev.catalog.instantiate(fam, field, combo)))
                    except ev.ParamConstraintViolated:
                        continue
                    if len(instances) == 2:
                        break
                per = 200 // len(instances)
                for combo, A in instances:
                    rng = random.Random(f"acc8:{field.describe()}:{fam.dim}:"
                                        f"{fam.index}:{combo}")
                    seen_params = set()
                    for _ in range(per):
                        B = monomial_disguise(field, A, rng)
                        trips += 1
                        res = classify(B)
                        if (res.label.dim, res.label.index) != (fam.dim, fam.index):
                            failures.append((fam.name(), combo, res.label.name()))
                            break
                        seen_params.add(res.label.params)
                    if len(seen_params) != 1:
                        failures.append((fam.name(), combo, "params wander",
                                         sorted(seen_params)[:3]))
                        continue
                    pe = params_equivalent(fam.dim, fam.index, combo,
                                           next(iter(seen_params)), field)
                    if pe.status != "equivalent":
                        failures.append((fam.name(), combo, pe.status))
    elapsed = time.time() - t0
    print(f"  criterion 8: {trips} round trips, {len(failures)} failures")
    for f in failures[:10]:
        print("   ", f)
    report(8, "classifier round-trip", not failures and elapsed < 600.0, elapsed)


def test_criterion_9_invariant_separation(F7):
    t0 = time.time()
    by_bucket = {}
    count = 0
    for dim in range(1, 7):
        for fam, combo, A in grid_instances(F7, dim):
            count += 1
            chain = ev.annihilator_chain(A)
            record = (dim, chain.type_sequence, len(ev.annihilator(A)[1]),
                      ev.is_associative(A).verdict, ev.u_layer_square_dim(A),
                      fam.s)
            by_bucket.setdefault(record, []).append((fam.kind, fam.index, A))
    collisions = []
    searched = 0
    for record, members in by_bucket.items():
        labels = {(k, i) for k, i, _ in members}
        if len(labels) == 1:
            continue
        reps = {}
        for kind, index, A in members:
            reps.setdefault((kind, index), []).append(A)
        keys = sorted(reps)
        for a in range(len(keys)):
            for b in range(a + 1, len(keys)):
                for A in reps[keys[a]]:
                    for B in reps[keys[b]]:
                        searched += 1
                        if monomial_witness(F7, A.rows, B.rows) is not None:
                            collisions.append((keys[a], keys[b]))
    elapsed = time.time() - t0
    print(f"  criterion 9: {count} instances, {searched} pair searches, "
          f"{len(collisions)} collisions")
    report(9, "invariant separation", not collisions, elapsed)


def test_criterion_10_necessary_condition_reject(F7):
    # A small fraction of random bad-diagonal matrices (rescaled idempotent
    # lines and their orthogonal sums, about 1%) satisfy x^2 x^2 = x^4
    # identically, so "all rejected" is unattainable for a checker that the
    # element-level oracle can confirm.  The oracle-consistent contract is
    # asserted instead: every non-PA sample is rejected with a diagonal
    # witness, every accept is exhaustively oracle-verified as genuinely
    # power-associative (zero false accepts), and a 100-case subsample of
    # the rejects is oracle-confirmed.  See the decisions ledger.
    t0 = time.time()
    rng = random.Random(101010)
    rejected = 0
    other_witness = 0
    accepts = []
    reject_sample = []
    for k in range(10000):
        n = rng.randint(2, 6)
        A = random_fp_matrix(F7, n, rng)
        diag = [A.rows[i][i] for i in range(n)]
        if all(d in (0, 1) for d in diag):
            i = rng.randrange(n)
            rows = [list(r) for r in A.rows]
            rows[i][i] = rng.randint(2, 6)
            A = ev.new_evolution_algebra(F7, rows)
        rep = ev.is_power_associative(A)
        if not rep.verdict:
            if rep.witness.condition == "diagonal_not_idempotent":
                rejected += 1
                if len(reject_sample) < 100:
                    reject_sample.append(A)
            else:
                other_witness += 1
        else:
            accepts.append(A)
    confirmed = sum(1 for A in reject_sample
                    if fp_pa4_violation(A, exhaustive_limit=2, rng=rng) is not None)
    # zero false accepts: each accepted case passes the element-level
    # criterion on every one of the 7^n elements
    false_accepts = 0
    for A in accepts:
        for x in elements_of(F7, A.n):
            x2 = naive_multiply(A, x, x)
            x4 = naive_multiply(A, naive_multiply(A, x2, x), x)
            if naive_multiply(A, x2, x2) != x4:
                false_accepts += 1
                break
    elapsed = time.time() - t0
    print(f"  criterion 10: {rejected}/10000 rejected with diagonal witness, "
          f"{len(accepts)} oracle-verified PA exceptions, "
          f"{confirmed}/{len(reject_sample)} reject-subsample confirmed, "
          f"{false_accepts} false accepts")
    report(10, "necessary-condition reject",
           other_witness == 0 and false_accepts == 0
           and confirmed == len(reject_sample) and rejected + len(accepts) == 10000,
           elapsed)
