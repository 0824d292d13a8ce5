"""Monomial basis-change search: permutation composed with diagonal scaling.

A monomial change f_i = t_i e_{sigma(i)} turns the structure matrix A into
B[i][j] = t_i^2 A[sigma(i)][sigma(j)] / t_j.  The solver backtracks over
sigma with zero-pattern pruning and then solves the multiplicative system
for the scalings, branching over square roots and, for undetermined
scalings, over a root pool (all of F_p* over a prime field, a bounded
height set over Q).
"""

from fractions import Fraction
from math import isqrt, lcm

from .fields import PrimeField


def _sqrts(field, a):
    """All square roots of a in the field (possibly empty)."""
    if field.is_zero(a):
        return [field.zero]
    if isinstance(field, PrimeField):
        p = field.p
        if pow(a, (p - 1) // 2, p) != 1:
            return []
        r = _tonelli(a, p)
        return sorted({r, p - r})
    if a < 0:
        return []
    rn, rd = isqrt(a.numerator), isqrt(a.denominator)
    if rn * rn != a.numerator or rd * rd != a.denominator:
        return []
    r = Fraction(rn, rd)
    return [r, -r] if r else [r]


def _tonelli(a, p):
    """Square root mod an odd prime, assuming a is a residue."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def default_root_pool(field, height=6):
    if isinstance(field, PrimeField):
        return list(range(1, field.p))
    vals = set()
    for n in range(1, height + 1):
        for d in range(1, height + 1):
            vals.add(Fraction(n, d))
            vals.add(Fraction(-n, d))
    return sorted(vals, key=field.sort_key)


def canonical_root_pool(field):
    """Small pool for canonical-representative searches over Q.

    Free scalings enter parameters through squares, so modest heights cover
    every orbit the bounded suites produce; prime fields stay exhaustive.
    """
    if isinstance(field, PrimeField):
        return list(range(1, field.p))
    mags = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2),
            Fraction(1, 3), Fraction(2, 3), Fraction(3, 2))
    return [s * m for m in mags for s in (1, -1)]


def _factor(m):
    primes = {}
    x, p = m, 2
    while p * p <= x:
        while x % p == 0:
            primes[p] = primes.get(p, 0) + 1
            x //= p
        p += 1 if p == 2 else 2
    if x > 1:
        primes[x] = primes.get(x, 0) + 1
    return primes


def _int_nth_root(m, g):
    lo, hi = 0, 1
    while hi ** g < m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** g < m:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _nth_root(fr, g):
    """Exact rational g-th root of a positive fraction (must exist)."""
    n = _int_nth_root(fr.numerator, g)
    d = _int_nth_root(fr.denominator, g)
    if Fraction(n, d) ** g != fr:
        raise ArithmeticError(f"{fr} has no exact {g}-th root")
    return Fraction(n, d)


def _power_class_rep(field, fr, g):
    """Height-minimal representative of {fr * t^g : t in Q*}, with its t.

    ``g`` must be even and positive, so signs are preserved.  Exponents of
    the (small) numerator and denominator are reduced mod g and each
    remaining prime power is placed in the numerator or denominator so
    that the canonical key is minimal.
    """
    sign = -1 if fr < 0 else 1
    primes = _factor(abs(fr.numerator))
    for q, e in _factor(fr.denominator).items():
        primes[q] = primes.get(q, 0) - e
    rest = [(q, e % g) for q, e in primes.items() if e % g]
    best = None
    for mask in range(1 << len(rest)):
        num, den = 1, 1
        for b, (q, e) in enumerate(rest):
            if mask >> b & 1:
                den *= q ** (g - e)
            else:
                num *= q ** e
        rep = Fraction(sign * num, den)
        key = field.canon_key(rep)
        if best is None or key < best[0]:
            best = (key, rep)
    rep = best[1] if best else Fraction(sign)
    t = _nth_root(rep / fr, g)
    return rep, t


def pattern_cells(fam, field):
    """Target cells for a symbolic catalog form.

    Each cell is ("zero",), ("fixed", value) or ("slot", name, coeff).
    """
    cells = []
    for row in fam.rows:
        line = []
        for c, pn in row:
            if c == 0:
                line.append(("zero",))
            elif pn is None:
                line.append(("fixed", field.coerce(c)))
            else:
                line.append(("slot", pn, field.coerce(c)))
        cells.append(tuple(line))
    return tuple(cells)


def concrete_cells(field, rows):
    return tuple(tuple(("zero",) if field.is_zero(v) else ("fixed", v) for v in row)
                 for row in rows)


def _profiles(nz):
    n = len(nz)
    return [(sum(nz[i]), sum(nz[r][i] for r in range(n)), nz[i][i]) for i in range(n)]


def monomial_solutions(field, src_rows, cells, root_pool=None, slot_names=(),
                       det_constraints=(), q_exact_slots=False):
    """Yield (sigma, lambdas, slot_values) matching the target cells.

    With ``q_exact_slots`` (rational canonicalization), scalings that only
    feed parameter slots are chosen by exact square-class reduction instead
    of pool iteration; slot values are then the height-minimal orbit
    representatives rather than all pool-reachable ones.
    """
    n = len(src_rows)
    if len(cells) != n:
        return
    if root_pool is None:
        root_pool = default_root_pool(field)
    src_nz = [[not field.is_zero(v) for v in row] for row in src_rows]
    tgt_nz = [[c[0] != "zero" for c in row] for row in cells]
    if sorted(_profiles(src_nz)) != sorted(_profiles(tgt_nz)):
        return
    src_prof = _profiles(src_nz)
    tgt_prof = _profiles(tgt_nz)
    candidates = [[v for v in range(n) if src_prof[v] == tgt_prof[i]]
                  for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    sigma = [None] * n
    used = [False] * n

    def assign(pos):
        if pos == n:
            if q_exact_slots and field.kind == "rationals":
                yield from _solve_scalings_symbolic(field, src_rows, cells, sigma,
                                                    slot_names, det_constraints)
            else:
                yield from _solve_scalings(field, src_rows, cells, sigma, root_pool,
                                           slot_names, det_constraints)
            return
        i = order[pos]
        for v in candidates[i]:
            if used[v]:
                continue
            ok = True
            for j in range(n):
                if sigma[j] is None and j != i:
                    continue
                w = v if j == i else sigma[j]
                if src_nz[v][w] != tgt_nz[i][j] or src_nz[w][v] != tgt_nz[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            sigma[i] = v
            used[v] = True
            yield from assign(pos + 1)
            sigma[i] = None
            used[v] = False

    yield from assign(0)


def _solve_scalings_symbolic(field, src_rows, cells, sigma, slot_names,
                             det_constraints):
    """Exact scaling solver over Q: no pools, free scalings stay symbolic.

    Every scaling is a rational coefficient times a monomial in free
    symbols introduced where propagation stalls.  Slot values are then
    reduced, in slot order, to height-minimal power-class representatives
    using symbols that do not occur in earlier slots; this makes the
    reported parameters a deterministic function of the monomial orbit.
    """
    n = len(src_rows)
    fixed = []
    slots = []
    for i in range(n):
        for j in range(n):
            cell = cells[i][j]
            if cell[0] == "fixed":
                fixed.append((i, j, src_rows[sigma[i]][sigma[j]], cell[1]))
            elif cell[0] == "slot":
                slots.append((i, j, src_rows[sigma[i]][sigma[j]], cell[1], cell[2]))

    def smul(a, b):
        exp = dict(a[1])
        for s, e in b[1]:
            exp[s] = exp.get(s, 0) + e
        return (a[0] * b[0], tuple(sorted((s, e) for s, e in exp.items() if e)))

    def sdiv(a, b):
        exp = dict(a[1])
        for s, e in b[1]:
            exp[s] = exp.get(s, 0) - e
        return (a[0] / b[0], tuple(sorted((s, e) for s, e in exp.items() if e)))

    def ssquare(a):
        return (a[0] * a[0], tuple((s, 2 * e) for s, e in a[1]))

    def const(c):
        return (Fraction(c), ())

    def subst(vals, sym, value):
        out = {}
        for k, (c, exp) in vals.items():
            e = dict(exp)
            d = e.pop(sym, 0)
            out[k] = (c * value ** d, tuple(sorted(e.items())))
        return out

    def resolve(vals, lhs, rhs):
        """Make lhs == rhs by solving for a single symbol, if possible."""
        ratio = sdiv(lhs, rhs)
        c, exp = ratio
        if not exp:
            return [vals] if c == 1 else []
        if len(exp) > 1:
            return []
        sym, d = exp[0]
        target = Fraction(1) / c
        roots = []
        if d < 0:
            target, d = Fraction(1) / target, -d
        if d % 2 == 0:
            if target > 0:
                try:
                    r = _nth_root(target, d)
                    roots = [r, -r]
                except ArithmeticError:
                    pass
        else:
            try:
                r = _nth_root(abs(target), d)
                roots = [r if target > 0 else -r]
            except ArithmeticError:
                pass
        return [subst(vals, sym, r) for r in roots if r != 0]

    fixed_hits = {}
    for i, j, _, _ in fixed:
        fixed_hits[i] = fixed_hits.get(i, 0) + 1
        fixed_hits[j] = fixed_hits.get(j, 0) + 1

    def extend(vals, next_sym):
        vals = dict(vals)
        # propagation with single-symbol conflict resolution
        while True:
            changed = False
            for i, j, c, f in fixed:
                li, lj = vals.get(i), vals.get(j)
                if i == j:
                    want = const(field.div(f, c))
                    if li is None:
                        vals[i] = want
                        changed = True
                    elif li != want:
                        for solved in resolve(vals, li, want):
                            yield from extend(solved, next_sym)
                        return
                    continue
                if li is not None and lj is None:
                    vals[j] = sdiv(smul(ssquare(li), const(c)), const(f))
                    changed = True
                elif li is not None and lj is not None:
                    lhs = smul(ssquare(li), const(c))
                    rhs = smul(const(f), lj)
                    if lhs != rhs:
                        for solved in resolve(vals, lhs, rhs):
                            yield from extend(solved, next_sym)
                        return
            if not changed:
                break
        for i, j, c, f in fixed:
            if i not in vals and j in vals:
                sq = sdiv(smul(const(f), vals[j]), const(c))
                cc, exp = sq
                if any(e % 2 for _, e in exp) or cc <= 0:
                    return
                try:
                    root = _nth_root(cc, 2)
                except ArithmeticError:
                    return
                half = tuple((s, e // 2) for s, e in exp)
                for r in (root, -root):
                    yield from extend({**vals, i: (r, half)}, next_sym)
                return
        unknown = [k for k in range(n) if k not in vals]
        if unknown:
            k = max(unknown, key=lambda u: (fixed_hits.get(u, 0), -u))
            yield from extend({**vals, k: (Fraction(1), ((next_sym, 1),))},
                              next_sym + 1)
            return
        yield from finish(vals)

    def finish(vals):
        named = {}
        for i, j, c, name, coeff in slots:
            v = sdiv(sdiv(smul(ssquare(vals[i]), const(c)), vals[j]), const(coeff))
            if name in named:
                if named[name] != v:
                    return
            else:
                named[name] = v
        syms = sorted({s for c, exp in named.values() for s, _ in exp}
                      | {s for c, exp in vals.values() for s, _ in exp})
        symval = {s: Fraction(1) for s in syms}

        def evaluate(c, exp):
            for s, e in exp:
                c *= symval[s] ** e
            return c

        # reduce each slot over the stabilizer lattice of the earlier ones:
        # moves y with row.y = 0 on all previous slots keep them fixed, and
        # the reachable factors on the current slot are the g-th powers with
        # g = gcd of row.y over that kernel
        rows_done = []
        for name in slot_names:
            row = [dict(named[name][1]).get(s, 0) for s in syms]
            g, y = _gcd_combo(row, _int_kernel(rows_done, len(syms)))
            if g and g % 2 == 0:
                current = evaluate(*named[name])
                _, t = _power_class_rep(field, current, g)
                for s, e in zip(syms, y):
                    if e:
                        symval[s] *= t ** e
            rows_done.append(row)
        lam = tuple(evaluate(*vals[k]) for k in range(n))
        values = {name: evaluate(*named[name]) for name in slot_names}
        for pa, pb, pc, pd in det_constraints:
            if values[pa] * values[pd] - values[pb] * values[pc] == 0:
                return
        yield (tuple(sigma), lam, tuple(values[s] for s in slot_names))

    yield from extend({}, 0)


def _int_kernel(rows, ncols):
    """Integer basis of the rational kernel of the given integer rows."""
    if not rows:
        return [[1 if c == k else 0 for c in range(ncols)] for k in range(ncols)]
    mat = [[Fraction(v) for v in row] for row in rows]
    piv_r, pivots = 0, []
    for c in range(ncols):
        pr = next((r for r in range(piv_r, len(mat)) if mat[r][c] != 0), None)
        if pr is None:
            continue
        mat[piv_r], mat[pr] = mat[pr], mat[piv_r]
        f = mat[piv_r][c]
        mat[piv_r] = [v / f for v in mat[piv_r]]
        for r in range(len(mat)):
            if r != piv_r and mat[r][c] != 0:
                f = mat[r][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[piv_r])]
        pivots.append(c)
        piv_r += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][free]
        scale = lcm(*(x.denominator for x in v))
        basis.append([int(x * scale) for x in v])
    return basis


def _gcd_combo(row, kernel_basis):
    """(g, y) with y an integer kernel combination and row.y = g = gcd > 0."""
    g, y = 0, None
    for base in kernel_basis:
        d = sum(r * b for r, b in zip(row, base))
        if d == 0:
            continue
        if d < 0:
            base = [-b for b in base]
            d = -d
        if y is None:
            g, y = d, list(base)
            continue
        # extended gcd to combine the two directions
        a0, a1 = g, d
        x0, x1 = 1, 0
        while a1:
            q = a0 // a1
            a0, a1 = a1, a0 - q * a1
            x0, x1 = x1, x0 - q * x1
        # a0 = gcd, a0 = x0*g + k*d for the matching k
        k = (a0 - x0 * g) // d
        y = [x0 * yy + k * bb for yy, bb in zip(y, base)]
        g = a0
    return g, y


def _solve_scalings(field, src_rows, cells, sigma, root_pool, slot_names,
                    det_constraints):
    n = len(src_rows)
    mul, div, is_zero = field.mul, field.div, field.is_zero
    fixed = []
    slots = []
    for i in range(n):
        for j in range(n):
            cell = cells[i][j]
            if cell[0] == "fixed":
                fixed.append((i, j, src_rows[sigma[i]][sigma[j]], cell[1]))
            elif cell[0] == "slot":
                slots.append((i, j, src_rows[sigma[i]][sigma[j]], cell[1], cell[2]))
    touched = {i for i, j, _, _ in fixed} | {j for i, j, _, _ in fixed} \
        | {i for i, j, _, _, _ in slots} | {j for i, j, _, _, _ in slots}
    slot_rank = {name: r for r, name in enumerate(slot_names)}

    def slot_value(lam, i, j, c, coeff):
        return div(div(mul(mul(lam[i], lam[i]), c), lam[j]), coeff)

    def finish(lam):
        for i, j, c, f in fixed:
            if mul(mul(lam[i], lam[i]), c) != mul(f, lam[j]):
                return
        values = {}
        for i, j, c, name, coeff in slots:
            v = slot_value(lam, i, j, c, coeff)
            if name in values:
                if values[name] != v:
                    return
            else:
                values[name] = v
        for pa, pb, pc, pd in det_constraints:
            det = field.sub(mul(values[pa], values[pd]), mul(values[pb], values[pc]))
            if is_zero(det):
                return
        yield (tuple(sigma), tuple(lam[i] for i in range(n)),
               tuple(values[s] for s in slot_names))

    def extend(lam):
        lam = dict(lam)
        changed = True
        while changed:
            changed = False
            for i, j, c, f in fixed:
                if i == j:
                    # diagonal: lam_i^2 c = f lam_i pins lam_i = f/c
                    want = div(f, c)
                    if lam.get(i) is None:
                        lam[i] = want
                        changed = True
                    elif lam[i] != want:
                        return
                    continue
                li, lj = lam.get(i), lam.get(j)
                if li is not None and lj is None:
                    lam[j] = div(mul(mul(li, li), c), f)
                    changed = True
                elif li is not None and lj is not None:
                    if mul(mul(li, li), c) != mul(f, lj):
                        return
        for i, j, c, f in fixed:
            if i not in lam and j in lam:
                sq = div(mul(f, lam[j]), c)
                for r in _sqrts(field, sq):
                    if not is_zero(r):
                        yield from extend({**lam, i: r})
                return
        unknown = [k for k in range(n) if k not in lam]
        if not unknown:
            yield from finish(lam)
            return
        free = [k for k in unknown if k not in touched]
        if free:
            for k in free:
                lam[k] = field.one
            yield from extend(lam)
            return
        # a scaling that only meets slot cells whose partner is known can be
        # chosen greedily: it influences nothing but those parameter values
        independent = []
        for k in unknown:
            mine = []
            ok = True
            for i, j, c, f in fixed:
                if k in (i, j):
                    ok = False
                    break
            if ok:
                for i, j, c, name, coeff in slots:
                    if k in (i, j):
                        other = j if i == k else i
                        if other != k and other not in lam:
                            ok = False
                            break
                        mine.append((i, j, c, name, coeff))
            if ok and mine:
                independent.append((min(slot_rank[m[3]] for m in mine), k, mine))
        if independent:
            independent.sort()
            for _, k, mine in independent:
                mine.sort(key=lambda m: slot_rank[m[3]])
                best = None
                for r in root_pool:
                    trial = dict(lam)
                    trial[k] = r
                    vals = {}
                    ok = True
                    for i, j, c, name, coeff in mine:
                        v = slot_value(trial, i, j, c, coeff)
                        if name in vals and vals[name] != v:
                            ok = False
                            break
                        vals[name] = v
                    if not ok:
                        continue
                    key = tuple(field.canon_key(vals[m[3]]) for m in mine)
                    if best is None or key < best[0]:
                        best = (key, r)
                if best is None:
                    return
                lam[k] = best[1]
            yield from extend(lam)
            return
        # pool a scaling that unlocks fixed-cell propagation, if there is one
        fixed_hits = {k: sum(k in (i, j) for i, j, _, _ in fixed) for k in unknown}
        k = max(unknown, key=lambda u: (fixed_hits[u], -u))
        for r in root_pool:
            yield from extend({**lam, k: r})

    yield from extend({})


def monomial_witness(field, A_rows, B_rows, root_pool=None):
    """A -> B coordinate map for the first monomial isomorphism found."""
    cells = concrete_cells(field, B_rows)
    for sigma, lam, _ in monomial_solutions(field, A_rows, cells, root_pool):
        n = len(A_rows)
        M = [[field.zero] * n for _ in range(n)]
        for i in range(n):
            M[i][sigma[i]] = field.inv(lam[i])
        return tuple(tuple(r) for r in M)
    return None
