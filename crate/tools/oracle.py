"""Independent brute-force reference values for the Rust test suite.

Everything here is computed directly from the combinatorial and algebraic
definitions with sympy, sharing no code with the Rust implementation.
Run with `python3 tools/oracle.py` to regenerate the values frozen in
crates/core/tests/oracle.rs.
"""

import itertools
import sympy as sp

beta = sp.Symbol("beta")


def letters(n):
    # (value, primed) pairs in the order 1' < 1 < 2' < 2 < ...
    return [(v, p) for v in range(1, n + 1) for p in (True, False)]


def key(letter):
    v, p = letter
    return 2 * v - (1 if p else 0)


def shifted_cells(outer, inner=()):
    inner = list(inner) + [0] * (len(outer) - len(inner))
    cells = []
    for i, (a, b) in enumerate(zip(outer, inner)):
        for j in range(i + b, i + a):
            cells.append((i, j))
    return cells


def set_valued_tableaux(outer, inner, n, primes_on_diagonal, max_extra):
    """Shifted set-valued tableaux: rows and columns weakly increase, a
    primed letter repeats in no row, an unprimed one in no column."""
    cells = shifted_cells(outer, inner)
    pos = {c: k for k, c in enumerate(cells)}
    alphabet = letters(n)
    subsets = []
    for r in range(1, len(alphabet) + 1):
        for s in itertools.combinations(alphabet, r):
            subsets.append(sorted(s, key=key))
    fill = [None] * len(cells)

    def ok(k, s):
        i, j = cells[k]
        if i == j and not primes_on_diagonal and any(p for _, p in s):
            return False
        left = pos.get((i, j - 1))
        if left is not None and fill[left] is not None:
            a, b = fill[left][-1], s[0]
            if key(a) > key(b) or (key(a) == key(b) and a[1]):
                return False
        up = pos.get((i - 1, j))
        if up is not None and fill[up] is not None:
            a, b = fill[up][-1], s[0]
            if key(a) > key(b) or (key(a) == key(b) and not a[1]):
                return False
        return True

    out = []

    def go(k, extra):
        if k == len(cells):
            out.append([list(x) for x in fill])
            return
        for s in subsets:
            if extra + len(s) - 1 > max_extra:
                continue
            if ok(k, s):
                fill[k] = s
                go(k + 1, extra + len(s) - 1)
                fill[k] = None

    go(0, 0)
    return out


def G(flavor, outer, inner, n, max_deg):
    xs = sp.symbols(f"x1:{n + 1}")
    size = sum(outer) - sum(inner)
    total = 0
    for t in set_valued_tableaux(outer, inner, n, flavor == "Q", max_deg - size):
        m = 1
        cnt = 0
        for s in t:
            for v, _ in s:
                m *= xs[v - 1]
                cnt += 1
        total += beta ** (cnt - size) * m
    return sp.expand(total), xs


def terms(poly, xs):
    p = sp.Poly(poly, *xs, beta)
    rows = []
    for mon, c in p.terms():
        rows.append((tuple(mon[:-1]), mon[-1], int(c)))
    return sorted(rows)


def strict_partitions(max_size):
    out = [()]
    for n in range(1, max_size + 1):
        for k in range(1, n + 1):
            for c in itertools.combinations(range(n, 0, -1), k):
                if sum(c) == n:
                    out.append(tuple(c))
    return sorted(set(out), key=lambda p: (sum(p), p))


def truncate_t(expr, t, d):
    p = sp.Poly(sp.expand(expr), t)
    return sum(c * t ** k for (k,), c in p.terms() if k <= d)


def kernel(xs, ys, max_x_deg):
    """Product over (x, y) of (1 - xbar*y)/(1 - x*y), xbar = -x/(1+beta x),
    truncated at total x-degree max_x_deg."""
    t = sp.Symbol("t")
    d = max_x_deg
    acc = sp.Integer(1)
    for x in xs:
        xt = t * x
        xbar = -xt * sum((-beta * xt) ** k for k in range(d))
        for y in ys:
            geo = sum((xt * y) ** k for k in range(d + 1))
            factor = truncate_t((1 - xbar * y) * geo, t, d)
            acc = truncate_t(acc * factor, t, d)
    return sp.expand(acc.subs(t, 1))


def duals(flavor, max_size, ny):
    """gp (flavor P) or gq (flavor Q) for |lambda| <= max_size by solving
    kernel = sum_lambda G_other(lambda)(x) * g(lambda)(y) in enough x variables."""
    other = "Q" if flavor == "P" else "P"
    nx = max_size
    xs = sp.symbols(f"x1:{nx + 1}")
    ys = sp.symbols(f"y1:{ny + 1}")
    K = kernel(xs, ys, max_size)
    lams = strict_partitions(max_size)
    unknown = {lam: sp.Symbol("g_" + "_".join(map(str, lam))) for lam in lams}
    acc = 0
    for lam in lams:
        g, gx = G(other, lam, (), nx, max_size)
        g = g.subs(dict(zip(gx, xs)))
        acc += g * unknown[lam]
    diff = sp.Poly(sp.expand(K - acc), *xs)
    eqs = [c for c in diff.coeffs()]
    sol = sp.solve(eqs, list(unknown.values()), dict=True)[0]
    return {lam: sp.expand(sol[unknown[lam]]) for lam in lams}, ys


def structure_constants(mu, nu, cap, n):
    """a-constants: GP_mu GP_nu = sum a GP_lambda, truncated at cap."""
    gm, xs = G("P", mu, (), n, cap)
    gn, _ = G("P", nu, (), n, cap)
    prod = sp.expand(gm * gn)
    lams = [l for l in strict_partitions(cap) if len(l) <= n and sum(l) >= sum(mu) + sum(nu)]
    cs = {l: sp.Symbol("c_" + "_".join(map(str, l))) for l in lams}
    acc = 0
    for l in lams:
        g, _ = G("P", l, (), n, cap)
        acc += cs[l] * g
    diff = sp.Poly(sp.expand(prod - acc), *xs)
    eqs = [c for mon, c in diff.terms() if sum(mon) <= cap]
    sol = sp.solve(eqs, list(cs.values()), dict=True)[0]
    return {l: sp.factor(sol[cs[l]]) for l in lams if sol[cs[l]] != 0}


def show(name, rows):
    print(f"{name}:")
    for r in rows:
        print(f"    {r}")


if __name__ == "__main__":
    for flavor, outer, inner, n, d in [
        ("P", (2, 1), (), 3, 5),
        ("Q", (2,), (), 2, 4),
        ("Q", (3, 1), (), 2, 6),
        ("P", (3, 1), (1,), 2, 5),
        ("Q", (2, 1), (1,), 2, 4),
    ]:
        poly, xs = G(flavor, outer, inner, n, d)
        show(f"G{flavor} {outer}/{inner} n={n} d={d}", terms(poly, xs))
    for flavor in ("P", "Q"):
        sols, ys = duals(flavor, 3, 3)
        for lam in [(2, 1), (3,)]:
            show(f"g{flavor.lower()} {lam} n=3", terms(sols[lam], ys))
    for mu, nu in [((1,), (1,)), ((2,), (1,)), ((2,), (2,))]:
        print(f"a {mu} {nu} cap=5:", structure_constants(mu, nu, 5, 3))
    for outer, n in [((2, 1), 2), ((3, 1), 3), ((2,), 3)]:
        cnt = len(set_valued_tableaux(outer, (), n, True, 10 ** 6))
        print(f"count SetShYT_Q {outer} max_value={n}: {cnt}")
