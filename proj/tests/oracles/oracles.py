"""Independent reference values for the unit tests.

Run with `python3 tests/oracles/oracles.py`; the printed numbers are the
ones frozen in tests/unit. Uses mpmath at 50 digits and brute force only.
"""

from itertools import product
from math import comb

import mpmath as mp

mp.mp.dps = 50


def w_power(q):
    return lambda t: mp.mpf(t) ** (mp.mpf(1) / q)


def w_log(q):
    return lambda t: (1 - mp.log(mp.mpf(t), 2)) ** (-mp.mpf(1) / q)


def show(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


def weights():
    show("log3(0.3)", w_log(3)(mp.mpf("0.3")))
    show("power2(0.3)", w_power(2)(mp.mpf("0.3")))
    show("log2(2^-10)", w_log(2)(mp.mpf(2) ** -10))
    w = w_log(3)
    s = [w(mp.mpf(2) ** -m) * mp.sqrt(m) for m in range(1, 1001)]
    show("cond10 log3 M=1000 sup", max(s))
    show("cond10 log3 M=1000 growth", s[999] / s[749])


def cells_mean_p(vals, p, left, right, res):
    # Mean of |f|^p over [left, right) * 2^-res for f given on 2^N cells.
    n = len(vals)
    total = mp.mpf(0)
    a, b = mp.mpf(left) / 2**res, mp.mpf(right) / 2**res
    for i, v in enumerate(vals):
        lo, hi = mp.mpf(i) / n, mp.mpf(i + 1) / n
        overlap = max(mp.mpf(0), min(hi, b) - max(lo, a))
        total += overlap * abs(mp.mpf(v)) ** p
    return total / (b - a)


def stepfn():
    f = [3, -1, 2, 0.5]
    show("lp(f,1.5)", (sum(abs(mp.mpf(v)) ** 1.5 for v in f) / 4) ** (1 / mp.mpf(1.5)))
    show("avg_p(f,1.5,[1,3)/8)", cells_mean_p(f, mp.mpf(1.5), 1, 3, 3))


def rad_values(a):
    n = len(a)
    vals = []
    for cell in range(2**n):
        s = mp.mpf(0)
        for k in range(1, n + 1):
            bit = (cell >> (n - k)) & 1
            s += mp.mpf(a[k - 1]) * (1 if bit == 0 else -1)
        vals.append(s)
    return vals


def exact_lp(a, p):
    vals = rad_values(a)
    return (sum(abs(v) ** p for v in vals) / len(vals)) ** (1 / mp.mpf(p))


def phi(a, wdy):
    l2 = mp.sqrt(sum(mp.mpf(x) ** 2 for x in a))
    best, acc = mp.mpf(0), mp.mpf(0)
    for m, x in enumerate(a, start=1):
        acc += abs(mp.mpf(x))
        best = max(best, wdy(m) * acc)
    return l2 + best


def rademacher():
    show("exact_lp((1,-0.5,2),3)", exact_lp([1, -0.5, 2], 3))
    show("exact_lp((1,1,1,1),1)", exact_lp([1, 1, 1, 1], 1))
    a = [0.3, -1, 0.5]
    show("phi(a,log2)", phi(a, lambda m: (m + 1) ** (-mp.mpf(1) / 2)))
    astar = sorted((abs(mp.mpf(x)) for x in a), reverse=True)
    show("phi_star(a,3)", phi(astar, lambda m: m ** (-mp.mpf(1) / 3)))
    l2 = mp.sqrt(sum(mp.mpf(x) ** 2 for x in a))
    sup, acc = mp.mpf(0), mp.mpf(0)
    for m, x in enumerate(a, start=1):
        acc += mp.mpf(x)
        sup = max(sup, m ** (-mp.mpf(1) / 3) * abs(acc))
    show("phi_K(a,3)", l2 + sup)


def dyadic_morrey(vals, p, w):
    n = len(vals)
    N = n.bit_length() - 1
    best = mp.mpf(0)
    for lev in range(N + 1):
        for idx in range(2**lev):
            best = max(best, w(mp.mpf(2) ** -lev) * cells_mean_p(vals, p, idx, idx + 1, lev) ** (1 / mp.mpf(p)))
    return best


def grid_morrey(vals, p, w):
    n = len(vals)
    N = n.bit_length() - 1
    best = mp.mpf(0)
    for l in range(n):
        for r in range(l + 1, n + 1):
            best = max(best, w(mp.mpf(r - l) / n) * cells_mean_p(vals, p, l, r, N) ** (1 / mp.mpf(p)))
    return best


def kkl_lower(vals, p, w):
    n = len(vals)
    N = n.bit_length() - 1
    return max(w(mp.mpf(i) / n) * cells_mean_p(vals, p, 0, i, N) ** (1 / mp.mpf(p)) for i in range(1, n + 1))


def norms():
    f = [3, -1, 2, 0.5]
    w = w_power(2)
    show("dyadic(f,1,power2)", dyadic_morrey(f, 1, w))
    show("grid morrey(f,1,power2)", grid_morrey(f, 1, w))
    show("kkl lower(f,1,power2)", kkl_lower(f, 1, w))
    g = [0.5, 2, -1, 3]
    show("kkl lower(g,2,log2)", kkl_lower(g, 2, w_log(2)))
    show("marcinkiewicz lower(g,2,log2)", kkl_lower(sorted((abs(x) for x in g), reverse=True), 2, w_log(2)))
    r = rad_values([1, 1, 1])
    show("dyadic(r1+r2+r3,2,log2)", dyadic_morrey(r, 2, w_log(2)))


def constructions():
    def indices(w, blocks):
        out, prev = [], 0
        for k in range(1, blocks + 1):
            n = prev + 1
            while w(mp.mpf(2) ** -n) * mp.sqrt(n - prev) < 2**k:
                n += 1
            out.append(n)
            prev = n
        return out

    print("prop2 indices one:", indices(lambda t: mp.mpf(1), 4))
    print("prop2 indices log3 (3 blocks):", indices(w_log(3), 3))
    # Witness for p = 1, w = sqrt(t): v(2^-j) = 2^{j/2}, doubling every 2 levels.
    print("prop1 exponents:", [2 * k for k in range(1, 11)])


def theorem3():
    for m in (2, 8):
        j = int(mp.sqrt(m // 2))
        cd = ca = sd = sp = 0
        for bits in product((1, -1), repeat=2 * m):
            s = sum(bits)
            if 0 <= s <= j:
                cd += 1
                sd += s
            if 0 <= s <= 2 * j:
                ca += 1
                sp += s
        print(f"m={m}: count_def={cd} count_alt={ca} sigma_def={sd} sigma_paper={sp}")
    m = 18
    j = 3
    c = [comb(2 * m, m - k) for k in range(j + 1)]
    print("m=18 binomial: count_def", sum(c[k] for k in range(j + 1) if 2 * k <= j),
          "sigma_paper", sum(2 * k * c[k] for k in range(j + 1)))
    for m in (8, 10):
        show(f"stirling({m})", mp.binomial(2 * m, m) / mp.mpf(4) ** m * mp.sqrt(mp.pi * m))
    t = mp.mpf("0.5")
    show("ineq28_phi(0.5)", mp.log((1 - t) / (1 + t)) + 2 * t + 2 * t**3)
    for m in (2, 50):
        j = int(mp.sqrt(m // 2))
        show(f"gauss_sum({m})", sum(mp.e ** (-mp.mpf(k) ** 2 / m) * k for k in range(1, j + 1)))
    # Lower-bound row for m = 8, def window, w = log:q=2.
    m, j = 8, 2
    count = sum(comb(2 * m, m - k) for k in range(j + 1) if 2 * k <= j)
    sigma = sum(2 * k * comb(2 * m, m - k) for k in range(j + 1) if 2 * k <= j)
    meas = mp.mpf(count) / mp.mpf(4) ** m
    show("m=8 measure_def", meas)
    show("m=8 bound(log2)", mp.mpf(sigma) / mp.mpf(4) ** m / w_log(2)(meas))


if __name__ == "__main__":
    weights()
    stepfn()
    rademacher()
    norms()
    constructions()
    theorem3()
