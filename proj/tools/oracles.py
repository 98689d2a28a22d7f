"""Reference values for the test suite, computed with mpmath at 40 digits.

Run: python3 tools/oracles.py
"""
import mpmath as mp

mp.mp.dps = 40


def logbump(p, alpha):
    branch = mp.e ** (2 * alpha)

    def phi(t):
        t = abs(t)
        if t >= branch:
            return t**p * mp.log(t) ** alpha
        return t**p * (2 * alpha) ** alpha

    return phi


def step_gauge(phi, levels, masses):
    g = lambda k: sum(m * phi(c / k) for c, m in zip(levels, masses)) - 1
    lo, hi = mp.mpf("1e-6"), mp.mpf(1e6)
    for _ in range(400):
        mid = mp.sqrt(lo * hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def complementary(phi, s, hi):
    f = lambda t: -(s * t - phi(t))
    # golden section on [0, hi]
    a, b = mp.mpf(0), mp.mpf(hi)
    gr = (mp.sqrt(5) - 1) / 2
    c, d = b - gr * (b - a), a + gr * (b - a)
    for _ in range(300):
        if f(c) < f(d):
            b = d
        else:
            a = c
        c, d = b - gr * (b - a), a + gr * (b - a)
    t = (a + b) / 2
    return s * t - phi(t)


def maximize(fn, lo, hi, n=400):
    xs = [lo * (hi / lo) ** (mp.mpf(i) / n) for i in range(n + 1)]
    vals = [fn(x) for x in xs]
    i = max(range(len(vals)), key=lambda k: vals[k])
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, n)]
    gr = (mp.sqrt(5) - 1) / 2
    c, d = b - gr * (b - a), a + gr * (b - a)
    for _ in range(120):
        if fn(c) > fn(d):
            b = d
        else:
            a = c
        c, d = b - gr * (b - a), a + gr * (b - a)
    return fn((a + b) / 2), (a + b) / 2


def expdeg_kpp(p, q, b=1):
    pp = p / (p - 1)
    cum = lambda x: mp.e ** (-1 / x**2)
    w = lambda t: 2 * mp.e ** (-1 / t**2) / t**3
    total = cum(b)

    def left(x):
        inner = mp.quad(lambda t: cum(t) ** pp * w(t) ** (1 - pp), [0, x / 2, x])
        return (total - cum(x)) ** (1 / q) * inner ** (1 / pp)

    def right(x):
        pts = [x * (1 + mp.mpf(k) / 8) for k in range(9) if x * (1 + mp.mpf(k) / 8) < b] + [b]
        inner = mp.quad(lambda t: (total - cum(t)) ** pp * w(t) ** (1 - pp), pts)
        return cum(x) ** (1 / q) * inner ** (1 / pp)

    sl, xl = maximize(left, mp.mpf("0.05"), mp.mpf(b) * mp.mpf("0.999"))
    sr, xr = maximize(right, mp.mpf("0.05"), mp.mpf(b) * mp.mpf("0.999"))
    return (sl + sr) / total, sl, sr, xl, xr


if __name__ == "__main__":
    phi = logbump(2, 1)
    print("step gauge logbump(2,1), levels (3, 1) masses (0.3, 0.7):",
          mp.nstr(step_gauge(phi, [3, 1], [mp.mpf("0.3"), mp.mpf("0.7")]), 20))
    print("step gauge logbump(2,1), levels (10, -2, 0.5) masses (0.1, 0.5, 0.4):",
          mp.nstr(step_gauge(phi, [10, 2, mp.mpf("0.5")], [mp.mpf("0.1"), mp.mpf("0.5"), mp.mpf("0.4")]), 20))
    for s in (1, 20, 40, 100):
        print(f"complementary logbump(2,1) at s={s}:", mp.nstr(complementary(phi, s, 200), 20))
    exp_phi = lambda t: mp.e ** abs(t) - 1
    for s in (0.5, 2, 10):
        print(f"complementary exp at s={s}:", mp.nstr(complementary(exp_phi, s, 50), 20))
    v, sl, sr, xl, xr = expdeg_kpp(2, 2)
    print("expdeg K_{2,2}:", mp.nstr(v, 15), "left", mp.nstr(sl, 15), "at", mp.nstr(xl, 8),
          "right", mp.nstr(sr, 15), "at", mp.nstr(xr, 8))
