#!/usr/bin/env python3
"""Generate classical modular polynomial files from q-expansions of j.

Solves Phi_N(j(q), j(q^N)) = 0 for the symmetric coefficients of
Phi_N(X, Y) with exact rational Gaussian elimination. Usage:

    gen_modpoly.py N > data/phiN.txt
"""
import sys
from fractions import Fraction


def j_series(prec):
    """Coefficients of q*j(q) = q*E4^3/Delta, indices 0..prec-1."""
    # sigma_3
    sig = [0] * prec
    for d in range(1, prec):
        for m in range(d, prec, d):
            sig[m] += d ** 3
    e4 = [1] + [240 * sig[n] for n in range(1, prec)]

    def mul(a, b):
        out = [0] * prec
        for i, x in enumerate(a):
            if x == 0:
                continue
            for k in range(0, prec - i):
                out[i + k] += x * b[k]
        return out

    e4c = mul(mul(e4, e4), e4)
    # prod (1 - q^n)^24
    eta = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        for _ in range(24):
            for k in range(prec - 1, n - 1, -1):
                eta[k] -= eta[k - n]
    # invert eta series
    inv = [0] * prec
    inv[0] = 1
    for k in range(1, prec):
        inv[k] = -sum(eta[i] * inv[k - i] for i in range(1, k + 1))
    return mul(e4c, inv)


class Laurent:
    """Truncated Laurent series: coefficient list starting at q^val, known up to q^top (exclusive)."""

    def __init__(self, val, coeffs, top):
        self.val, self.c, self.top = val, coeffs[: top - val], top

    def __mul__(self, o):
        val = self.val + o.val
        top = min(self.top + o.val, o.top + self.val)
        n = top - val
        out = [0] * n
        for i, x in enumerate(self.c):
            if x == 0 or i >= n:
                continue
            for k, y in enumerate(o.c[: n - i]):
                out[i + k] += x * y
        return Laurent(val, out, top)

    def coeff(self, e):
        if e < self.val:
            return 0
        if e >= self.top:
            raise IndexError(e)
        return self.c[e - self.val]


def main():
    N = int(sys.argv[1])
    extra = 12
    top = extra  # exponents known up to q^top
    lo = -N * (N + 1)
    prec = top + N * (N + 2) + 4
    qj = j_series(prec)
    J1 = Laurent(-1, qj, prec - 1)
    # j(q^N)
    c = [0] * (N * prec)
    for k, x in enumerate(qj):
        c[N * k] = x
    JN = Laurent(-N, c, N * (prec - 1))

    one = Laurent(0, [1] + [0] * (prec * N), prec * N)
    p1 = [one]
    pN = [one]
    for _ in range(N + 1):
        p1.append(p1[-1] * J1)
        pN.append(pN[-1] * JN)

    unknowns = [(i, j) for i in range(N + 1) for j in range(i + 1)]
    # term for symmetric pair
    def term(i, j):
        t = p1[i] * pN[j]
        if i != j:
            u = p1[j] * pN[i]
            return [(e, t.coeff(e) + u.coeff(e)) for e in range(lo, top)]
        return [(e, t.coeff(e)) for e in range(lo, top)]

    cols = [dict(term(i, j)) for (i, j) in unknowns]
    lead = dict((e, a + b) for (e, a), (_, b) in zip(term_fixed(p1, pN, N, lo, top, 0), term_fixed(p1, pN, N, lo, top, 1)))
    rows = []
    for e in range(lo, top):
        rows.append([Fraction(col[e]) for col in cols] + [Fraction(-lead[e])])
    sol = solve(rows, len(unknowns))
    print("# Classical modular polynomial Phi_%d(X, Y)" % N)
    print("# line format: i j c  meaning c*(X^i Y^j + X^j Y^i) (i > j) or c*X^i Y^i (i = j)")
    print("level %d" % N)
    print("%d 0 1" % (N + 1))
    for (i, j), v in sorted(zip(unknowns, sol), reverse=True):
        assert v.denominator == 1, (i, j, v)
        if v != 0:
            print("%d %d %d" % (i, j, v.numerator))


def term_fixed(p1, pN, N, lo, top, which):
    # X^{N+1} (which=0) or Y^{N+1} (which=1)
    t = p1[N + 1] if which == 0 else pN[N + 1]
    return [(e, t.coeff(e)) for e in range(lo, top)]


def solve(rows, n):
    m = len(rows)
    r = 0
    piv = []
    for col in range(n):
        p = next((k for k in range(r, m) if rows[k][col] != 0), None)
        if p is None:
            raise SystemExit("underdetermined at column %d" % col)
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(m):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv.append(col)
        r += 1
    for k in range(r, m):
        if rows[k][n] != 0:
            raise SystemExit("inconsistent system")
    return [rows[k][n] for k in range(n)]


if __name__ == "__main__":
    main()
