#!/usr/bin/env python3
"""Generate classical modular polynomial tables phi_<l>.txt.

Uses q-expansions of j: Phi_l(X, j(q)) = (X - j(q^l)) * prod_r (X - j(zeta^r q^(1/l))).
The product over r has integer q-series coefficients obtained from power sums
via Newton's identities; each X-coefficient is then rewritten as a polynomial
in j(q) by peeling off principal parts.

Requires python-flint for fast series products.

usage: gen_modpoly.py OUT_DIR [l ...]
"""
import sys
from pathlib import Path

from flint import fmpz_poly


def sigma3(n):
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d ** 3
            e = n // d
            if e != d:
                s += e ** 3
        d += 1
    return s


def trunc(p, n):
    c = p.coeffs()[:n]
    return fmpz_poly(c)


def j_series(prec):
    """Coefficients of q*j(q) up to q^prec (so index k is the q^(k-1) term)."""
    e4 = fmpz_poly([1] + [240 * sigma3(n) for n in range(1, prec + 1)])
    # prod (1 - q^n)^24
    eta = fmpz_poly([1])
    for n in range(1, prec + 1):
        f = fmpz_poly([1] + [0] * (n - 1) + [-1])
        eta = trunc(eta * f, prec + 1)
    eta24 = fmpz_poly([1])
    for _ in range(24):
        eta24 = trunc(eta24 * eta, prec + 1)
    num = trunc(e4 * e4, prec + 1)
    num = trunc(num * e4, prec + 1)
    # series inverse of eta24
    inv = [0] * (prec + 1)
    c = eta24.coeffs() + [0] * (prec + 1)
    inv[0] = 1
    for n in range(1, prec + 1):
        s = 0
        for k in range(1, n + 1):
            s += int(c[k]) * inv[n - k]
        inv[n] = -s
    res = trunc(num * fmpz_poly(inv), prec + 1)
    out = [int(x) for x in res.coeffs()] + [0] * (prec + 1)
    return out[: prec + 1]


class Laurent:
    """Integer Laurent series sum c[k] q^(k+val), truncated."""

    def __init__(self, val, coeffs):
        self.val = val
        self.c = list(coeffs)

    def mul(self, other, top):
        # keep exponents <= top
        n = top - (self.val + other.val) + 1
        if n <= 0:
            return Laurent(self.val + other.val, [])
        a = fmpz_poly(self.c[:n])
        b = fmpz_poly(other.c[:n])
        prod = [int(x) for x in (a * b).coeffs()[:n]]
        return Laurent(self.val + other.val, prod)

    def coeff(self, e):
        k = e - self.val
        if 0 <= k < len(self.c):
            return self.c[k]
        return 0


def modpoly(l):
    top = l + 2  # exponent precision needed (q^top) for f's coefficients
    prec = l * top + 4 * l + 8
    jc = j_series(prec)
    j = Laurent(-1, jc)
    # powers j^k for k <= l with exponents up to l*top
    powers = [Laurent(0, [1])]
    for _ in range(l):
        powers.append(powers[-1].mul(j, l * top + 2 * l + 2))
    # power sums of the l conjugates j(zeta^r q^(1/l)): p_k = l * sum_m [j^k]_{m l} q^m
    psums = [None]
    for k in range(1, l + 1):
        lo = -(k // l)
        coeffs = []
        for m in range(lo, top + 1):
            coeffs.append(l * powers[k].coeff(m * l))
        psums.append(Laurent(lo, coeffs))
    # Newton: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i
    e = [Laurent(0, [1])]
    for k in range(1, l + 1):
        acc = {}
        for i in range(1, k + 1):
            term = e[k - i].mul(psums[i], top)
            sign = 1 if i % 2 == 1 else -1
            for idx, v in enumerate(term.c):
                ex = term.val + idx
                acc[ex] = acc.get(ex, 0) + sign * v
        lo = min(acc) if acc else 0
        coeffs = []
        for ex in range(lo, top + 1):
            v = acc.get(ex, 0)
            assert v % k == 0
            coeffs.append(v // k)
        e.append(Laurent(lo, coeffs))
    # f(X) = sum_k (-1)^k e_k X^(l-k); Phi = (X - J) f with J = j(q^l)
    jl_c = {}
    for idx, v in enumerate(jc):
        ex = (idx - 1) * l
        if ex > top:
            break
        jl_c[ex] = v
    J = Laurent(-l, [jl_c.get(ex, 0) for ex in range(-l, top + 1)])
    fcoef = []  # fcoef[d] = coefficient of X^d in f
    for d in range(l + 1):
        k = l - d
        s = 1 if k % 2 == 0 else -1
        fcoef.append(Laurent(e[k].val, [s * v for v in e[k].c]))
    phi_x = []  # coefficient of X^d in Phi, d = 0..l+1
    for d in range(l + 2):
        acc = {}
        if d >= 1:
            src = fcoef[d - 1]
            for idx, v in enumerate(src.c):
                acc[src.val + idx] = acc.get(src.val + idx, 0) + v
        if d <= l:
            prod = J.mul(fcoef[d], 0)
            for idx, v in enumerate(prod.c):
                acc[prod.val + idx] = acc.get(prod.val + idx, 0) - v
        phi_x.append(acc)
    # express each as polynomial in j of degree <= l+1
    jpow = [Laurent(0, [1])]
    for _ in range(l + 1):
        jpow.append(jpow[-1].mul(j, l + 4))
    table = {}
    for d in range(l + 2):
        acc = dict(phi_x[d])
        poly = [0] * (l + 2)
        for deg in range(l + 1, -1, -1):
            c = acc.get(-deg, 0)
            if c:
                poly[deg] = c
                for idx, v in enumerate(jpow[deg].c):
                    ex = jpow[deg].val + idx
                    if ex > 0:
                        break
                    acc[ex] = acc.get(ex, 0) - c * v
        for ex, v in acc.items():
            assert ex > 0 or v == 0, (l, d, ex, v)
        for deg, c in enumerate(poly):
            if c:
                table[(d, deg)] = c
    for (a, b), c in table.items():
        assert table.get((b, a)) == c, "asymmetric"
    return table


def main():
    out = Path(sys.argv[1])
    ls = [int(x) for x in sys.argv[2:]] or [2, 3, 5, 7, 11, 13, 17, 19]
    out.mkdir(parents=True, exist_ok=True)
    for l in ls:
        table = modpoly(l)
        lines = [f"# classical modular polynomial Phi_{l}(X, Y)", "# i j c  (coefficient of X^i Y^j; j <= i, symmetric)"]
        for (a, b) in sorted(table, reverse=True):
            if b <= a:
                lines.append(f"{a} {b} {table[(a, b)]}")
        (out / f"phi_{l}.txt").write_text("\n".join(lines) + "\n")
        print(f"phi_{l}: {len(lines) - 2} entries", file=sys.stderr)


if __name__ == "__main__":
    main()
