"""Fixed-modulus arithmetic in Z_p[zeta_p] on plain integer vectors.

Vectors hold the p-1 coordinates over 1, zeta, ..., zeta^(p-2) as ints in
[0, p**k).  Every routine here is an exact function of the integer lift it
is given; precision bookkeeping is the caller's job.
"""

from __future__ import annotations

import math


def reduce_cyclotomic(c: list[int], p: int, mod: int) -> list[int]:
    """Reduce a coefficient list (any length) modulo Phi_p and ``mod``."""
    folded = [0] * p
    for i, x in enumerate(c):
        folded[i % p] += x
    top = folded[p - 1]
    return [(x - top) % mod for x in folded[:p - 1]]


def mul(a: list[int], b: list[int], p: int, mod: int) -> list[int]:
    n = p - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return reduce_cyclotomic(prod, p, mod)


def power(a: list[int], e: int, p: int, mod: int) -> list[int]:
    result = [1] + [0] * (p - 2)
    base = a
    while e:
        if e & 1:
            result = mul(result, base, p, mod)
        e >>= 1
        if e:
            base = mul(base, base, p, mod)
    return result


def residue_mod_pi(a: list[int], p: int) -> int:
    # zeta = 1 modulo pi, so reduction mod pi evaluates at zeta = 1
    return sum(a) % p


def inverse_unit(a: list[int], p: int, mod: int, digits: int) -> list[int]:
    """Inverse of a unit modulo ``mod == p**digits`` by Newton's iteration."""
    r = residue_mod_pi(a, p)
    if r == 0:
        raise ZeroDivisionError("not a unit of Z_p[zeta_p]")
    x = [pow(r, -1, p)] + [0] * (p - 2)
    # error valuation (in units of 1/(p-1)) doubles each round
    for _ in range(math.ceil(math.log2(digits * (p - 1) + 1)) + 1):
        ax = mul(a, x, p, mod)
        two_minus = [(-c) % mod for c in ax]
        two_minus[0] = (two_minus[0] + 2) % mod
        x = mul(x, two_minus, p, mod)
    return x


def exact_divide(a: list[int], pk: int) -> list[int]:
    out = []
    for c in a:
        q, r = divmod(c, pk)
        if r:
            raise ArithmeticError("coordinate not divisible")
        out.append(q)
    return out


def log_series_steps(p: int, digits: int) -> tuple[int, int]:
    """Pick (r, K): raise to p**r, then sum K terms of log(1+t).

    After r p-th powers the argument t has valuation >= r + 1/(p-1); every
    term k > K then has valuation >= digits + r.  The pair minimizes a crude
    cost estimate (one p-th power costs about 1.5*log2(p) products).
    """
    best = None
    for r in range(0, 60):
        e = r + 1 / (p - 1)
        target = digits + r
        k = 1
        # k*e - log_p(k) is increasing for k >= 2 once e >= 1/(p-1)
        while (k + 1) * e - math.log(k + 1, p) < target + 1e-9:
            k += 1
        cost = r * 1.5 * math.log2(p) + k
        if best is None or cost < best[0]:
            best = (cost, r, k)
    return best[1], best[2]


def log_one_unit(z: list[int], p: int, digits: int) -> list[int]:
    """log(z) modulo p**digits for z = 1 mod pi (z taken as an exact lift)."""
    r, K = log_series_steps(p, digits)
    s_max = int(math.log(K, p)) + 1 if K > 1 else 0
    work = digits + r + s_max + 1
    mod = p ** work
    w = [c % mod for c in z]
    for _ in range(r):
        w = power(w, p, p, mod)
    t = list(w)
    t[0] = (t[0] - 1) % mod
    total = [0] * (p - 1)
    tk = t
    for k in range(1, K + 1):
        if k > 1:
            tk = mul(tk, t, p, mod)
        s = 0
        kk = k
        while kk % p == 0:
            kk //= p
            s += 1
        inv = pow(kk, -1, mod)
        term = exact_divide(tk, p ** s) if s else tk
        sign = 1 if k % 2 else -1
        for i, c in enumerate(term):
            total[i] += sign * c * inv
    valid = p ** (work - s_max)
    pr = p ** r
    out_mod = p ** digits
    out = []
    for c in total:
        q, rem = divmod(c % valid, pr)
        if rem:
            raise ArithmeticError("log series lost divisibility by p**r")
        out.append(q % out_mod)
    # log(z**(p**r)) = p**r * log(z)
    return out


def log_one_unit_int(z: int, p: int, digits: int) -> int:
    """Scalar version of ``log_one_unit`` for z = 1 mod p."""
    r = max(1, int(math.isqrt(digits)) // 2)
    e = r + 1
    target = digits + r
    K = 1
    while (K + 1) * e - math.log(K + 1, p) < target + 1e-9:
        K += 1
    s_max = int(math.log(K, p)) + 1 if K > 1 else 0
    work = digits + r + s_max + 1
    mod = p ** work
    w = pow(z, p ** r, mod)
    t = (w - 1) % mod
    total = 0
    tk = 1
    for k in range(1, K + 1):
        tk = tk * t % mod
        s = 0
        kk = k
        while kk % p == 0:
            kk //= p
            s += 1
        term = tk // p ** s * pow(kk, -1, mod)
        total += term if k % 2 else -term
    q, rem = divmod(total % p ** (work - s_max), p ** r)
    if rem:
        raise ArithmeticError("log series lost divisibility by p**r")
    return q % p ** digits
