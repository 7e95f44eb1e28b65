#!/usr/bin/env python3
"""Writes data/golden/appendix_p{2,3,5}.json from closed forms, without using the C++ library.

G = G_a,2 over F_p with divided-power basis d_0..d_{p^2-1} of k[G], H = K = G_a,1,
O(K) with basis t^0..t^{p-1}, and B = B_lambda.
"""

import json
import math
import pathlib
import sys


def binom_mod(m, n, p):
    if n < 0 or n > m:
        return 0
    return math.comb(m, n) % p


def inv(a, p):
    return pow(a, p - 2, p)


def sparse(shape, cells, p):
    entries = [{"indices": list(idx), "value": str(v % p)} for idx, v in sorted(cells.items()) if v % p]
    return {"shape": list(shape), "entries": entries}


def case(p, lam):
    n, m = p * p, p
    sign = lambda k: 1 if k % 2 == 0 else p - 1
    fact_inv = [inv(math.factorial(i) % p, p) for i in range(p)]

    pi = {(x // p, x): 1 for x in range(n) if x % p == 0}
    gamma = {(p * x, x): 1 for x in range(m)}
    gamma_inv = {(p * x, x): sign(x) for x in range(m)}
    eta = {(i, i): 1 for i in range(p)}

    # eta^-1 = (gamma pi) * S: d_n -> sum_{a+b=n} gamma(pi(d_a)) S(d_b), with d_a d_b = binom(a+b, a) d_{a+b}
    eta_inv = {}
    for k in range(n):
        total = 0
        for a in range(0, k + 1, p):
            total += binom_mod(k, a, p) * sign(k - a)
        if total % p:
            eta_inv[(k, k)] = total % p

    sigma = {(0, 0, 0): 1}
    tau = {(0, 0): 1}
    lam_p = pow(lam, p, p)
    for j in range(1, p):
        tau[(j * p + (p - j), 1)] = lam_p * fact_inv[j] * fact_inv[p - j]

    b = {(i, i): pow(lam, i, p) * fact_inv[i] for i in range(p)}
    dim_d = p * m
    r = {}
    for i in range(p):
        r[((i * m) * dim_d + i * m,)] = pow(lam, i, p) * fact_inv[i]

    return {
        "lambda": str(lam),
        "pi": sparse((m, n), pi, p),
        "gamma": sparse((n, m), gamma, p),
        "gamma_inv": sparse((n, m), gamma_inv, p),
        "eta": sparse((n, n), eta, p),
        "eta_inv": sparse((n, n), eta_inv, p),
        "sigma": sparse((m, m, p), sigma, p),
        "tau": sparse((p * p, m), tau, p),
        "B": sparse((p, p), b, p),
        "B_is_hopf_morphism": True,
        "R": sparse((dim_d * dim_d,), r, p),
    }


def document(p):
    return {
        "schema_version": 1,
        "kind": "appendix",
        "p": p,
        "field": f"p{p}",
        "cases": [case(p, lam) for lam in range(p)],
    }


def main():
    root = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent
    out = root / "data" / "golden"
    out.mkdir(parents=True, exist_ok=True)
    for p in (2, 3, 5):
        (out / f"appendix_p{p}.json").write_text(json.dumps(document(p), indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
