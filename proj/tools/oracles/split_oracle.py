"""Regenerates tests/acceptance/split_oracle.inc from sympy factorizations mod p."""
import random
import sys

from sympy import Poly, gcd, isprime, symbols

x = symbols("x")
PRIMES = [p for p in range(2, 101) if isprime(p)]


def dedekind_ok(f, p):
    # Z[x]/(f) is p-maximal iff gcd(fbar, gbar, hbar) = 1 with f = prod g_i^e_i + p*h
    fp = Poly(f, x, modulus=p)
    _, facs = fp.factor_list()
    g = Poly(1, x)
    for fac, e in facs:
        g *= Poly(fac.as_expr(), x)
    mono = Poly(1, x)
    for fac, e in facs:
        mono *= Poly(fac.as_expr(), x) ** e
    h = (Poly(f, x) - mono)
    coeffs = [c // p for c in h.all_coeffs()]
    assert all(c % p == 0 for c in h.all_coeffs())
    hp = Poly(coeffs, x, modulus=p)
    t = Poly(1, x, modulus=p)
    for fac, e in facs:
        if e > 1:
            t *= Poly(fac.as_expr(), x, modulus=p)
    if t.degree() == 0:
        return True
    return gcd(t, hp).degree() == 0


def main(seed=20241014, count=200):
    rng = random.Random(seed)
    rows = []
    while len(rows) < count:
        n = rng.randint(2, 8)
        coeffs = [rng.randint(-9, 9) for _ in range(n)] + [1]
        f = Poly(list(reversed(coeffs)), x)
        if not f.is_irreducible:
            continue
        p = rng.choice(PRIMES)
        if not dedekind_ok(f, p):
            continue
        _, facs = Poly(f, x, modulus=p).factor_list()
        split = sorted((fac.degree(), e) for fac, e in facs)
        rows.append((coeffs, p, split))
    out = sys.stdout
    out.write("// generated by tools/oracles/split_oracle.py; ascending coefficients, prime, sorted (f, e)\n")
    for coeffs, p, split in rows:
        c = ", ".join(str(v) for v in coeffs)
        s = ", ".join("{%d, %d}" % fe for fe in split)
        out.write("{{%s}, %d, {%s}},\n" % (c, p, s))


if __name__ == "__main__":
    main()
