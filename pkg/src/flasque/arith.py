"""Elementary integer arithmetic used by several modules."""
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple:
    """Prime factorization as a sorted tuple of (p, exponent)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def mobius(n: int) -> int:
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def multiplicative_order(a: int, m: int) -> int:
    """Order of a in (Z/m)^x; m = 1 gives 1."""
    if m == 1:
        return 1
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    # the order divides phi(m); strip prime factors while possible
    k = euler_phi(m)
    for p, _ in factorize(k):
        while k % p == 0 and pow(a, k // p, m) == 1:
            k //= p
    return k


def primitive_root(m: int) -> int:
    """Smallest generator of (Z/m)^x; raises if the group is not cyclic."""
    if m <= 2:
        return 1
    phi = euler_phi(m)
    for g in range(2, m):
        if gcd(g, m) == 1 and multiplicative_order(g, m) == phi:
            return g
    raise ValueError(f"(Z/{m})^x is not cyclic")


def crt(residues, moduli) -> int:
    x, mod = 0, 1
    for r, m in zip(residues, moduli):
        # solve x + mod*t = r (mod m)
        t = ((r - x) * pow(mod, -1, m)) % m if m > 1 else 0
        x += mod * t
        mod *= m
    return x % mod
