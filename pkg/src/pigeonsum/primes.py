"""Deterministic Miller-Rabin for 64-bit integers and uniform prime sampling."""

from __future__ import annotations

# these bases are exact for every n < 3.3e24
_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sample_prime(P: int, rng) -> int:
    """Uniform prime in [P, 2P] by rejection (Bertrand guarantees one exists)."""
    if P < 2:
        raise ValueError(f"P = {P} < 2")
    while True:
        c = int(rng.integers(P, 2 * P + 1))
        if is_prime(c):
            return c
