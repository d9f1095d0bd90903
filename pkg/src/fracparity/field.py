"""Prime field arithmetic and seeded uniform sampling over GF(p)."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, NotPrime, PrimeTooSmall

DEFAULT_PRIME = 2**31 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    # deterministic Miller-Rabin, valid for all p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Prime:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def require_capacity(self, m: int, n: int) -> None:
        # randomized rank identities need at least 16*m*n sample points
        if self.p < 16 * m * n:
            raise PrimeTooSmall(f"p = {self.p} < 16*{m}*{n}")


def add(a: int, b: int, p: int) -> int:
    return (a + b) % p


def sub(a: int, b: int, p: int) -> int:
    return (a - b) % p


def mul(a: int, b: int, p: int) -> int:
    return a * b % p


def neg(a: int, p: int) -> int:
    return -a % p


def inv(a: int, p: int) -> int:
    if a % p == 0:
        raise DivisionByZero("inverse of 0")
    return pow(a, -1, p)


def div(a: int, b: int, p: int) -> int:
    return a * inv(b, p) % p


def derive_seed(seed: int, label: str) -> int:
    """Deterministic 64-bit child seed for an independent stream."""
    h = hashlib.blake2b(f"{seed}/{label}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


class FieldSampler:
    """Seeded uniform sampler over [0, p), bias-free by rejection."""

    def __init__(self, p: int, seed: int):
        self.p = p
        self._rng = np.random.default_rng(seed)
        self._bits = (p - 1).bit_length() if p > 1 else 1

    def draw(self) -> int:
        return int(self.draw_array(1)[0])

    def draw_array(self, shape) -> np.ndarray:
        size = int(np.prod(shape)) if not isinstance(shape, int) else shape
        out = np.empty(size, dtype=np.int64)
        filled = 0
        while filled < size:
            cand = self._rng.integers(0, 1 << self._bits, size=size - filled,
                                      dtype=np.int64)
            good = cand[cand < self.p]
            out[filled:filled + good.size] = good
            filled += good.size
        if isinstance(shape, int):
            return out
        return out.reshape(shape)

    def nonzero(self) -> int:
        while True:
            v = self.draw()
            if v != 0:
                return v
