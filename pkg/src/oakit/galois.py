"""Table-driven arithmetic over GF(q) for prime powers q <= 64.

Elements are integers 0..q-1.  For q = p^m the integer ``v`` stands for the
polynomial whose coefficient of x^i is the i-th base-p digit of ``v``, so 0
is the additive and 1 the multiplicative identity, and for prime q the labels
are the ordinary residues mod p.

Extension fields are reduced modulo the Conway polynomial for (p, m), listed
in ``IRREDUCIBLE`` with coefficients from the constant term upwards.  Every
entry is primitive, so x generates the multiplicative group and the
exp/log tables are indexed by powers of x.  Prime fields use the smallest
primitive root instead.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DivideByZero, EvenCharacteristic, NotPrimePower, Unsupported

MAX_ORDER = 64

IRREDUCIBLE = {
    (2, 2): (1, 1, 1),              # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),           # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),        # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),     # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 1, 1, 0, 1),  # x^6 + x^4 + x^3 + x + 1
    (3, 2): (2, 2, 1),              # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),           # x^3 + 2x + 1
    (5, 2): (2, 4, 1),              # x^2 + 4x + 2
    (7, 2): (3, 6, 1),              # x^2 + 6x + 3
}


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrimePower(f"{q} has at least two distinct prime factors")
    return p, m


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except NotPrimePower:
        return False
    return True


def _primitive_root(p: int) -> int:
    for g in range(1, p):
        seen = {pow(g, e, p) for e in range(p - 1)}
        if len(seen) == p - 1:
            return g
    raise AssertionError("unreachable")


class GaloisField:
    """GF(q) with precomputed q x q operation tables.

    The tables are numpy arrays, so ``f.add(a, b)`` and friends accept ints or
    integer arrays of matching shape.  Instances are immutable; obtain them
    through :func:`make_field`, which caches one instance per order.
    """

    def __init__(self, q: int):
        p, m = prime_power(q)
        if q > MAX_ORDER:
            raise Unsupported(f"GF({q}) exceeds the supported order {MAX_ORDER}")
        self.q, self.p, self.m = q, p, m
        self.polynomial = IRREDUCIBLE.get((p, m))

        digits = np.array([[(v // p**i) % p for i in range(m)] for v in range(q)])
        weights = p ** np.arange(m)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

        exp = np.zeros(q - 1, dtype=np.int64)
        if m == 1:
            g = _primitive_root(p)
            exp[:] = [pow(g, e, p) for e in range(q - 1)]
        else:
            coeffs = np.array(self.polynomial[:-1])
            cur = np.zeros(m, dtype=np.int64)
            cur[0] = 1
            for e in range(q - 1):
                exp[e] = int(cur @ weights)
                top = cur[-1]
                cur = np.concatenate(([0], cur[:-1]))
                cur = (cur - top * coeffs) % p
        if len(set(exp.tolist())) != q - 1:
            raise AssertionError(f"generator for GF({q}) is not primitive")
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)

        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]

        neg = np.argmin(add, axis=1)  # add[a, neg[a]] == 0
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(-log[nz]) % (q - 1)]

        self.exp_table, self.log_table = exp, log
        self.add_table, self.mul_table = add.astype(np.int64), mul
        self.neg_table, self.inv_table = neg.astype(np.int64), inv
        self.sub_table = self.add_table[:, self.neg_table]
        for t in (self.exp_table, self.log_table, self.add_table, self.mul_table,
                  self.neg_table, self.inv_table, self.sub_table):
            t.setflags(write=False)

        if p != 2:
            squares = np.zeros(q, dtype=bool)
            squares[mul[np.arange(q), np.arange(q)]] = True
            chi = np.where(squares, 1, -1)
            chi[0] = 0
            self._chi = chi
            self._chi.setflags(write=False)
        else:
            self._chi = None

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    @property
    def elements(self) -> range:
        return range(self.q)

    def _check(self, *xs):
        for x in xs:
            arr = np.asarray(x)
            if arr.size and (arr.min() < 0 or arr.max() >= self.q):
                raise ValueError(f"element outside GF({self.q})")

    @staticmethod
    def _out(x):
        return int(x) if np.ndim(x) == 0 else x

    def add(self, a, b):
        return self._out(self.add_table[a, b])

    def sub(self, a, b):
        return self._out(self.sub_table[a, b])

    def neg(self, a):
        return self._out(self.neg_table[a])

    def mul(self, a, b):
        return self._out(self.mul_table[a, b])

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivideByZero(f"0 has no inverse in GF({self.q})")
        return self._out(self.inv_table[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp_table[(self.log_table[a] * e) % (self.q - 1)])

    def quadratic_character(self, beta):
        """+1 for nonzero squares, 0 for zero, -1 otherwise (odd q only)."""
        if self._chi is None:
            raise EvenCharacteristic(f"quadratic character is only defined here for odd q, got {self.q}")
        self._check(beta)
        return self._out(self._chi[beta])


@lru_cache(maxsize=None)
def make_field(q: int) -> GaloisField:
    return GaloisField(q)


def gf_ops(field: GaloisField, a: int, b: int | None, op: str) -> int:
    """Dispatch ``op`` in {"add", "sub", "mul", "inv"} on ``field``; ``inv`` ignores ``b``."""
    if op == "inv":
        return field.inv(a)
    if op not in ("add", "sub", "mul"):
        raise ValueError(f"unknown field operation {op!r}")
    return getattr(field, op)(a, b)


def quadratic_character(field: GaloisField, beta):
    return field.quadratic_character(beta)
