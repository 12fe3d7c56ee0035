"""Arithmetic in the binary extension fields GF(2^w), 2 <= w <= 8.

Field elements are plain Python ints in [0, 2^w - 1], read as coefficient
bitmasks in the polynomial basis (bit i is the coefficient of x^i).
Addition is XOR; multiplication goes through discrete-log tables built
from a fixed irreducible modulus for each w.  The modulus is chosen so
that x itself is primitive, which makes alpha = 2 a generator in every
supported field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as _field
from functools import lru_cache

import numpy as np

# Irreducible modulus per extension degree, encoded as an integer bitmask
# including the x^w term.  x is primitive for each of these, so alpha = x
# generates the multiplicative group.  w=3 uses x^3 + x + 1, hence
# alpha^3 = alpha + 1 in GF(8).
MODULI = {
    2: 0b111,          # x^2 + x + 1
    3: 0b1011,         # x^3 + x + 1
    4: 0b10011,        # x^4 + x + 1
    5: 0b100101,       # x^5 + x^2 + 1
    6: 0b1000011,      # x^6 + x + 1
    7: 0b10000011,     # x^7 + x + 1
    8: 0b100011101,    # x^8 + x^4 + x^3 + x^2 + 1
}


@dataclass(frozen=True)
class FieldContext:
    """Immutable GF(2^w) arithmetic context.

    Attributes
    ----------
    w : extension degree (bits per symbol)
    modulus : irreducible polynomial bitmask of degree w
    q : field size, 2^w
    alpha : the generator (residue class of x, always the integer 2)
    exp_table : exp_table[i] = alpha^i for 0 <= i <= q-1 (period q-1)
    log_table : log_table[a] = discrete log of a; log_table[0] = -1 sentinel
    """

    w: int
    modulus: int = _field(default=0)
    q: int = _field(init=False, compare=False, default=0)
    alpha: int = _field(init=False, compare=False, default=2)
    exp_table: tuple = _field(init=False, compare=False, repr=False, default=())
    log_table: tuple = _field(init=False, compare=False, repr=False, default=())

    def __post_init__(self):
        if self.w not in MODULI:
            raise ValueError(f"unsupported extension degree w={self.w} (need 2..8)")
        if self.modulus == 0:
            object.__setattr__(self, "modulus", MODULI[self.w])
        q = 1 << self.w
        object.__setattr__(self, "q", q)
        exp = [0] * q
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & q:
                x ^= self.modulus
        if x != 1:
            raise ValueError(f"x is not primitive modulo {self.modulus:#b}")
        exp[q - 1] = 1  # alpha^(q-1) = 1, completing one full period
        object.__setattr__(self, "exp_table", tuple(exp))
        object.__setattr__(self, "log_table", tuple(log))

    # -- scalar operations ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^w)")
        return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0 in GF(2^w)")
        if a == 0:
            return 0
        return self.exp_table[(self.log_table[a] - self.log_table[b]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0 in GF(2^w)")
            return 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def alpha_pow(self, e: int) -> int:
        return self.exp_table[e % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order: smallest e >= 1 with a^e = 1."""
        if a == 0:
            raise ZeroDivisionError("order of 0 in GF(2^w)")
        e, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            e += 1
        return e

    # -- vectorized table views (lazy, cached on first use) ----------------

    @property
    def mul_table(self) -> np.ndarray:
        """Full q x q multiplication table as uint8, for numpy fancy indexing."""
        table = getattr(self, "_mul_table", None)
        if table is None:
            q = self.q
            log = np.array(self.log_table, dtype=np.int32)
            exp = np.array(self.exp_table[: q - 1], dtype=np.uint8)
            a = np.arange(q, dtype=np.int32)
            table = exp[(log[a][:, None] + log[a][None, :]) % (q - 1)]
            table[0, :] = 0
            table[:, 0] = 0
            table.setflags(write=False)
            object.__setattr__(self, "_mul_table", table)
        return table

    @property
    def inv_table(self) -> np.ndarray:
        table = getattr(self, "_inv_table", None)
        if table is None:
            table = np.zeros(self.q, dtype=np.uint8)
            for a in range(1, self.q):
                table[a] = self.inv(a)
            table.setflags(write=False)
            object.__setattr__(self, "_inv_table", table)
        return table

    def __repr__(self):
        return f"FieldContext(w={self.w})"


@lru_cache(maxsize=None)
def field(w: int) -> FieldContext:
    """Shared context for GF(2^w) with the fixed modulus for that w."""
    return FieldContext(w)
