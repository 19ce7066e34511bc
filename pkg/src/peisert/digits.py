"""Base-p digit combinatorics modulo q - 1 for q = p^(2t), p = 3 mod 4.

Residues are handled through their unique representative in 1..q-2,
written with exactly 2t base-p digits.  carry_count(i, j) is the number
of carries in the cyclic base-p addition of i and j modulo q - 1, which
is also (s(i) + s(j) - s(i+j)) / (p - 1) for digit sums s.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from peisert.field import is_prime

# digit-sum tables pay off once per-call divmod loops dominate
_TABLE_THRESHOLD = 4096


@dataclass(frozen=True)
class CarryContext:
    p: int
    t: int
    m: int = field(init=False)
    q: int = field(init=False)
    r: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.p % 4 != 3:
            raise ValueError(f"p must be 3 mod 4, got {self.p}")
        if self.t < 1:
            raise ValueError(f"t must be positive, got {self.t}")
        object.__setattr__(self, "m", 2 * self.t)
        object.__setattr__(self, "q", self.p**self.m)
        object.__setattr__(self, "r", (self.q - 1) // 4)
        object.__setattr__(self, "_sums", None)

    def _reduce(self, j: int) -> int:
        j %= self.q - 1
        if j == 0:
            raise ValueError("residue 0 mod q-1 has no digit expansion here")
        return j

    def p_digits(self, j: int) -> tuple[int, ...]:
        """The 2t base-p digits (a_0, ..., a_{2t-1}) of j reduced to 1..q-2."""
        j = self._reduce(j)
        digits = []
        for _ in range(self.m):
            j, d = divmod(j, self.p)
            digits.append(d)
        return tuple(digits)

    def digit_sum(self, j: int) -> int:
        j = self._reduce(j)
        table = self._sum_table()
        if table is not None:
            return int(table[j])
        s = 0
        while j:
            j, d = divmod(j, self.p)
            s += d
        return s

    def _sum_table(self):
        if self.q < _TABLE_THRESHOLD:
            return None
        if self._sums is None:
            vals = np.arange(self.q - 1, dtype=np.int64)
            sums = np.zeros(self.q - 1, dtype=np.int64)
            for _ in range(self.m):
                vals, d = np.divmod(vals, self.p)
                sums += d
            object.__setattr__(self, "_sums", sums)
        return self._sums

    def carry_count(self, i: int, j: int) -> int:
        """Carries in the cyclic addition of i and j modulo q - 1."""
        if (i + j) % (self.q - 1) == 0:
            raise ValueError("i + j = 0 mod q-1 is excluded")
        s = self.digit_sum(i) + self.digit_sum(j) - self.digit_sum(i + j)
        c, rem = divmod(s, self.p - 1)
        if rem:
            raise AssertionError("digit sums inconsistent with carry formula")
        return c

    def class_reps(self) -> list[tuple[int, int, int, int]]:
        """The (q-5)/4 shifted classes {i, i+r, i+2r, i+3r}, reps i = 1..r-1."""
        r = self.r
        return [(i, i + r, i + 2 * r, i + 3 * r) for i in range(1, r)]

    def __repr__(self):
        return f"CarryContext(p={self.p}, t={self.t})"
