"""Finite field GF(p^n) with discrete-log tables.

Elements are encoded as integers in 0..q-1: the polynomial
a_0 + a_1*x + ... + a_{n-1}*x^{n-1} is stored as sum(a_i * p^i).
The encoding doubles as the vertex ordering for all graph matrices
built on top of the field, so construction must be deterministic:
the modulus is the lexicographically smallest monic irreducible of
degree n (non-leading coefficients compared by their base-p encoding)
and the primitive element is the one with the smallest encoding.
"""

from __future__ import annotations

DEFAULT_MAX_FIELD_SIZE = 10**7


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _poly_mul_mod(a, b, modulus, p):
    """Product of coefficient lists a, b reduced by a monic modulus over GF(p)."""
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for k in range(n):
                prod[d - n + k] = (prod[d - n + k] - c * modulus[k]) % p
    out = prod[:n]
    while len(out) < n:
        out.append(0)
    return out


def _poly_pow_mod(base, exp, modulus, p):
    n = len(modulus) - 1
    result = [0] * n
    result[0] = 1
    acc = list(base)
    while exp:
        if exp & 1:
            result = _poly_mul_mod(result, acc, modulus, p)
        exp >>= 1
        if exp:
            acc = _poly_mul_mod(acc, acc, modulus, p)
    return result


def _is_irreducible(modulus, p):
    """Rabin test: x^(p^n) = x mod f, and x^(p^(n/l)) - x coprime to f for prime l | n."""
    n = len(modulus) - 1
    x = [0, 1] if n > 1 else [0]
    if n == 1:
        return True
    xq = _poly_pow_mod([0, 1], p**n, modulus, p)
    if xq != x + [0] * (n - 2):
        return False
    for ell in prime_factors(n):
        d = n // ell
        xd = _poly_pow_mod([0, 1], p**d, modulus, p)
        diff = list(xd)
        diff[1] = (diff[1] - 1) % p
        if not _poly_gcd_is_one(diff, modulus, p):
            return False
    return True


def _poly_gcd_is_one(a, modulus, p):
    a = _trim(a)
    b = _trim(list(modulus))
    while a:
        b = _poly_rem(b, a, p)
        a, b = b, a
    return len(b) == 1


def _poly_rem(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


class FieldTable:
    """GF(p^n) with log/antilog tables over a canonical modulus.

    Attributes:
        p, n, q: characteristic, extension degree, field size.
        modulus: monic irreducible, coefficient list of length n+1.
        beta: encoding of the chosen primitive element.
        log: log[e] is the exponent m with beta^m = e, for e in 1..q-1.
        antilog: antilog[m] is the encoding of beta^m, m in 0..q-2.
    """

    def __init__(self, p: int, n: int, max_size: int = DEFAULT_MAX_FIELD_SIZE):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if n < 1:
            raise ValueError(f"extension degree must be positive, got {n}")
        q = p**n
        if q > max_size:
            raise ValueError(f"field size {q} exceeds cap {max_size}")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = self._smallest_irreducible()
        self._digits = [self._decode(e) for e in range(q)]
        self.beta = self._smallest_primitive()
        self.log = [0] * q  # log[0] unused
        self.antilog = [0] * (q - 1)
        e = 1
        for m in range(q - 1):
            self.antilog[m] = e
            self.log[e] = m
            e = self._mul_by_beta(e)
        if e != 1:
            raise AssertionError("primitive element order mismatch")

    # -- construction helpers ------------------------------------------

    def _smallest_irreducible(self):
        p, n = self.p, self.n
        if n == 1:
            return [0, 1]  # x itself; GF(p) needs no extension
        for enc in range(p**n):
            coeffs = self._decode_raw(enc, p, n) + [1]
            if _is_irreducible(coeffs, p):
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    @staticmethod
    def _decode_raw(e, p, n):
        digits = []
        for _ in range(n):
            e, d = divmod(e, p)
            digits.append(d)
        return digits

    def _decode(self, e):
        return self._decode_raw(e, self.p, self.n)

    def _encode(self, digits):
        e = 0
        for d in reversed(digits):
            e = e * self.p + d
        return e

    def _smallest_primitive(self):
        factors = prime_factors(self.q - 1)
        for e in range(1, self.q):
            if all(self._pow_raw(e, (self.q - 1) // f) != 1 for f in factors):
                return e
        raise AssertionError("no primitive element found")

    def _mul_raw(self, a, b):
        prod = _poly_mul_mod(self._digits[a], self._digits[b], self.modulus, self.p)
        return self._encode(prod)

    def _pow_raw(self, a, exp):
        result = 1
        acc = a
        while exp:
            if exp & 1:
                result = self._mul_raw(result, acc)
            exp >>= 1
            if exp:
                acc = self._mul_raw(acc, acc)
        return result

    def _mul_by_beta(self, e):
        return self._mul_raw(e, self.beta)

    # -- element arithmetic on encodings -------------------------------

    def add(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        return self._encode([(x - y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._encode([(-x) % self.p for x in self._digits[a]])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.antilog[(-self.log[a]) % (self.q - 1)]

    def element_digits(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits[a])

    # -- quartic structure ----------------------------------------------

    def quartic_class(self, x: int) -> int:
        """Index j in 0..3 of the coset beta^j * C_0 containing x."""
        if x == 0:
            raise ValueError("0 has no quartic class")
        if self.q % 4 != 1:
            raise ValueError(f"q = {self.q} is not 1 mod 4")
        return self.log[x] % 4

    def connection_set(self, kind: str) -> tuple[int, ...]:
        """Cayley connection set, sorted by encoding.

        peisert: quartic classes 0 and 1 (requires p = 3 mod 4, n even).
        paley: the nonzero squares, classes 0 and 2 (requires q = 1 mod 4).
        """
        if kind == "peisert":
            if self.p % 4 != 3:
                raise ValueError(f"peisert graphs need p = 3 mod 4, got p = {self.p}")
            if self.n % 2 != 0:
                raise ValueError(f"peisert graphs need even degree, got n = {self.n}")
            classes = (0, 1)
        elif kind == "paley":
            if self.q % 4 != 1:
                raise ValueError(f"paley graphs need q = 1 mod 4, got q = {self.q}")
            classes = (0, 2)
        else:
            raise ValueError(f"unknown graph kind {kind!r}")
        return tuple(
            x for x in range(1, self.q) if self.quartic_class(x) in classes
        )

    def __repr__(self):
        return f"FieldTable(p={self.p}, n={self.n})"


def build_field(p: int, n: int, max_size: int = DEFAULT_MAX_FIELD_SIZE) -> FieldTable:
    return FieldTable(p, n, max_size=max_size)
