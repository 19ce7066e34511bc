"""Exact arithmetic in the Galois ring GR(p^k, n).

GR(p^k, n) is (Z/p^k)[x]/(f) for a monic degree-n polynomial f that
reduces to an irreducible polynomial mod p.  Here f is the unique Hensel
lift of the field modulus that divides x^q - x, so the class of x is a
root of unity and the ring carries a clean Teichmuller section.

Ring elements are length-n tuples of ints in [0, p^k), the coefficient
vector in the power basis of x.  Reducing coordinates mod p recovers
the field's element encoding digit for digit.
"""

from __future__ import annotations

from peisert.field import FieldTable


class _PolyRing:
    """(Z/modulus_int)[x]/(f) for a monic integer coefficient list f."""

    def __init__(self, f, pk, p):
        self.f = [c % pk for c in f]
        self.pk = pk
        self.p = p
        self.n = len(f) - 1

    def zero(self):
        return (0,) * self.n

    def one(self):
        return (1,) + (0,) * (self.n - 1)

    def gen(self):
        if self.n == 1:
            return ((-self.f[0]) % self.pk,)
        return (0, 1) + (0,) * (self.n - 2)

    def from_int(self, c):
        return (c % self.pk,) + (0,) * (self.n - 1)

    def add(self, a, b):
        pk = self.pk
        return tuple((x + y) % pk for x, y in zip(a, b))

    def sub(self, a, b):
        pk = self.pk
        return tuple((x - y) % pk for x, y in zip(a, b))

    def neg(self, a):
        pk = self.pk
        return tuple((-x) % pk for x in a)

    def scalar(self, c, a):
        pk = self.pk
        return tuple((c * x) % pk for x in a)

    def mul(self, a, b):
        n, pk, f = self.n, self.pk, self.f
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d] % pk
            if c:
                prod[d] = 0
                base = d - n
                for t in range(n):
                    prod[base + t] -= c * f[t]
        return tuple(x % pk for x in prod[:n])

    def pow(self, a, exp):
        result = self.one()
        acc = a
        while exp:
            if exp & 1:
                result = self.mul(result, acc)
            exp >>= 1
            if exp:
                acc = self.mul(acc, acc)
        return result

    def frobenius_fix(self, z, q, max_iter):
        """Limit of z -> z^q, the Teichmuller representative over z mod p."""
        for _ in range(max_iter):
            w = self.pow(z, q)
            if w == z:
                return z
            z = w
        raise AssertionError("Teichmuller iteration failed to converge")


class GaloisRing:
    """GR(p^k, n) over a FieldTable, with the Teichmuller table of beta.

    teich[j] is the j-th power of the Teichmuller lift of the field's
    primitive element, so teich[j] reduces to antilog[j] mod p and
    teich[a] * teich[b] = teich[(a + b) mod (q - 1)].
    """

    def __init__(self, base: FieldTable, k: int):
        if k < 1:
            raise ValueError(f"precision k must be positive, got {k}")
        if base.p == 2:
            raise ValueError("p must be odd")
        self.base = base
        self.k = k
        self.p = base.p
        self.n = base.n
        self.q = base.q
        self.pk = base.p**k

        p, n, q, pk = self.p, self.n, self.q, self.pk
        naive = _PolyRing(base.modulus, pk, p)
        tau = naive.frobenius_fix(naive.gen(), q, k + 2)
        conjugates = [tau]
        for _ in range(n - 1):
            conjugates.append(naive.pow(conjugates[-1], p))

        # expand prod(X - tau_i); coefficients are Frobenius-fixed, hence constants
        poly = [naive.one()]
        for c in conjugates:
            nxt = [naive.zero()] * (len(poly) + 1)
            for i, coeff in enumerate(poly):
                nxt[i + 1] = naive.add(nxt[i + 1], coeff)
                nxt[i] = naive.sub(nxt[i], naive.mul(c, coeff))
            poly = nxt
        lift = []
        for coeff in poly:
            if any(coeff[1:]):
                raise AssertionError("Hensel lift coefficient not constant")
            lift.append(coeff[0])
        if lift[-1] != 1:
            raise AssertionError("Hensel lift not monic")
        for a, b in zip(lift, base.modulus):
            if (a - b) % p:
                raise AssertionError("Hensel lift does not reduce to the modulus")
        self.modulus_lift = lift

        self._ring = _PolyRing(lift, pk, p)
        beta_lift = tuple(base.element_digits(base.beta))
        omega = self._ring.frobenius_fix(beta_lift, q, k + 2)
        teich = [self._ring.one()]
        for _ in range(q - 2):
            teich.append(self._ring.mul(teich[-1], omega))
        self.teich = teich

    # -- element arithmetic --------------------------------------------

    def zero(self):
        return self._ring.zero()

    def one(self):
        return self._ring.one()

    def from_int(self, c: int):
        return self._ring.from_int(c)

    def add(self, a, b):
        return self._ring.add(a, b)

    def sub(self, a, b):
        return self._ring.sub(a, b)

    def neg(self, a):
        return self._ring.neg(a)

    def scalar(self, c: int, a):
        return self._ring.scalar(c, a)

    def mul(self, a, b):
        return self._ring.mul(a, b)

    def pow(self, a, exp: int):
        return self._ring.pow(a, exp)

    def reduce_mod_p(self, a) -> int:
        """Field encoding of a mod p."""
        e = 0
        for d in reversed(a):
            e = e * self.p + d % self.p
        return e

    def is_unit(self, a) -> bool:
        return self.reduce_mod_p(a) != 0

    def inv_unit(self, a):
        """Inverse of a unit, by Newton iteration from the field inverse."""
        e = self.reduce_mod_p(a)
        if e == 0:
            raise ZeroDivisionError("not a unit")
        z = tuple(self.base.element_digits(self.base.inv(e)))
        two = self.from_int(2)
        for _ in range(self.k.bit_length() + 2):
            az = self.mul(a, z)
            if az == self.one():
                return z
            z = self.mul(z, self.sub(two, az))
        if self.mul(a, z) != self.one():
            raise AssertionError("unit inversion failed")
        return z

    def div_exact_p(self, a, level: int = 1):
        """a / p^level for an element with all coordinates divisible by p^level."""
        d = self.p**level
        if any(x % d for x in a):
            raise ValueError("element not divisible by p^level")
        return tuple(x // d for x in a)

    def valuation(self, a) -> int:
        """Largest v < k with a in p^v * GR; returns k when a = 0 mod p^k.

        A return value equal to the precision k means only that the true
        valuation is at least k (the element is indistinguishable from 0).
        """
        if not any(a):
            return self.k
        p = self.p
        v = 0
        coords = a
        while all(x % p == 0 for x in coords):
            coords = tuple(x // p for x in coords)
            v += 1
        return v

    # -- characters and Jacobi sums -------------------------------------

    def char_value(self, i: int, x: int):
        """Value of T^(-i) at the field element x, with the 0-convention."""
        if x == 0:
            return self.one() if i % (self.q - 1) == 0 else self.zero()
        return self.teich[(-i * self.base.log[x]) % (self.q - 1)]

    def jacobi(self, i: int, j: int):
        """Jacobi sum of T^(-i) and T^(-j) as a ring element.

        Principal characters take the value 1 at 0, nonprincipal take 0.
        """
        base, q = self.base, self.q
        qm1 = q - 1
        log = base.log
        teich = self.teich
        total = [0] * self.n
        if i % qm1 == 0:  # x = 0 term
            total[0] += 1
        if j % qm1 == 0:  # x = 1 term, where 1 - x = 0
            total[0] += 1
        for x in range(2, q):
            y = base.sub(1, x)
            term = teich[(-i * log[x] - j * log[y]) % qm1]
            for c in range(self.n):
                total[c] += term[c]
        pk = self.pk
        return tuple(c % pk for c in total)

    def eta(self):
        """The fourth root of unity teich[(q-1)/4]."""
        if (self.q - 1) % 4:
            raise ValueError("q must be 1 mod 4")
        return self.teich[(self.q - 1) // 4]

    def quartic_weights(self):
        """Coefficients (1 - eta)/2 and (1 + eta)/2 of the connection-set
        indicator in the character basis."""
        inv2 = pow(2, -1, self.pk)
        eta = self.eta()
        a = self.scalar(inv2, self.sub(self.one(), eta))
        abar = self.scalar(inv2, self.add(self.one(), eta))
        return a, abar

    def basis_vector(self, i: int) -> list:
        """Coordinates of e_i on the group algebra: T^(-i)(x) at enc(x), 0 at 0."""
        coords = [self.zero()] * self.q
        qm1 = self.q - 1
        for m in range(qm1):
            coords[self.base.antilog[m]] = self.teich[(-i * m) % qm1]
        return coords

    def __repr__(self):
        return f"GaloisRing(q={self.q}, k={self.k})"


def gr_exponents(ring: GaloisRing, mat) -> tuple[list[int], int]:
    """p-elementary divisor exponents of a small matrix over the ring.

    Unit-pivot elimination, peeling one factor of p whenever no unit
    entry remains.  Returns (sorted exponents below the precision,
    residual slot count at or above it).
    """
    act = [list(row) for row in mat]
    exponents = []
    level = 0
    while act and level < ring.k:
        pivot = None
        for i, row in enumerate(act):
            for j, entry in enumerate(row):
                if ring.is_unit(entry):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            act = [[ring.div_exact_p(entry) for entry in row] for row in act]
            level += 1
            continue
        pi, pj = pivot
        act[0], act[pi] = act[pi], act[0]
        for row in act:
            row[0], row[pj] = row[pj], row[0]
        inv = ring.inv_unit(act[0][0])
        top = act[0]
        nxt = []
        for row in act[1:]:
            f = ring.mul(row[0], inv)
            nxt.append([ring.sub(row[c], ring.mul(f, top[c])) for c in range(1, len(top))])
        act = nxt
        exponents.append(level)
    return sorted(exponents), len(act)


def jacobi_quartic_exact(field: FieldTable, i: int, j: int) -> tuple[int, int]:
    """Jacobi sum of the quartic characters T^(-i), T^(-j) as a Gaussian
    integer (re, im), for i and j multiples of r = (q-1)/4.

    Pins the embedding eta -> sqrt(-1); rational values (such as p) are
    embedding independent.
    """
    q = field.q
    if q % 4 != 1:
        raise ValueError("q must be 1 mod 4")
    r = (q - 1) // 4
    if i % r or j % r:
        raise ValueError("character exponents must be multiples of r")
    qm1 = q - 1
    if i % qm1 == 0 and j % qm1 == 0:
        raise ValueError("at least one character must be nonprincipal")
    ai = (i // r) % 4
    aj = (j // r) % 4
    re = im = 0
    if i % qm1 == 0:
        re += 1  # principal at x = 0
    if j % qm1 == 0:
        re += 1  # principal at 1 - x = 0
    for x in range(2, q):
        y = field.sub(1, x)
        rot = (-ai * field.log[x] - aj * field.log[y]) % 4
        if rot == 0:
            re += 1
        elif rot == 1:
            im += 1
        elif rot == 2:
            re -= 1
        else:
            im -= 1
    return re, im


def gauss_mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def gauss_conj(a: tuple[int, int]) -> tuple[int, int]:
    return a[0], -a[1]


def build_ring(field: FieldTable, k: int) -> GaloisRing:
    return GaloisRing(field, k)
