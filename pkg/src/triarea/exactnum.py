"""Exact number kernels: rationals, Gaussian rationals, prime fields,
CRT, rational reconstruction and mod-p nullspaces.

Rationals are gmpy2.mpq values (canonical: reduced, positive denominator),
falling back to fractions.Fraction when gmpy2 is unavailable.  Everything
here is immutable and safe to share between threads.
"""

import math

import numpy as np

try:
    from gmpy2 import mpq as Rational, mpz, is_prime as _is_prime

    def _isqrt(n):
        from gmpy2 import isqrt
        return int(isqrt(n))

except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational
    from math import isqrt as _isqrt

    mpz = int

    def _is_prime(n):
        # deterministic Miller-Rabin, valid for n < 3.3e24
        if n < 2:
            return False
        for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
            if n % q == 0:
                return n == q
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
            x = pow(q, d, n)
            if x in (1, n - 1):
                continue
            for _ in range(s - 1):
                x = x * x % n
                if x == n - 1:
                    break
            else:
                return False
        return True


from ._kernels import (  # noqa: F401  (re-exported kernel surface)
    MAX_PRIME_BITS,
    modinv,
    monomial_matrix,
    nullspace_mod_p,
    row_echelon_mod_p,
    nullspace_from_echelon,
    using_numba,
)

ZERO = Rational(0)
ONE = Rational(1)


def rational(num, den=1):
    """Exact rational from ints or a 'num/den' string."""
    if isinstance(num, str):
        if "/" in num:
            a, b = num.split("/")
            return Rational(int(a), int(b))
        return Rational(int(num))
    return Rational(num, den)


def rat_str(q):
    """Canonical 'num/den' (or plain integer) string, round-trips exactly."""
    q = Rational(q)
    num, den = q.numerator, q.denominator
    return str(num) if den == 1 else f"{num}/{den}"


class GaussianRational:
    """Element of Q(i): exact complex rational a + b*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Rational(re))
        object.__setattr__(self, "im", Rational(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = self._coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        out = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, type(Rational(0)))):
            return GaussianRational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Q(i)")

    def is_real(self):
        return self.im == 0


class PrimeField:
    """Arithmetic in F_p for an odd prime p < 2**MAX_PRIME_BITS.

    Elements are plain ints kept as canonical residues in [0, p); the class
    carries the modulus so callers do not thread it through every call.
    """

    __slots__ = ("p",)

    def __init__(self, p):
        p = int(p)
        if p < 3 or p % 2 == 0 or not _is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        if p >= 1 << MAX_PRIME_BITS:
            raise ValueError(f"modulus must be below 2**{MAX_PRIME_BITS}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("PrimeField is immutable")

    def __call__(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return modinv(a, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def reduce_rational(self, q):
        """Image of the rational q in F_p (denominator must be a unit)."""
        q = Rational(q)
        return self.div(int(q.numerator) % self.p, int(q.denominator) % self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def random_primes(count, rng, lo=1 << 22, hi=(1 << MAX_PRIME_BITS) - 1):
    """`count` distinct random primes in [lo, hi], reproducible from rng."""
    found = []
    seen = set()
    while len(found) < count:
        n = int(rng.integers(lo, hi)) | 1
        if n not in seen and _is_prime(n):
            seen.add(n)
            found.append(n)
    return found


def crt_combine(residues):
    """Combine congruences x = v_i (mod m_i) into (value, modulus).

    Moduli are normally pairwise coprime; a shared factor is accepted when
    the residues are consistent, otherwise ValueError is raised.
    """
    residues = list(residues)
    if not residues:
        raise ValueError("need at least one residue")
    v0, m0 = residues[0]
    v0 %= m0
    for v1, m1 in residues[1:]:
        v1 %= m1
        g = math.gcd(m0, m1)
        if g > 1:
            if (v0 - v1) % g != 0:
                raise ValueError(
                    f"inconsistent residues {v0} mod {m0} and {v1} mod {m1}"
                )
            # peel the shared factor off m1
            m1g = m1 // g
            while True:
                g2 = math.gcd(m1g, g)
                if g2 == 1:
                    break
                m1g //= g2
            if m1g == 1:
                continue
            v1 %= m1g
            m1 = m1g
        u = modinv(m0 % m1, m1)
        t = ((v1 - v0) * u) % m1
        v0 = v0 + m0 * t
        m0 = m0 * m1
        v0 %= m0
    return v0, m0


def rational_reconstruct(residue, modulus):
    """Recover a/b with a = b*residue (mod modulus), |a|, b <= sqrt(modulus/2).

    Returns a Rational, or None when no such fraction exists (the caller
    should add more primes).
    """
    residue = int(residue) % int(modulus)
    modulus = int(modulus)
    bound = _isqrt(modulus // 2)
    if bound == 0:
        return None
    r0, r1 = modulus, residue
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    a, b = r1, s1
    if b == 0:
        return None
    if b < 0:
        a, b = -a, -b
    if a > bound or b > bound:
        return None
    if math.gcd(b, modulus) != 1 or math.gcd(abs(a), b) != 1:
        return None
    return Rational(a, b)


def lift_matrix(matrix):
    """Int64 matrix -> nested python-int lists (for exact cross-checks)."""
    return [[int(x) for x in row] for row in np.asarray(matrix)]
