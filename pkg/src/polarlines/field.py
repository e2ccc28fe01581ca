"""Small finite fields GF(p^k), q <= 32, with full lookup tables.

Elements are plain ints in ``range(q)``. An element with index ``i`` is the
polynomial ``sum(c_j x^j)`` where ``c_j`` are the base-p digits of ``i``, so
0 is zero, 1 is one, and the prime subfield is ``range(p)``.
"""

from functools import lru_cache
from typing import NamedTuple

MAX_ORDER = 32

# One fixed irreducible (Conway, hence primitive) polynomial per non-prime
# field, coefficients low -> high. These fix every element index downstream.
CANONICAL_MODULI = {
    (2, 2): (1, 1, 1),           # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),        # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),     # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (3, 2): (2, 2, 1),           # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),        # x^3 + 2x + 1
    (5, 2): (2, 4, 1),           # x^2 + 4x + 2
}


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _primitive_root(p):
    for g in range(1, p):
        if len({pow(g, e, p) for e in range(p - 1)}) == p - 1:
            return g
    raise AssertionError(p)


class FiniteField:
    """GF(p^k) with exp/log, addition and multiplication tables.

    ``sigma`` is the unique involutory automorphism ``x -> x^(p^(k/2))`` when
    k is even and the identity otherwise.
    """

    def __init__(self, p, k):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        q = p ** k
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.k, self.q = p, k, q
        if k == 1:
            g = _primitive_root(p)
            self.modulus = ((-g) % p, 1)
            gen = g
        else:
            self.modulus = CANONICAL_MODULI[(p, k)]
            gen = p  # the class of x
        self.generator = gen

        digits = [self._digits(i) for i in range(q)]
        self.add_table = tuple(
            tuple(self._index([(a + b) % p for a, b in zip(digits[i], digits[j])]) for j in range(q))
            for i in range(q)
        )
        self.neg_table = tuple(self._index([(-a) % p for a in digits[i]]) for i in range(q))

        exp = [0] * (q - 1)
        log = [None] * q
        x = 1
        for e in range(q - 1):
            if log[x] is not None:
                raise AssertionError(f"generator of GF({q}) is not primitive")
            exp[e] = x
            log[x] = e
            x = self._mul_poly(x, gen)
        if x != 1:
            raise AssertionError("exp table does not close")
        self.exp_table = tuple(exp)
        self.log_table = tuple(log)

        n = q - 1
        self.mul_table = tuple(
            tuple(0 if i == 0 or j == 0 else exp[(log[i] + log[j]) % n] for j in range(q))
            for i in range(q)
        )
        self.inv_table = (None,) + tuple(exp[(-log[i]) % n] for i in range(1, q))
        self.sigma_exponent = p ** (k // 2) if k % 2 == 0 else 1
        self.sigma_table = tuple(self.power(i, self.sigma_exponent) for i in range(q))

    def _digits(self, i):
        out = []
        for _ in range(self.k):
            out.append(i % self.p)
            i //= self.p
        return out

    def _index(self, digits):
        i = 0
        for c in reversed(digits):
            i = i * self.p + c
        return i

    def _mul_poly(self, a, b):
        # schoolbook product reduced by the modulus; only used to seed tables
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return self._index(prod[:k])

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    @property
    def elements(self):
        return range(self.q)

    @property
    def has_involution(self):
        return self.k % 2 == 0

    def check(self, a):
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    def add(self, a, b):
        return self.add_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a][self.inv(b)]

    def power(self, a, e):
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def sigma(self, a):
        return self.sigma_table[a]

    def modulus_roots(self):
        """Elements that are roots of the canonical modulus."""
        roots = []
        for x in self.elements:
            acc = 0
            for c in reversed(self.modulus):
                acc = self.add(self.mul(acc, x), c % self.p)
            if acc == 0:
                roots.append(x)
        return roots


@lru_cache(maxsize=None)
def make_field(p, k=1):
    return FiniteField(p, k)


def field_of_order(q):
    """Return GF(q), factoring q as a prime power."""
    if q < 2:
        raise ValueError(f"no field of order {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return make_field(p, k)
    raise AssertionError


def is_subfield(F, elems):
    """True if ``elems`` is a (necessarily commutative) subfield of F."""
    s = frozenset(elems)
    if 0 not in s or 1 not in s:
        return False
    for a in s:
        if F.neg(a) not in s:
            return False
        if a and F.inv(a) not in s:
            return False
        for b in s:
            if F.add(a, b) not in s or F.mul(a, b) not in s:
                return False
    return True


class TraceSets(NamedTuple):
    lower: frozenset   # {c - eps * sigma(c)}
    upper: frozenset   # {c : eps * sigma(c) == -c}
    lower_is_field: bool
    upper_is_field: bool


def sigma_epsilon_sets(F, eps, use_sigma=True):
    """Enumerate the two trace-type subsets attached to (sigma, eps)."""
    if eps == 0:
        raise ValueError("eps must be nonzero")
    sig = F.sigma if use_sigma else (lambda a: a)
    lower = frozenset(F.sub(c, F.mul(eps, sig(c))) for c in F.elements)
    upper = frozenset(c for c in F.elements if F.mul(eps, sig(c)) == F.neg(c))
    return TraceSets(lower, upper, is_subfield(F, lower), is_subfield(F, upper))
