"""Exact arithmetic for imaginary quadratic fields K = Q(sqrt(-d)).

Elements are stored on the integral basis [1, omega], where omega = sqrt(-d)
when -d = 2, 3 (mod 4) and omega = (1 + sqrt(-d))/2 when -d = 1 (mod 4), so
that O_K = Z[omega].  Integral ideals are stored in a unique Hermite normal
form [a, b + c*omega] with c | a, c | b and 0 <= b < a; equality of ideals is
therefore equality of the (a, b, c) triples.  Everything is exact: elements
use Fractions, ideals use integers, no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class QuadFieldError(ValueError):
    pass


def _squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 2 if f > 2 else 1
    return True


def factor_int(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of a positive integer."""
    assert n > 0
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += 2
    if n > 1:
        out.append((n, 1))
    return out


def is_rational_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt(-d)) together with its ring of integers Z[omega]."""

    d: int
    disc: int
    half: bool  # omega = (1 + sqrt(-d))/2 rather than sqrt(-d)

    @property
    def trace_omega(self) -> int:
        # omega satisfies x^2 - t x + n = 0
        return 1 if self.half else 0

    @property
    def norm_omega(self) -> int:
        return (1 + self.d) // 4 if self.half else self.d

    def __repr__(self):
        return f"QuadField(-{self.d})"


def make_field(d: int) -> QuadField:
    """Build Q(sqrt(-d)) for squarefree d >= 1."""
    if not isinstance(d, int) or d < 1:
        raise QuadFieldError(f"d must be a positive integer, got {d!r}")
    if not _squarefree(d):
        raise QuadFieldError(f"d must be squarefree, got {d}")
    if (-d) % 4 == 1:
        return QuadField(d=d, disc=-d, half=True)
    return QuadField(d=d, disc=-4 * d, half=False)


@dataclass(frozen=True)
class FieldElement:
    """x + y*omega with exact rational coordinates."""

    field: QuadField
    x: Fraction
    y: Fraction

    def __add__(self, other: "FieldElement") -> "FieldElement":
        assert self.field == other.field
        return FieldElement(self.field, self.x + other.x, self.y + other.y)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self.x, -self.y)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        # omega^2 = t*omega - n
        assert self.field == other.field
        t, n = self.field.trace_omega, self.field.norm_omega
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return FieldElement(
            self.field, x1 * x2 - n * y1 * y2, x1 * y2 + x2 * y1 + t * y1 * y2
        )

    def conjugate(self) -> "FieldElement":
        t = self.field.trace_omega
        return FieldElement(self.field, self.x + t * self.y, -self.y)

    def norm(self) -> Fraction:
        t, n = self.field.trace_omega, self.field.norm_omega
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y


def element(field: QuadField, x, y) -> FieldElement:
    return FieldElement(field, Fraction(x), Fraction(y))


@dataclass(frozen=True, order=True)
class Ideal:
    """Integral ideal [a, b + c*omega] in canonical HNF (c | a, c | b, 0 <= b < a)."""

    field: QuadField
    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if a <= 0 or c <= 0 or not 0 <= b < a:
            raise QuadFieldError(f"bad HNF triple ({a}, {b}, {c})")
        if a % c or b % c:
            raise QuadFieldError(f"HNF triple ({a}, {b}, {c}) not omega-closed")

    @property
    def norm(self) -> int:
        return self.a * self.c

    def is_unit(self) -> bool:
        return self.a == 1 and self.c == 1

    def contains(self, x: int, y: int) -> bool:
        """Membership of x + y*omega (integer coordinates)."""
        if y % self.c:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    def contains_ideal(self, other: "Ideal") -> bool:
        return self.contains(other.a, 0) and self.contains(other.b, other.c)

    def conjugate(self) -> "Ideal":
        t = self.field.trace_omega
        return Ideal(self.field, self.a, (-self.b - self.c * t) % self.a, self.c)

    def is_selfconjugate(self) -> bool:
        return self == self.conjugate()

    def __repr__(self):
        return f"Ideal[{self.a}, {self.b}+{self.c}w]"

    def to_json(self) -> dict:
        return {"norm": self.norm, "hnf": [self.a, self.b, self.c]}


def _hnf_from_rows(field: QuadField, rows: list[tuple[int, int]]) -> Ideal:
    """HNF of the Z-module spanned by rows (x, y) meaning x + y*omega."""
    rows = [r for r in rows if r != (0, 0)]
    if not rows:
        raise QuadFieldError("zero module")
    # Reduce to a single vector (b0, c) with c = gcd of y-parts.
    b0, c = 0, 0
    for x, y in rows:
        if y == 0:
            continue
        if c == 0:
            b0, c = x, y
            continue
        # Combine (b0, c) and (x, y) to reach gcd in the y-coordinate.
        g, u, v = _xgcd(c, y)
        b0, c = u * b0 + v * x, g
    xs = []
    for x, y in rows:
        if c:
            x -= (y // c) * b0  # y is a multiple of c once c = gcd
        xs.append(x)
    a = 0
    for x in xs:
        a = gcd(a, abs(x))
    if a == 0 or c == 0:
        raise QuadFieldError("module does not have full rank")
    c = abs(c)
    return Ideal(field, a, b0 % a, c)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _xgcd(b, a % b)
    return (g, y, x - (a // b) * y)


def ideal_from_gens(field: QuadField, gens: list[tuple[int, int]]) -> Ideal:
    """Smallest O_K-ideal containing the elements x + y*omega."""
    t, n = field.trace_omega, field.norm_omega
    rows = []
    for x, y in gens:
        rows.append((x, y))
        # (x + y*omega)*omega = -y*n + (x + y*t)*omega
        rows.append((-y * n, x + y * t))
    return _hnf_from_rows(field, rows)


def unit_ideal(field: QuadField) -> Ideal:
    return Ideal(field, 1, 0, 1)


def principal_ideal(field: QuadField, x: int, y: int) -> Ideal:
    return ideal_from_gens(field, [(x, y)])


def ideal_mul(i: Ideal, j: Ideal) -> Ideal:
    if i.field != j.field:
        raise QuadFieldError("ideals over different fields")
    f = i.field
    t, n = f.trace_omega, f.norm_omega

    def mul(x1, y1, x2, y2):
        return (x1 * x2 - n * y1 * y2, x1 * y2 + x2 * y1 + t * y1 * y2)

    g1 = [(i.a, 0), (i.b, i.c)]
    g2 = [(j.a, 0), (j.b, j.c)]
    prods = [mul(x1, y1, x2, y2) for x1, y1 in g1 for x2, y2 in g2]
    out = ideal_from_gens(f, prods)
    assert out.norm == i.norm * j.norm
    return out


def ideal_add(i: Ideal, j: Ideal) -> Ideal:
    """The sum I + J, i.e. the gcd of the two ideals."""
    assert i.field == j.field
    return _hnf_from_rows(i.field, [(i.a, 0), (i.b, i.c), (j.a, 0), (j.b, j.c)])


def coprime(i: Ideal, j: Ideal) -> bool:
    if gcd(i.norm, j.norm) == 1:
        return True
    return ideal_add(i, j).is_unit()


def ideal_pow(i: Ideal, e: int) -> Ideal:
    assert e >= 0
    out = unit_ideal(i.field)
    base = i
    while e:
        if e & 1:
            out = ideal_mul(out, base)
        base = ideal_mul(base, base) if e > 1 else base
        e >>= 1
    return out


def _scale_down(i: Ideal, k: int) -> Ideal:
    assert i.a % k == 0 and i.b % k == 0 and i.c % k == 0
    return Ideal(i.field, i.a // k, i.b // k, i.c // k)


@dataclass(frozen=True)
class SplittingRecord:
    kind: str  # "split" | "inert" | "ramified"
    primes: tuple[Ideal, ...]

    def with_multiplicity(self) -> list[Ideal]:
        if self.kind == "ramified":
            return [self.primes[0], self.primes[0]]
        return list(self.primes)


@lru_cache(maxsize=None)
def factor_rational_prime(field: QuadField, p: int) -> SplittingRecord:
    """Split/inert/ramified behaviour of a rational prime, with prime ideals in HNF.

    Roots of x^2 + t*x + n mod p are found by exhaustive search, which is fine
    at the scale this library targets (p up to about 10^6).
    """
    if not is_rational_prime(p):
        raise QuadFieldError(f"{p} is not prime")
    t, n = field.trace_omega, field.norm_omega
    roots = [b for b in range(p) if (b * b + t * b + n) % p == 0]
    if not roots:
        return SplittingRecord("inert", (Ideal(field, p, 0, p),))
    if len(roots) == 1:
        return SplittingRecord("ramified", (Ideal(field, p, roots[0], 1),))
    primes = tuple(Ideal(field, p, b, 1) for b in sorted(roots))
    return SplittingRecord("split", primes)


def primes_above(field: QuadField, p: int) -> list[Ideal]:
    return list(factor_rational_prime(field, p).primes)


def is_prime_ideal(i: Ideal) -> bool:
    nm = i.norm
    fac = factor_int(nm)
    if len(fac) != 1:
        return False
    p, e = fac[0]
    if e == 1:
        return True
    if e == 2:
        rec = factor_rational_prime(i.field, p)
        return rec.kind == "inert" and i == rec.primes[0]
    return False


def divides(p: Ideal, n: Ideal) -> bool:
    return p.contains_ideal(n)


def ideal_div_prime(n: Ideal, p: Ideal) -> Ideal:
    """Exact quotient n / p for a prime ideal p dividing n."""
    if not divides(p, n):
        raise QuadFieldError(f"{p} does not divide {n}")
    rec = factor_rational_prime(n.field, factor_int(p.norm)[0][0])
    q = rec.primes[0].a if rec.kind != "inert" else p.a
    if rec.kind == "inert":
        return _scale_down(n, q)
    # p * conj(p) = (q) for split p, and p^2 = (q) for ramified p.
    other = p.conjugate() if rec.kind == "split" else p
    return _scale_down(ideal_mul(n, other), q)


def factor_ideal(n: Ideal) -> list[tuple[Ideal, int]]:
    """Factor a nonzero integral ideal into prime ideals with exponents."""
    if n.norm == 0:
        raise QuadFieldError("zero ideal")
    out = []
    for p, _ in factor_int(n.norm):
        for pp in primes_above(n.field, p):
            e = 0
            cur = n
            while divides(pp, cur):
                cur = ideal_div_prime(cur, pp)
                e += 1
            if e:
                out.append((pp, e))
    check = unit_ideal(n.field)
    for pp, e in out:
        check = ideal_mul(check, ideal_pow(pp, e))
    assert check == n
    return out


def divisors(n: Ideal) -> list[Ideal]:
    fac = factor_ideal(n)
    out = [unit_ideal(n.field)]
    for p, e in fac:
        powers = [ideal_pow(p, k) for k in range(e + 1)]
        out = [ideal_mul(d, q) for d in out for q in powers]
    return sorted(out, key=lambda i: (i.norm, i.a, i.c, i.b))


def exact_divisors(n: Ideal) -> list[Ideal]:
    """Divisors q || n, i.e. with q and n/q coprime: full prime-power blocks."""
    fac = factor_ideal(n)
    out = [unit_ideal(n.field)]
    for p, e in fac:
        block = ideal_pow(p, e)
        out = out + [ideal_mul(d, block) for d in out]
    return sorted(out, key=lambda i: (i.norm, i.a, i.c, i.b))


def exact_prime_power_divisors(n: Ideal) -> list[Ideal]:
    return [ideal_pow(p, e) for p, e in factor_ideal(n)]


def sigma0(n: Ideal) -> int:
    out = 1
    for _, e in factor_ideal(n):
        out *= e + 1
    return out


def ideal_div_exact(n: Ideal, m: Ideal) -> Ideal:
    """Exact quotient n / m for m | n."""
    cur = n
    for p, e in factor_ideal(m):
        for _ in range(e):
            cur = ideal_div_prime(cur, p)
    return cur


def galois_conjugate(i: Ideal) -> Ideal:
    return i.conjugate()


# ---------------------------------------------------------------------------
# Labels.  The default total order on ideals of a given norm is lexicographic
# on the HNF triple (a, c, b).  For fields carrying published LMFDB labels a
# per-discriminant override can be registered; for disc -68 the shipped
# override orders ideals of norm N by descending exponent vectors with
# respect to the prime ideals above the rational primes dividing N (primes
# above p taken in increasing-b order).  That rule reproduces every label
# used in the published tables for Q(sqrt(-17)).
# ---------------------------------------------------------------------------

LABEL_ORDERINGS = {}  # disc -> ordering name


def register_label_ordering(disc: int, ordering: str) -> None:
    if ordering not in ("hnf", "factor"):
        raise QuadFieldError(f"unknown ordering {ordering!r}")
    if LABEL_ORDERINGS.get(disc) != ordering:
        LABEL_ORDERINGS[disc] = ordering
        ideals_of_norm.cache_clear()


def enumerate_ideals_of_norm(field: QuadField, norm: int) -> list[Ideal]:
    """All integral ideals of the given norm, unordered beyond HNF order."""
    if norm < 1:
        return []
    t, n = field.trace_omega, field.norm_omega
    out = []
    c = 1
    while c * c <= norm:
        if norm % (c * c) == 0:
            a = norm // c
            for b in range(0, a, c):
                if (b * b + b * c * t + c * c * n) % (a * c) == 0:
                    out.append(Ideal(field, a, b, c))
        c += 1
    return sorted(out, key=lambda i: (i.a, i.c, i.b))


def _factor_sort_key(i: Ideal):
    fac = {p: e for p, e in factor_ideal(i)}
    key = []
    for p, _ in factor_int(i.norm):
        for pp in primes_above(i.field, p):
            key.append(-fac.get(pp, 0))
    return tuple(key)


@lru_cache(maxsize=None)
def ideals_of_norm(field: QuadField, norm: int) -> tuple[Ideal, ...]:
    ideals = enumerate_ideals_of_norm(field, norm)
    if LABEL_ORDERINGS.get(field.disc) == "factor":
        ideals = sorted(ideals, key=_factor_sort_key)
    return tuple(ideals)


register_label_ordering(-68, "factor")


def label(i: Ideal) -> str:
    ordered = ideals_of_norm(i.field, i.norm)
    return f"{i.norm}.{ordered.index(i) + 1}"


def ideal_from_label(field: QuadField, lab: str) -> Ideal:
    try:
        norm_s, idx_s = lab.split(".")
        norm, idx = int(norm_s), int(idx_s)
    except ValueError:
        raise QuadFieldError(f"bad ideal label {lab!r}")
    ordered = ideals_of_norm(field, norm)
    if not 1 <= idx <= len(ordered):
        raise QuadFieldError(f"no ideal with label {lab!r}")
    return ordered[idx - 1]


def ideal_from_json(field: QuadField, data) -> Ideal:
    if isinstance(data, str):
        return ideal_from_label(field, data)
    if "hnf" in data:
        a, b, c = data["hnf"]
        i = Ideal(field, a, b, c)
        if "norm" in data and data["norm"] != i.norm:
            raise QuadFieldError(f"norm mismatch in {data}")
        return i
    if "gens" in data:
        return ideal_from_gens(field, [tuple(g) for g in data["gens"]])
    raise QuadFieldError(f"cannot parse ideal from {data}")


def primes_of_norm_up_to(field: QuadField, bound: int) -> list[Ideal]:
    """Prime ideals of norm <= bound, sorted by (norm, label index)."""
    out = []
    for p in range(2, bound + 1):
        if not is_rational_prime(p):
            continue
        rec = factor_rational_prime(field, p)
        if rec.kind == "inert":
            if p * p <= bound:
                out.append(rec.primes[0])
        else:
            out.extend(ideals_of_norm(field, p))
    return sorted(out, key=lambda i: (i.norm, ideals_of_norm(field, i.norm).index(i)))
