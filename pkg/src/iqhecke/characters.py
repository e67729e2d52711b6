"""Characters of the ideal class group, with exact root-of-unity values."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .classgroup import ClassGroup, IdealClass
from .quadfield import Ideal, coprime, exact_prime_power_divisors


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The value zeta_n^k, stored with k/n in lowest terms (0 <= k < n)."""

    k: int
    n: int

    @staticmethod
    def make(k: int, n: int) -> "RootOfUnity":
        assert n > 0
        k %= n
        g = gcd(k, n)
        return RootOfUnity(k // g, n // g) if k else RootOfUnity(0, 1)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = lcm(self.n, other.n)
        return RootOfUnity.make(self.k * (n // self.n) + other.k * (n // other.n), n)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity.make(self.k * e, self.n)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.make(-self.k, self.n)

    @property
    def order(self) -> int:
        return self.n

    def is_one(self) -> bool:
        return self.n == 1

    def as_sign(self) -> int:
        """The value as +-1; only valid for order <= 2."""
        if self.n == 1:
            return 1
        if self.n == 2:
            return -1
        raise ValueError(f"{self} is not real")


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


@dataclass(frozen=True, order=True)
class ClassCharacter:
    """Character of CL, given by exponents against the pinned generators.

    The i-th generator (of order d_i) is sent to zeta_{d_i}^{e_i}.
    """

    exps: tuple[int, ...]

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exps)


def character_group(group: ClassGroup) -> list[ClassCharacter]:
    chars = []
    divisors = group.elementary_divisors
    exps = [0] * len(divisors)
    while True:
        chars.append(ClassCharacter(tuple(exps)))
        i = 0
        while i < len(exps):
            exps[i] += 1
            if exps[i] < divisors[i]:
                break
            exps[i] = 0
            i += 1
        else:
            break
    if not divisors:
        chars = [ClassCharacter(())]
    return sorted(set(chars))


def trivial_character(group: ClassGroup) -> ClassCharacter:
    return ClassCharacter(tuple(0 for _ in group.elementary_divisors))


def mul_characters(group: ClassGroup, x: ClassCharacter, y: ClassCharacter) -> ClassCharacter:
    return ClassCharacter(
        tuple((a + b) % d for a, b, d in zip(x.exps, y.exps, group.elementary_divisors))
    )


def character_pow(group: ClassGroup, x: ClassCharacter, e: int) -> ClassCharacter:
    return ClassCharacter(tuple((a * e) % d for a, d in zip(x.exps, group.elementary_divisors)))


def character_inverse(group: ClassGroup, x: ClassCharacter) -> ClassCharacter:
    return character_pow(group, x, -1)


def character_order(group: ClassGroup, chi: ClassCharacter) -> int:
    out = 1
    for e, d in zip(chi.exps, group.elementary_divisors):
        if e:
            out = lcm(out, d // gcd(e, d))
    return out


def eval_on_class(group: ClassGroup, chi: ClassCharacter, cls: IdealClass) -> RootOfUnity:
    n = 1
    for d in group.elementary_divisors:
        n = lcm(n, d)
    k = 0
    for e, x, d in zip(chi.exps, cls.exps, group.elementary_divisors):
        k += e * x * (n // d)
    return RootOfUnity.make(k, n)


def eval_character(
    group: ClassGroup,
    chi: ClassCharacter,
    a: Ideal,
    level: Ideal | None = None,
) -> RootOfUnity | None:
    """chi evaluated at an ideal; None encodes the value 0 at ideals not
    coprime to the level."""
    if level is not None and not coprime(a, level):
        return None
    return eval_on_class(group, chi, group.ideal_class(a))


def is_quadratic(group: ClassGroup, chi: ClassCharacter) -> bool:
    return character_order(group, chi) <= 2


def quadratic_characters(group: ClassGroup) -> list[ClassCharacter]:
    """All characters with values in {+-1}, the trivial one included."""
    return [chi for chi in character_group(group) if is_quadratic(group, chi)]


def eligible_selftwists(group: ClassGroup, n: Ideal) -> list[ClassCharacter]:
    """The set C(n): nontrivial quadratic psi with psi(q) = +1 for every exact
    prime-power divisor q of n (q = n included when n is a prime power)."""
    blocks = exact_prime_power_divisors(n) if not n.is_unit() else []
    out = []
    for psi in quadratic_characters(group):
        if psi.is_trivial():
            continue
        if all(eval_on_class(group, psi, group.ideal_class(q)).as_sign() == 1 for q in blocks):
            out.append(psi)
    return out


def character_to_json(chi: ClassCharacter) -> dict:
    return {"exponents": list(chi.exps)}


def character_from_json(group: ClassGroup, data) -> ClassCharacter:
    if isinstance(data, list):
        exps = data
    else:
        exps = data["exponents"]
    if len(exps) != len(group.elementary_divisors):
        raise ValueError(f"character exponents {exps} do not fit the class group")
    return ClassCharacter(tuple(e % d for e, d in zip(exps, group.elementary_divisors)))
