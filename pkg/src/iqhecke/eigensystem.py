"""Hecke eigensystems lambda = (alpha, chi) and their structure detectors.

An eigensystem stores exact eigenvalues alpha(p) for a finite set of prime
ideals, the class-group character chi, and (for trivial chi) the involution
signs at the exact prime-power divisors of the level.  Everything downstream
of the stored primes comes out of the multiplicative relations:

    alpha(ab) = alpha(a) alpha(b)                 for coprime a, b
    alpha(p^(n+1)) = alpha(p^n) alpha(p) - N(p) chi(p) alpha(p^(n-1))

with chi(p) = 0 at primes dividing the level.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import algext
from .algext import AlgValue, ValueField, lift, values_equal
from .characters import (
    ClassCharacter,
    RootOfUnity,
    character_from_json,
    character_group,
    character_inverse,
    character_order,
    character_pow,
    eligible_selftwists,
    eval_on_class,
    is_quadratic,
    mul_characters,
)
from .classgroup import ClassGroup, IdealClass
from .quadfield import Ideal, coprime, factor_ideal, ideals_of_norm, label


class EigensystemError(ValueError):
    pass


# -- roots of unity as tower values -------------------------------------------

_ROU_REQUIREMENTS = {1: None, 2: None, 3: Fraction(-3), 4: Fraction(-1), 6: Fraction(-3)}


def extend_for_root_order(f: ValueField, order: int) -> ValueField:
    if order not in _ROU_REQUIREMENTS:
        raise EigensystemError(f"roots of unity of order {order} are not supported")
    need = _ROU_REQUIREMENTS[order]
    if need is None:
        return f
    vec = algext._as_base_vec(f.base_degree, need)
    if vec in f.adjoined:
        return f
    return ValueField(f.minpoly, tuple(sorted(set(f.adjoined) | {vec})))


def root_of_unity_value(f: ValueField, z: RootOfUnity) -> AlgValue | None:
    """The root of unity as a tower value; None when the tower lacks it."""
    if z.n == 1:
        return algext.one(f)
    if z.n == 2:
        return algext.from_rational(f, -1)
    if z.n == 4:
        vec = algext._as_base_vec(f.base_degree, Fraction(-1))
        if vec not in f.adjoined:
            return None
        i = algext.adjoined_root(f, f.adjoined.index(vec))
        return i if z.k == 1 else -i
    if z.n in (3, 6):
        vec = algext._as_base_vec(f.base_degree, Fraction(-3))
        if vec not in f.adjoined:
            return None
        s = algext.adjoined_root(f, f.adjoined.index(vec))
        zeta3 = (algext.from_rational(f, -1) + s).scale(Fraction(1, 2))
        z6 = z if z.n == 6 else RootOfUnity.make(2 * z.k, 6)
        out = algext.one(f)
        base6 = algext.one(f) + zeta3  # zeta_6 = 1 + zeta_3
        for _ in range(z6.k % 6):
            out = out * base6
        return out
    return None


@dataclass(frozen=True)
class HeckeEigensystem:
    group: ClassGroup
    level: Ideal
    character: ClassCharacter
    alpha: tuple  # tuple of (Ideal, AlgValue), sorted by (norm, label)
    al_signs: tuple | None  # tuple of (Ideal, +-1) when chi is trivial
    vfield: ValueField
    selftwist_candidates: tuple[ClassCharacter, ...] | None = None

    def alpha_map(self) -> dict:
        return dict(self.alpha)

    def stored_primes(self) -> list[Ideal]:
        return [p for p, _ in self.alpha]

    def good_primes(self) -> list[Ideal]:
        return [p for p, _ in self.alpha if coprime(p, self.level)]

    def alpha_at(self, p: Ideal) -> AlgValue:
        for q, v in self.alpha:
            if q == p:
                return v
        raise EigensystemError(f"no stored eigenvalue at prime {label(p)}")

    def al_sign(self, q: Ideal) -> int:
        if self.al_signs is None:
            raise EigensystemError("no involution signs on a nontrivial-character system")
        for qq, s in self.al_signs:
            if qq == q:
                return s
        raise EigensystemError(f"no stored involution sign at {label(q)}")

    def max_stored_norm(self) -> int:
        return max((p.norm for p, _ in self.alpha), default=0)


def _sort_alpha(items) -> tuple:
    return tuple(
        sorted(items, key=lambda pv: (pv[0].norm, ideals_of_norm(pv[0].field, pv[0].norm).index(pv[0])))
    )


def make_eigensystem(
    group: ClassGroup,
    level: Ideal,
    character: ClassCharacter,
    alpha: dict,
    al_signs: dict | None = None,
    vfield: ValueField | None = None,
    selftwist_candidates=None,
) -> HeckeEigensystem:
    """Normalize and validate the pieces of an eigensystem."""
    f = vfield
    if f is None:
        fields = [v.field for v in alpha.values()]
        f = fields[0] if fields else algext.RATIONAL_FIELD
        for vf in fields[1:]:
            f = algext.join_fields(f, vf)
    f = extend_for_root_order(f, character_order(group, character))
    lifted = {p: lift(v, f) for p, v in alpha.items()}
    if al_signs is not None and not character.is_trivial():
        raise EigensystemError("involution signs only make sense for trivial character")
    al = None
    if al_signs is not None:
        for q, s in al_signs.items():
            if s not in (1, -1):
                raise EigensystemError(f"involution sign at {label(q)} must be +-1, got {s}")
        al = tuple(sorted(al_signs.items(), key=lambda qs: qs[0].norm))
    cands = tuple(selftwist_candidates) if selftwist_candidates else None
    return HeckeEigensystem(
        group=group,
        level=level,
        character=character,
        alpha=_sort_alpha(lifted.items()),
        al_signs=al,
        vfield=f,
        selftwist_candidates=cands,
    )


def chi_value(F: HeckeEigensystem, p: Ideal) -> AlgValue:
    """chi(p) as a tower value, with the zero convention at bad primes."""
    if not coprime(p, F.level):
        return algext.zero(F.vfield)
    z = eval_on_class(F.group, F.character, F.group.ideal_class(p))
    v = root_of_unity_value(F.vfield, z)
    if v is None:
        raise EigensystemError("value field does not contain the character values")
    return v


def coefficient(F: HeckeEigensystem, a: Ideal) -> AlgValue:
    """alpha(a) for any integral ideal via the multiplicative relations."""
    if a.is_unit():
        return algext.one(F.vfield)
    amap = F.alpha_map()
    out = algext.one(F.vfield)
    for p, e in factor_ideal(a):
        if p not in amap:
            raise EigensystemError(f"missing eigenvalue at prime {label(p)}")
        ap = amap[p]
        chip = chi_value(F, p)
        np = algext.from_rational(F.vfield, p.norm)
        prev, cur = algext.one(F.vfield), ap
        for _ in range(e - 1):
            prev, cur = cur, cur * ap - np * chip * prev
        out = out * cur
    return out


def prime_power_coefficients(F: HeckeEigensystem, p: Ideal, nmax: int) -> list[AlgValue]:
    """[alpha(p^0), ..., alpha(p^nmax)] by the recursion."""
    ap = F.alpha_at(p)
    chip = chi_value(F, p)
    np = algext.from_rational(F.vfield, p.norm)
    out = [algext.one(F.vfield), ap]
    for _ in range(nmax - 1):
        out.append(out[-1] * ap - np * chip * out[-2])
    return out[: nmax + 1]


def euler_factor_coefficients(F: HeckeEigensystem, p: Ideal, nmax: int) -> list[AlgValue]:
    """Power-series inverse of (1 - alpha(p) x + N(p) chi(p) x^2): the same
    sequence as the recursion, computed the brute-force way as an oracle."""
    ap = F.alpha_at(p)
    chip = chi_value(F, p)
    c1 = -ap
    c2 = algext.from_rational(F.vfield, p.norm) * chip
    series = [algext.one(F.vfield)]
    for n in range(1, nmax + 1):
        val = -(c1 * series[n - 1])
        if n >= 2:
            val = val - c2 * series[n - 2]
        series.append(val)
    return series


# -- structure operations ------------------------------------------------------


def twist(F: HeckeEigensystem, psi: ClassCharacter) -> HeckeEigensystem:
    group = F.group
    f = extend_for_root_order(F.vfield, character_order(group, psi))
    new_alpha = {}
    for p, v in F.alpha:
        z = eval_on_class(group, psi, group.ideal_class(p))
        zval = root_of_unity_value(f, z)
        new_alpha[p] = lift(v, f) * zval
    new_char = mul_characters(group, F.character, character_pow(group, psi, 2))
    al = None
    if F.al_signs is not None:
        if psi.is_trivial():
            al = dict(F.al_signs)
        elif is_quadratic(group, psi):
            al = {
                q: s * eval_on_class(group, psi, group.ideal_class(q)).as_sign()
                for q, s in F.al_signs
            }
    cands = F.selftwist_candidates
    return make_eigensystem(
        group, F.level, new_char, new_alpha, al, vfield=f, selftwist_candidates=cands
    )


def systems_equal(F: HeckeEigensystem, G: HeckeEigensystem) -> bool:
    """Same level, character, and stored eigenvalues (exact comparison)."""
    if F.level != G.level or F.character != G.character:
        return False
    pf, pg = F.stored_primes(), G.stored_primes()
    if pf != pg:
        return False
    gm = G.alpha_map()
    return all(values_equal(v, gm[p]) for p, v in F.alpha)


def twist_orbit(F: HeckeEigensystem) -> list[HeckeEigensystem]:
    if F.max_stored_norm() < 50:
        warnings.warn(
            "twist-orbit deduplication below norm 50 may conflate distinct twists",
            stacklevel=2,
        )
    out = []
    for psi in character_group(F.group):
        G = twist(F, psi)
        if not any(systems_equal(G, H) for H in out):
            out.append(G)
    return out


@dataclass(frozen=True)
class SelfTwistReport:
    status: str  # "impossible" | "possible"
    candidates: tuple[ClassCharacter, ...]


def selftwist_status(F: HeckeEigensystem, bound: int | None = None) -> SelfTwistReport:
    """Self-twist screening: never proves a self-twist, only rules one out
    or reports the surviving candidate characters."""
    group = F.group
    elig = eligible_selftwists(group, F.level)
    if not elig:
        return SelfTwistReport("impossible", ())
    survivors = []
    for psi in elig:
        ok = True
        for p, v in F.alpha:
            if not coprime(p, F.level):
                continue
            if bound is not None and p.norm > bound:
                continue
            if v.is_zero():
                continue
            if eval_on_class(group, psi, group.ideal_class(p)).as_sign() != 1:
                ok = False
                break
        if ok:
            survivors.append(psi)
    if not survivors:
        return SelfTwistReport("impossible", ())
    return SelfTwistReport("possible", tuple(survivors))


def galois_conjugate_system(F: HeckeEigensystem) -> HeckeEigensystem:
    """The system at the conjugate level: alpha'(a) = alpha(a^sigma), and the
    character composed with conjugation (the inverse character on classes)."""
    group = F.group
    new_alpha = {p.conjugate(): v for p, v in F.alpha}
    al = {q.conjugate(): s for q, s in F.al_signs} if F.al_signs is not None else None
    return make_eigensystem(
        group,
        F.level.conjugate(),
        character_inverse(group, F.character),
        new_alpha,
        al,
        vfield=F.vfield,
        selftwist_candidates=F.selftwist_candidates,
    )


def inner_twist_pairs(F: HeckeEigensystem, bound: int | None = None) -> list:
    """All (tau, psi) with tau(alpha(p)) = psi(p) alpha(p) on stored primes.

    The compatibility tau(chi(p)) = psi(p)^2 chi(p) is checked for every
    detected pair and a violation is a hard failure.
    """
    group = F.group
    pairs = []
    good = [
        (p, v)
        for p, v in F.alpha
        if coprime(p, F.level) and (bound is None or p.norm <= bound)
    ]
    for tau in algext.automorphisms(F.vfield):
        for psi in character_group(group):
            ok = True
            for p, v in good:
                z = eval_on_class(group, psi, group.ideal_class(p))
                zval = root_of_unity_value(F.vfield, z)
                tv = tau.apply(v)
                if zval is None:
                    if not (v.is_zero() and tv.is_zero()):
                        ok = False
                        break
                elif not values_equal(tv, zval * v):
                    ok = False
                    break
            if ok:
                pairs.append((tau, psi))
    for tau, psi in pairs:
        for p, _ in good:
            chip = chi_value(F, p)
            z2 = eval_on_class(group, character_pow(group, psi, 2), group.ideal_class(p))
            z2val = root_of_unity_value(F.vfield, z2)
            if z2val is None or not values_equal(tau.apply(chip), z2val * chip):
                raise EigensystemError(
                    "inner-twist pair fails the character compatibility law"
                )
    return pairs


def has_quadratic_inner_twist(F: HeckeEigensystem, bound: int | None = None) -> bool:
    """A nontrivial inner twist by a quadratic character (the joined-orbit
    signature in the tables)."""
    group = F.group
    for tau, psi in inner_twist_pairs(F, bound):
        if tau.is_identity() and psi.is_trivial():
            continue
        if not psi.is_trivial() and is_quadratic(group, psi) and not tau.is_identity():
            return True
    return False


def base_change_candidate(F: HeckeEigensystem, bound: int | None = None) -> bool:
    if F.level != F.level.conjugate():
        raise EigensystemError(
            "base-change screening needs a conjugation-stable level"
        )
    amap = F.alpha_map()
    for p, v in F.alpha:
        if bound is not None and p.norm > bound:
            continue
        q = p.conjugate()
        if q not in amap:
            continue
        if not values_equal(v, amap[q]):
            return False
    return True


@dataclass(frozen=True)
class SupportSubgroup:
    classes: frozenset
    index: int


def support_subgroup(F: HeckeEigensystem, bound: int | None = None) -> SupportSubgroup:
    group = F.group
    gens = [group.power(x, 2) for x in group.all_classes()]
    for p, v in F.alpha:
        if bound is not None and p.norm > bound:
            continue
        if not v.is_zero():
            gens.append(group.ideal_class(p))
    sub = group.subgroup(gens)
    return SupportSubgroup(frozenset(sub), group.h // len(sub))


# -- Hecke field reporting ----------------------------------------------------


def _span_dimension(values: list[AlgValue], f: ValueField) -> int:
    """Q-dimension of the subfield generated by the given tower values."""
    rows: list[list[Fraction]] = []

    def reduce_row(vec):
        vec = list(vec)
        for row in rows:
            piv = next(i for i, c in enumerate(row) if c != 0)
            if vec[piv] != 0:
                fac = vec[piv] / row[piv]
                vec = [a - fac * b for a, b in zip(vec, row)]
        if any(c != 0 for c in vec):
            rows.append(vec)
            return True
        return False

    basis_vals = [algext.one(f)]
    reduce_row(algext._flatten(basis_vals[0]))
    gens = [lift(v, f) for v in values]
    changed = True
    while changed:
        changed = False
        for g in gens:
            for b in list(basis_vals):
                prod = g * b
                if reduce_row(algext._flatten(prod)):
                    basis_vals.append(prod)
                    changed = True
    return len(rows)


@dataclass(frozen=True)
class HeckeFieldReport:
    principal_degree: int
    full_degree: int
    ratio: int
    field_description: str


def hecke_field_report(F: HeckeEigensystem) -> HeckeFieldReport:
    """Degrees of the full Hecke field and of its principal subfield.

    The principal subfield is generated by eigenvalues of operators in the
    trivial class-group component: values chi(x) alpha(b) where b runs over
    products of at most three stored primes (with squares allowed) whose
    class lies in CL^2, and x^2 [b] = 1.
    """
    group = F.group
    f = F.vfield
    squares = group.squares()

    def square_aux_value(cls: IdealClass) -> AlgValue | None:
        for x in group.all_classes():
            if group.mul(group.power(x, 2), cls).is_identity():
                z = eval_on_class(group, F.character, x)
                return root_of_unity_value(f, z)
        return None

    principal_gens: list[AlgValue] = []
    good = [(p, v) for p, v in F.alpha if coprime(p, F.level)]
    combos = [[(p, v)] for p, v in good]
    combos += [[a, b] for i, a in enumerate(good) for b in good[i:]]
    combos += [
        [a, b, c]
        for i, a in enumerate(good)
        for j, b in enumerate(good[i:], i)
        for c in good[j:]
    ]
    for combo in combos:
        cls = group.identity()
        val = algext.one(f)
        seen: dict[Ideal, int] = {}
        for p, _ in combo:
            seen[p] = seen.get(p, 0) + 1
        ok = True
        for p, e in seen.items():
            cls = group.mul(cls, group.power(group.ideal_class(p), e))
            try:
                val = val * prime_power_coefficients(F, p, e)[e]
            except EigensystemError:
                ok = False
                break
        if not ok or cls not in squares:
            continue
        aux = square_aux_value(cls)
        if aux is not None:
            principal_gens.append(aux * val)
    k_f = _span_dimension(principal_gens, f)
    full_gens = [v for _, v in F.alpha]
    for p, _ in good:
        full_gens.append(chi_value(F, p))
    k_F = _span_dimension(full_gens, f)
    if k_F % k_f:
        raise EigensystemError("full Hecke field degree not a multiple of the principal degree")
    return HeckeFieldReport(
        principal_degree=k_f,
        full_degree=k_F,
        ratio=k_F // k_f,
        field_description=f.describe(),
    )


# -- serialization ------------------------------------------------------------


def value_field_to_json(f: ValueField) -> dict:
    def enc(q: Fraction):
        return int(q) if q.denominator == 1 else str(q)

    return {
        "minpoly": [enc(c) for c in f.minpoly],
        "adjoined": [
            enc(r[0]) if all(c == 0 for c in r[1:]) else [enc(c) for c in r]
            for r in f.adjoined
        ],
    }


def value_field_from_json(data) -> ValueField:
    def dec(x):
        return Fraction(x)

    minpoly = [dec(c) for c in data.get("minpoly", [0, 1])]
    adjoined = []
    for r in data.get("adjoined", []):
        adjoined.append([dec(c) for c in r] if isinstance(r, list) else dec(r))
    return algext.make_value_field(minpoly, adjoined)


def eigensystem_to_json(F: HeckeEigensystem) -> dict:
    out = {
        "field_disc": F.group.field.disc,
        "level": label(F.level),
        "character": list(F.character.exps),
        "field": value_field_to_json(F.vfield),
        "alpha": {label(p): algext.render_value(v) for p, v in F.alpha},
        "al": {label(q): s for q, s in F.al_signs} if F.al_signs is not None else None,
        "selftwist": (
            {"possible": [list(c.exps) for c in F.selftwist_candidates]}
            if F.selftwist_candidates
            else None
        ),
    }
    return out


def eigensystem_from_json(group: ClassGroup, data: dict) -> HeckeEigensystem:
    from .quadfield import ideal_from_label

    if data.get("field_disc") not in (None, group.field.disc):
        raise EigensystemError(
            f"fixture is for discriminant {data['field_disc']}, not {group.field.disc}"
        )
    f = value_field_from_json(data.get("field", {}))
    level = ideal_from_label(group.field, data["level"])
    chi = character_from_json(
        group, data.get("character", [0] * len(group.elementary_divisors))
    )
    alpha = {
        ideal_from_label(group.field, lab): algext.parse_value(f, text)
        for lab, text in data.get("alpha", {}).items()
    }
    al = data.get("al")
    al_map = (
        {ideal_from_label(group.field, lab): int(s) for lab, s in al.items()}
        if al is not None
        else None
    )
    cands = None
    st = data.get("selftwist")
    if isinstance(st, dict) and "possible" in st:
        cands = [ClassCharacter(tuple(e)) for e in st["possible"]]
    return make_eigensystem(
        group, level, chi, alpha, al_map, vfield=f, selftwist_candidates=cands
    )
