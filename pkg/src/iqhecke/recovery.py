"""Recovering a full Hecke eigensystem from principal-operator eigenvalues.

The input is an oracle answering eigenvalue queries for principal operators
T_{a,a} T_b W_q (class of a^2 b q trivial, a and b coprime to the level,
q an exact divisor of the level).  The output is one eigensystem in the
twist orbit that the oracle determines: the character restricted to the
two-torsion classes pins the character up to squares, eigenvalues at good
primes are recovered class by class, and sign choices at primes in
nontrivial genus classes are kept consistent through a doubling table of
reference pairs (a, alpha(a)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import algext
from .algext import AlgValue, lift, sqrt_or_adjoin
from .characters import (
    character_group,
    character_order,
    eval_on_class,
)
from .classgroup import ClassGroup, IdealClass
from .eigensystem import (
    EigensystemError,
    HeckeEigensystem,
    chi_value,
    coefficient,
    extend_for_root_order,
    make_eigensystem,
    root_of_unity_value,
)
from .quadfield import (
    Ideal,
    coprime,
    exact_divisors,
    exact_prime_power_divisors,
    ideal_mul,
    ideal_pow,
    ideals_of_norm,
    label,
    primes_of_norm_up_to,
    unit_ideal,
)


class OracleMissingError(KeyError):
    """The oracle has no value for the requested principal operator."""

    def __init__(self, operator, detail=""):
        super().__init__(str(operator))
        self.operator = operator
        self.detail = detail


class RecoveryError(ValueError):
    pass


@dataclass(frozen=True)
class PrincipalOperator:
    """T_{aa,aa} T_t W_w with trivial total class (use the factory below)."""

    aa: Ideal
    t: Ideal
    w: Ideal | None = None

    def __str__(self):
        parts = []
        if not self.aa.is_unit():
            parts.append(f"T({label(self.aa)},{label(self.aa)})")
        if not self.t.is_unit():
            parts.append(f"T({label(self.t)})")
        if self.w is not None:
            parts.append(f"W({label(self.w)})")
        return "*".join(parts) if parts else "1"


def make_principal_operator(
    group: ClassGroup,
    level: Ideal,
    aa: Ideal | None = None,
    t: Ideal | None = None,
    w: Ideal | None = None,
) -> PrincipalOperator:
    K = group.field
    aa = aa if aa is not None else unit_ideal(K)
    t = t if t is not None else unit_ideal(K)
    if not coprime(aa, level) or not coprime(t, level):
        raise RecoveryError(f"operator parts must be coprime to the level {label(level)}")
    total = group.mul(
        group.power(group.ideal_class(aa), 2), group.ideal_class(t)
    )
    if w is not None:
        if w not in exact_divisors(level):
            raise RecoveryError(f"{label(w)} is not an exact divisor of the level")
        total = group.mul(total, group.ideal_class(w))
    if not total.is_identity():
        raise RecoveryError("operator is not principal (total ideal class nontrivial)")
    return PrincipalOperator(aa, t, w)


class SyntheticOracle:
    """Principal-operator eigenvalues read off a full eigensystem:
    lambda(T_{a,a} T_b W_q) = chi(a) alpha(b) epsilon(q)."""

    def __init__(self, system: HeckeEigensystem):
        self.system = system

    def query(self, op: PrincipalOperator) -> AlgValue:
        F = self.system
        chi_a = chi_value(F, op.aa)
        try:
            val = chi_a * coefficient(F, op.t)
        except EigensystemError as exc:
            raise OracleMissingError(op, str(exc))
        if op.w is not None:
            sign = 1
            for q in exact_prime_power_divisors(op.w) if not op.w.is_unit() else []:
                try:
                    sign *= F.al_sign(q)
                except EigensystemError as exc:
                    raise OracleMissingError(op, str(exc))
            val = val.scale(sign)
        return val


class FixtureOracle:
    """Principal-operator eigenvalues looked up from a fixture table."""

    def __init__(self, mapping: dict[PrincipalOperator, AlgValue]):
        self.mapping = dict(mapping)

    def query(self, op: PrincipalOperator) -> AlgValue:
        if op not in self.mapping:
            raise OracleMissingError(op)
        return self.mapping[op]


def fixture_oracle_from_json(group: ClassGroup, data: dict):
    """Load {"field_disc", "level", "field", "values": [{aa,t,w,value}]}."""
    from .eigensystem import value_field_from_json
    from .quadfield import ideal_from_label

    if data.get("field_disc") not in (None, group.field.disc):
        raise RecoveryError("oracle fixture is for a different field")
    level = ideal_from_label(group.field, data["level"])
    f = value_field_from_json(data.get("field", {}))
    mapping = {}
    for row in data["values"]:
        op = make_principal_operator(
            group,
            level,
            aa=ideal_from_label(group.field, row["aa"]) if row.get("aa") else None,
            t=ideal_from_label(group.field, row["t"]) if row.get("t") else None,
            w=ideal_from_label(group.field, row["w"]) if row.get("w") else None,
        )
        mapping[op] = algext.parse_value(f, str(row["value"]))
    return FixtureOracle(mapping), level


def fixture_oracle_to_json(
    group: ClassGroup, level: Ideal, oracle: FixtureOracle, vfield=None
) -> dict:
    from .eigensystem import value_field_to_json

    f = vfield
    if f is None:
        f = algext.RATIONAL_FIELD
        for v in oracle.mapping.values():
            f = algext.join_fields(f, v.field)
    rows = []
    for op in sorted(
        oracle.mapping,
        key=lambda o: (o.t.norm, o.aa.norm, o.w.norm if o.w else 0, str(o)),
    ):
        rows.append(
            {
                "aa": None if op.aa.is_unit() else label(op.aa),
                "t": None if op.t.is_unit() else label(op.t),
                "w": label(op.w) if op.w is not None else None,
                "value": algext.render_value(lift(oracle.mapping[op], f)),
            }
        )
    return {
        "field_disc": group.field.disc,
        "level": label(level),
        "field": value_field_to_json(f),
        "values": rows,
    }


def project_to_principal(F: HeckeEigensystem) -> SyntheticOracle:
    return SyntheticOracle(F)


@dataclass
class SignTable:
    """Reference pairs (a, alpha(a)), one per genus class reached so far."""

    group: ClassGroup
    entries: list = field(default_factory=list)  # (Ideal, AlgValue)

    def genus_key(self, cls: IdealClass):
        sq = self.group.squares()
        return min((self.group.mul(cls, s).exps for s in sq))

    def lookup(self, cls: IdealClass):
        key = self.genus_key(cls)
        for a, va in self.entries:
            if self.genus_key(self.group.ideal_class(a)) == key:
                return a, va
        return None

    def extend(self, p: Ideal, alpha_p: AlgValue):
        new = []
        for a, va in self.entries:
            common = algext.join_fields(va.field, alpha_p.field)
            new.append((ideal_mul(a, p), lift(va, common) * lift(alpha_p, common)))
        self.entries.extend(new)
        self.entries.append((p, alpha_p))

    def size(self) -> int:
        return len(self.entries) + 1  # counting the implicit ((1), 1) entry


@dataclass
class RecoveryResult:
    system: HeckeEigensystem
    alpha_gaps: list  # (Ideal, PrincipalOperator) pairs the oracle could not answer
    al_incomplete: list  # exact divisors whose sign could not be determined


def recover(
    oracle,
    group: ClassGroup,
    level: Ideal,
    bound: int,
    sign_flip: bool = False,
    on_missing: str = "error",
) -> RecoveryResult:
    """Run the full recovery procedure against a principal-operator oracle.

    on_missing: "error" propagates oracle gaps, "skip" records them and
    leaves the affected eigenvalue out of the result.
    """
    if on_missing not in ("error", "skip"):
        raise RecoveryError(f"bad on_missing={on_missing!r}")
    K = group.field
    squares = group.squares()

    # Step 1: the character on the two-torsion classes, then its chosen lift.
    restriction = {}
    for cls in sorted(group.two_torsion(), key=lambda c: c.exps):
        if cls.is_identity():
            restriction[cls] = 1
            continue
        a = _first_ideal(group, level, lambda x, c=cls: x == c)
        vrou = oracle.query(make_principal_operator(group, level, aa=a))
        if not vrou.is_rational() or vrou.rational_value() not in (1, -1):
            raise RecoveryError(
                f"T_(a,a) at class {cls.exps} returned {algext.render_value(vrou)}, not +-1"
            )
        restriction[cls] = int(vrou.rational_value())
    chi = None
    for cand in character_group(group):
        if all(
            eval_on_class(group, cand, cls).as_sign() == sign
            for cls, sign in restriction.items()
        ):
            chi = cand
            break
    assert chi is not None
    work = extend_for_root_order(algext.RATIONAL_FIELD, character_order(group, chi))

    def chiv(cls: IdealClass) -> AlgValue:
        v = root_of_unity_value(work, eval_on_class(group, chi, cls))
        assert v is not None
        return v

    def absorb(v: AlgValue) -> AlgValue:
        nonlocal work, alpha
        if v.field != work:
            work = algext.join_fields(work, v.field)
            alpha = {p: lift(x, work) for p, x in alpha.items()}
        return lift(v, work)

    # Step 2: eigenvalues at good primes, in increasing norm order.
    alpha: dict[Ideal, AlgValue] = {}
    gaps = []
    table = SignTable(group)
    for p in primes_of_norm_up_to(K, bound):
        if not coprime(p, level):
            continue
        cls = group.ideal_class(p)
        try:
            if cls.is_identity():
                op = make_principal_operator(group, level, t=p)
                alpha[p] = absorb(oracle.query(op))
            elif cls in squares:
                a = _first_ideal(
                    group,
                    level,
                    lambda x, c=cls: group.mul(group.power(x, 2), c).is_identity(),
                    also_coprime_to=p,
                )
                op = make_principal_operator(group, level, aa=a, t=p)
                v = absorb(oracle.query(op))
                alpha[p] = v / chiv(group.ideal_class(a))
            else:
                alpha_p = _recover_nonsquare(
                    oracle, group, level, p, cls, chi, chiv, absorb, table, sign_flip
                )
                alpha[p] = absorb(alpha_p)
        except OracleMissingError as exc:
            if on_missing == "error":
                raise
            gaps.append((p, exc.operator))

    # Step 3: involution signs, only for the trivial character.
    al_signs = None
    al_incomplete = []
    if chi.is_trivial():
        al_signs = {}
        for q in exact_prime_power_divisors(level):
            qcls = group.ideal_class(q)
            try:
                if qcls.is_identity():
                    v = absorb(oracle.query(make_principal_operator(group, level, w=q)))
                elif qcls in squares:
                    a = _first_ideal(
                        group,
                        level,
                        lambda x, c=qcls: group.mul(group.power(x, 2), c).is_identity(),
                    )
                    v = absorb(
                        oracle.query(make_principal_operator(group, level, aa=a, w=q))
                    )
                else:
                    inv = group.inv(qcls)
                    helper = next(
                        (
                            pp
                            for pp in sorted(alpha, key=lambda i: i.norm)
                            if group.ideal_class(pp) == inv and not alpha[pp].is_zero()
                        ),
                        None,
                    )
                    if helper is None:
                        al_incomplete.append(q)
                        continue
                    v = absorb(
                        oracle.query(make_principal_operator(group, level, t=helper, w=q))
                    )
                    v = v / alpha[helper]
            except OracleMissingError as exc:
                if on_missing == "error":
                    raise
                al_incomplete.append(q)
                continue
            if not v.is_rational() or v.rational_value() not in (1, -1):
                raise RecoveryError(
                    f"involution sign at {label(q)} is {algext.render_value(v)}, not +-1"
                )
            al_signs[q] = int(v.rational_value())
    system = make_eigensystem(group, level, chi, alpha, al_signs, vfield=work)
    return RecoveryResult(system=system, alpha_gaps=gaps, al_incomplete=al_incomplete)


def _recover_nonsquare(
    oracle, group, level, p, cls, chi, chiv, absorb, table: SignTable, sign_flip: bool
) -> AlgValue:
    """Steps 2(c) and 2(d).

    When the genus class of p already has a table entry (a, alpha(a)), the
    eigenvalue comes out of a single division against a principal operator
    built from p*a, with no sign ambiguity.  Otherwise alpha(p)^2 is
    computed, and a nonzero value forces a sign choice: take the canonical
    root and double the table.
    """
    hit = table.lookup(cls)
    if hit is not None:
        a_t, alpha_t = hit
        b = ideal_mul(p, a_t)
        if group.ideal_class(b).is_identity():
            num = absorb(oracle.query(make_principal_operator(group, level, t=b)))
            return num / absorb(alpha_t)
        d = _first_ideal(
            group,
            level,
            lambda x, c=group.ideal_class(b): group.mul(
                group.power(x, 2), c
            ).is_identity(),
        )
        num = absorb(oracle.query(make_principal_operator(group, level, aa=d, t=b)))
        return num / (absorb(alpha_t) * chiv(group.ideal_class(d)))
    a = _first_ideal(
        group,
        level,
        lambda x, c=cls: group.mul(group.power(x, 2), group.power(c, 2)).is_identity(),
    )
    op = make_principal_operator(group, level, aa=a, t=ideal_pow(p, 2))
    v = absorb(oracle.query(op))
    acls = group.ideal_class(a)
    npchi = chiv(cls).scale(p.norm)
    alpha_sq = v / chiv(acls) + npchi
    if alpha_sq.is_zero():
        return algext.zero(alpha_sq.field)
    root, _newf = sqrt_or_adjoin(alpha_sq)
    root = absorb(root)
    if sign_flip:
        root = -root
    table.extend(p, root)
    return root


def _first_ideal(group: ClassGroup, level: Ideal, class_pred, also_coprime_to=None, bound=10_000):
    """Smallest-norm ideal coprime to the level (and optionally to another
    ideal) whose class satisfies the predicate."""
    for norm in range(1, bound + 1):
        for i in ideals_of_norm(group.field, norm):
            if not coprime(i, level):
                continue
            if also_coprime_to is not None and not coprime(i, also_coprime_to):
                continue
            if class_pred(group.ideal_class(i)):
                return i
    raise RecoveryError(f"no auxiliary ideal of norm <= {bound} found")
