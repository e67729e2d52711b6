"""Old/new dimension bookkeeping and structural validation of newform tables.

The newspace dimension at a level is the full dimension minus the sigma0-
weighted contributions of the newspaces at proper divisors.  On principal
homology the contribution of a newform with self-twist is smaller: only the
divisors on which the self-twist character is +1 count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import ClassCharacter, eval_on_class, is_quadratic
from .classgroup import ClassGroup
from .quadfield import (
    Ideal,
    divides,
    divisors,
    ideal_div_exact,
    ideal_from_label,
    label,
    sigma0,
)


class DimensionError(ValueError):
    pass


def newspace_dims(group_field, full_dims: dict[Ideal, int]) -> dict[Ideal, int]:
    """Solve for new dimensions from full dimensions, in norm order.

    Every divisor of every queried level must be present in full_dims.
    """
    new: dict[Ideal, int] = {}
    for n in sorted(full_dims, key=lambda i: (i.norm, i.a, i.c, i.b)):
        total = 0
        for m in divisors(n):
            if m == n:
                continue
            if m not in full_dims:
                raise DimensionError(
                    f"missing dimension data at divisor {label(m)} of {label(n)}"
                )
            total += sigma0(ideal_div_exact(n, m)) * new[m]
        new[n] = full_dims[n] - total
    return new


@dataclass(frozen=True)
class NewformRecord:
    """One Galois orbit of homological newforms at a level.

    degree is the dimension of the orbit (the degree of the principal Hecke
    field); side is "plus" or "minus" for the two involution eigenspaces;
    selftwist carries the self-twist character when there is one; shape, when
    pinned by the Hecke-field table, is "split", "joined", or "selftwist".
    """

    level: Ideal
    side: str
    degree: int
    selftwist: ClassCharacter | None = None
    shape: str | None = None


def oldclass_principal_multiplicity(
    group: ClassGroup, record: NewformRecord, n: Ideal
) -> int:
    """Dimension of the principal projection of the oldclass of the record's
    newform at level n."""
    m = record.level
    if not divides(m, n):
        raise DimensionError(f"{label(m)} does not divide {label(n)}")
    quotient = ideal_div_exact(n, m)
    if record.selftwist is None:
        return sigma0(quotient)
    psi = record.selftwist
    if not is_quadratic(group, psi) or psi.is_trivial():
        raise DimensionError("self-twist character must be quadratic and nontrivial")
    count = 0
    for d in divisors(quotient):
        if eval_on_class(group, psi, group.ideal_class(d)).as_sign() == 1:
            count += 1
    return count


@dataclass(frozen=True)
class DimensionRow:
    level: str
    conj: str | None
    nd: int
    hplus: tuple[int, ...]
    hminus: tuple[int, ...]
    chi0: tuple[int, ...]
    chi13: tuple[int, ...]

    @staticmethod
    def from_json(data: dict) -> "DimensionRow":
        return DimensionRow(
            level=data["level"],
            conj=data.get("conj"),
            nd=data["nd"],
            hplus=tuple(data.get("Hplus", [])),
            hminus=tuple(data.get("Hminus", [])),
            chi0=tuple(data.get("chi0", [])),
            chi13=tuple(data.get("chi13", [])),
        )

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "conj": self.conj,
            "nd": self.nd,
            "Hplus": list(self.hplus),
            "Hminus": list(self.hminus),
            "chi0": list(self.chi0),
            "chi13": list(self.chi13),
        }


def _shape_options(side: str, degree: int, record: NewformRecord | None):
    d = degree
    if side == "plus":
        shapes = {"split": (d, d), "joined": (2 * d,), "selftwist": (d,)}
    else:
        shapes = {"split": (2 * d, 2 * d), "joined": (4 * d,), "selftwist": (2 * d,)}
    if record is not None and record.shape is not None:
        return {record.shape: shapes[record.shape]}
    if record is not None and record.selftwist is not None:
        return {"selftwist": shapes["selftwist"]}
    return {k: v for k, v in shapes.items() if k != "selftwist"}


def _cover(entries: list[int], blocks: list[dict]) -> bool:
    """Can the multiset of entries be partitioned into one shape per block?"""
    remaining = sorted(entries, reverse=True)

    def rec(i, rem):
        if i == len(blocks):
            return not rem
        for shape in blocks[i].values():
            probe = list(rem)
            ok = True
            for x in shape:
                if x in probe:
                    probe.remove(x)
                else:
                    ok = False
                    break
            if ok and rec(i + 1, probe):
                return True
        return False

    return rec(0, remaining)


@dataclass
class RowReport:
    level: str
    ok: bool
    violations: list[str]


def validate_row(
    group: ClassGroup,
    row: DimensionRow,
    records: list[NewformRecord],
) -> RowReport:
    """Structural checks of one newform-table row.

    (i)  nd equals 4 * dim H minus twice the total self-twist degree;
    (ii) the chi0 column decomposes into per-record shapes d,d | 2d | d;
    (iii) the chi1,chi3 column decomposes into shapes 2d,2d | 4d | 2d;
    (iv) the conjugate label really is the Galois conjugate of the level.
    """
    violations = []
    K = group.field
    level = ideal_from_label(K, row.level)
    conj = level.conjugate()
    if row.conj is None:
        if conj != level:
            violations.append(f"level {row.level} is not self-conjugate")
    else:
        if label(conj) != row.conj:
            violations.append(
                f"conjugate of {row.level} is {label(conj)}, row says {row.conj}"
            )
    here = [r for r in records if label(r.level) == row.level]
    plus = [r for r in here if r.side == "plus"]
    minus = [r for r in here if r.side == "minus"]
    if sorted(r.degree for r in plus) != sorted(row.hplus):
        violations.append("records do not match the H+ column")
    if sorted(r.degree for r in minus) != sorted(row.hminus):
        violations.append("records do not match the H- column")
    deficit = 2 * sum(r.degree for r in here if r.selftwist is not None)
    dim_h = sum(row.hplus) + sum(row.hminus)
    if row.nd != 4 * dim_h - deficit:
        violations.append(
            f"nd = {row.nd} but 4*dimH - deficit = {4 * dim_h - deficit}"
        )
    plus_blocks = [_shape_options("plus", r.degree, r) for r in plus]
    if not _cover(list(row.chi0), plus_blocks):
        violations.append("chi0 column does not decompose into H+ orbit shapes")
    minus_blocks = [_shape_options("minus", r.degree, r) for r in minus]
    if not _cover(list(row.chi13), minus_blocks):
        violations.append("chi1,chi3 column does not decompose into H- orbit shapes")
    return RowReport(level=row.level, ok=not violations, violations=violations)
