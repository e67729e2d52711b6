"""Loading and cross-checking the shipped fixture bundle.

A bundle directory holds the field descriptor with its class-group pin, the
eigensystem tables, the principal-operator oracle files, the newspace
dimension table, the Hecke-field table, and elliptic-curve a_p lists.  Every
file is schema-checked at load time and all ideal labels are resolved
eagerly, so a broken bundle fails fast.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .characters import ClassCharacter, character_from_json, quadratic_characters
from .classgroup import BQForm, ClassGroup, compute_class_group
from .dimensions import DimensionRow, NewformRecord
from .eigensystem import HeckeEigensystem, eigensystem_from_json
from .quadfield import (
    QuadField,
    ideal_from_label,
    make_field,
    register_label_ordering,
)


class BundleError(ValueError):
    pass


DEFAULT_BUNDLE_DIR = Path(__file__).parent / "data"


@dataclass
class HeckeFieldRow:
    level: str
    index: int
    kf: str
    kf_degree: int
    kF: str
    kF_degree: int


class FixtureBundle:
    def __init__(self, directory: Path | str = DEFAULT_BUNDLE_DIR):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise BundleError(f"bundle directory {self.directory} does not exist")
        self.field, self.group = self._load_field()
        self.eigensystem_tables = self._load_eigensystems()
        self.dimension_rows, self.selftwist_records = self._load_dimension_table()
        self.hecke_field_rows = self._load_hecke_fields()
        self.curves = self._load_curves()

    def _read(self, name: str):
        path = self.directory / name
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise BundleError(f"{name} is not valid JSON: {exc}")

    def _load_field(self) -> tuple[QuadField, ClassGroup]:
        data = None
        for path in sorted(self.directory.glob("field_*.json")):
            data = json.loads(path.read_text())
            break
        if data is None:
            raise BundleError("bundle has no field descriptor")
        K = make_field(data["d"])
        if "disc" in data and data["disc"] != K.disc:
            raise BundleError(f"field descriptor disc {data['disc']} != {K.disc}")
        if data.get("label_ordering"):
            register_label_ordering(K.disc, data["label_ordering"])
        group = compute_class_group(K)
        pin = data.get("class_group")
        if pin:
            if pin.get("h") != group.h:
                raise BundleError(f"class number pin {pin.get('h')} != computed {group.h}")
            if tuple(pin.get("elementary_divisors", [])) != group.elementary_divisors:
                raise BundleError("elementary-divisor pin does not match")
            gens = [BQForm(*g) for g in pin.get("generators", [])]
            if gens and tuple(gens) != group.generators:
                raise BundleError("generator pin does not match the computed group")
        return K, group

    def _load_eigensystems(self) -> dict[str, dict[str, HeckeEigensystem]]:
        out: dict[str, dict[str, HeckeEigensystem]] = {}
        for path in sorted(self.directory.glob("eigensystems_*.json")):
            data = json.loads(path.read_text())
            level = data["level"]
            ideal_from_label(self.field, level)
            table = {}
            for row in data.get("systems", []):
                system = eigensystem_from_json(
                    self.group, {**row, "level": level, "field_disc": data.get("field_disc")}
                )
                table[row.get("name", str(len(table)))] = system
            out[level] = table
        return out

    def _load_dimension_table(self):
        data = self._read_one("dimension_table_*.json")
        if data is None:
            return [], []
        rows = [DimensionRow.from_json(r) for r in data.get("rows", [])]
        seen = set()
        for row in rows:
            ideal_from_label(self.field, row.level)
            if row.level in seen:
                raise BundleError(f"duplicate dimension row {row.level}")
            seen.add(row.level)
        return rows, data.get("selftwist_records", [])

    def _load_hecke_fields(self):
        data = self._read_one("hecke_fields_*.json")
        if data is None:
            return None
        rows = [HeckeFieldRow(**r) for r in data.get("rows", [])]
        for r in rows:
            ideal_from_label(self.field, r.level)
            if r.kF_degree not in (r.kf_degree, 2 * r.kf_degree):
                raise BundleError(
                    f"Hecke-field row {r.level}#{r.index}: degree {r.kF_degree} "
                    f"is neither d nor 2d for d = {r.kf_degree}"
                )
        return rows

    def _load_curves(self):
        out = {}
        for path in sorted(self.directory.glob("curve_*.json")):
            data = json.loads(path.read_text())
            ideal_from_label(self.field, data["conductor"])
            for lab in data.get("ap", {}):
                ideal_from_label(self.field, lab)
            out[data.get("curve", path.stem)] = data
        return out

    def _read_one(self, pattern: str):
        for path in sorted(self.directory.glob(pattern)):
            return json.loads(path.read_text())
        return None

    # -- derived views ------------------------------------------------------

    def system(self, level: str, name: str) -> HeckeEigensystem:
        try:
            return self.eigensystem_tables[level][name]
        except KeyError:
            raise BundleError(f"no eigensystem {name!r} at level {level}")

    def systems_at(self, level: str) -> list[HeckeEigensystem]:
        return list(self.eigensystem_tables.get(level, {}).values())

    def oracle_files(self) -> list[Path]:
        return sorted(self.directory.glob("oracle_*.json"))

    def _nontrivial_quadratic(self) -> ClassCharacter:
        cands = [c for c in quadratic_characters(self.group) if not c.is_trivial()]
        if len(cands) != 1:
            raise BundleError("self-twist record needs an explicit character")
        return cands[0]

    def newform_records(self) -> list[NewformRecord]:
        """Records for every dimension-table row, with shapes pinned from the
        Hecke-field table where it covers the level (or its conjugate)."""
        hf_by_level: dict[str, list[HeckeFieldRow]] = {}
        for r in self.hecke_field_rows or []:
            hf_by_level.setdefault(r.level, []).append(r)
        records: list[NewformRecord] = []
        for row in self.dimension_rows:
            level = ideal_from_label(self.field, row.level)
            flags = [
                r
                for r in self.selftwist_records
                if r["level"] == row.level
            ]
            hf = hf_by_level.get(row.level)
            if hf is None and row.conj:
                hf = hf_by_level.get(row.conj)
            plus_shapes: list[str | None] = [None] * len(row.hplus)
            if hf is not None:
                degrees = sorted(row.hplus)
                hf_sorted = sorted(hf, key=lambda r: r.kf_degree)
                if [r.kf_degree for r in hf_sorted] != degrees:
                    raise BundleError(
                        f"Hecke-field degrees at {row.level} do not match the H+ column"
                    )
                plus_shapes = [
                    "split" if r.kF_degree == r.kf_degree else "joined"
                    for r in hf_sorted
                ]
                plus_degrees = degrees
            else:
                plus_degrees = sorted(row.hplus)
            for side, degs, shapes in (
                ("plus", plus_degrees, plus_shapes),
                ("minus", sorted(row.hminus), [None] * len(row.hminus)),
            ):
                side_flags = [f for f in flags if f["side"] == side]
                for d, shape in zip(degs, shapes):
                    st = None
                    hit = next((f for f in side_flags if f["degree"] == d), None)
                    if hit is not None:
                        side_flags.remove(hit)
                        st = (
                            character_from_json(self.group, hit["character"])
                            if "character" in hit
                            else self._nontrivial_quadratic()
                        )
                        shape = "selftwist"
                    records.append(
                        NewformRecord(
                            level=level, side=side, degree=d, selftwist=st, shape=shape
                        )
                    )
                if side_flags:
                    raise BundleError(
                        f"unmatched self-twist record at {row.level} ({side})"
                    )
        return records


def load_default_bundle() -> FixtureBundle:
    return FixtureBundle(DEFAULT_BUNDLE_DIR)
