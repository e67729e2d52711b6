import json
import random
import warnings

import pytest

from iqhecke import algext
from iqhecke.algext import values_equal
from iqhecke.bundle import DEFAULT_BUNDLE_DIR
from iqhecke.characters import ClassCharacter
from iqhecke.classgroup import compute_class_group
from iqhecke.eigensystem import make_eigensystem, systems_equal, twist_orbit
from iqhecke.quadfield import (
    ideal_from_label,
    make_field,
    primes_of_norm_up_to,
    principal_ideal,
)
from iqhecke.recovery import (
    FixtureOracle,
    OracleMissingError,
    RecoveryError,
    SignTable,
    fixture_oracle_from_json,
    make_principal_operator,
    project_to_principal,
    recover,
)
from iqhecke.verify import random_eigensystem


def orbit_quiet(F):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return twist_orbit(F)


def load_oracle(G17):
    data = json.loads((DEFAULT_BUNDLE_DIR / "oracle_2.1.json").read_text())
    return fixture_oracle_from_json(G17, data)


def test_principality_enforced(G17, K17):
    level = ideal_from_label(K17, "2.1")
    p31 = ideal_from_label(K17, "3.1")
    p131 = ideal_from_label(K17, "13.1")
    # T_{13.1,13.1} T_{13.1} has total class c^2: not principal
    with pytest.raises(RecoveryError):
        make_principal_operator(G17, level, aa=p131, t=p131)
    # T_{3.1} alone is not principal either
    with pytest.raises(RecoveryError):
        make_principal_operator(G17, level, t=p31)
    op = make_principal_operator(G17, level, aa=p31, t=p131)
    assert str(op) == "T(3.1,3.1)*T(13.1)"
    # parts must be coprime to the level
    with pytest.raises(RecoveryError):
        make_principal_operator(G17, level, t=principal_ideal(K17, 4, 0))
    # W-part must exactly divide the level
    with pytest.raises(RecoveryError):
        make_principal_operator(
            G17, principal_ideal(K17, 4, 0), aa=p31, w=ideal_from_label(K17, "2.1")
        )


def test_fixture_recovery(G17, K17):
    oracle, level = load_oracle(G17)
    res = recover(oracle, G17, level, bound=13, on_missing="skip")
    F = res.system
    assert F.character.is_trivial()
    f2 = algext.make_value_field(adjoined=[2])
    expected = {
        "3.1": algext.parse_value(f2, "2*sqrt2"),
        "3.2": algext.parse_value(f2, "-2*sqrt2"),
        "13.1": algext.parse_value(f2, "-2"),
    }
    amap = F.alpha_map()
    for lab, want in expected.items():
        assert values_equal(amap[ideal_from_label(K17, lab)], want)
    assert F.al_sign(ideal_from_label(K17, "2.1")) == -1
    assert {str(p.norm) + "." for p, _ in res.alpha_gaps} == {"7.", "11.", "13."}
    assert res.al_incomplete == []


def test_fixture_recovery_strict_mode_raises(G17, K17):
    oracle, level = load_oracle(G17)
    with pytest.raises(OracleMissingError):
        recover(oracle, G17, level, bound=13, on_missing="error")


def test_project_to_principal_examples(bundle, G17, K17):
    F0 = bundle.system("2.1", "F0")
    oracle = project_to_principal(F0)
    level = F0.level
    p31 = ideal_from_label(K17, "3.1")
    op = make_principal_operator(G17, level, aa=p31, t=ideal_from_label(K17, "9.1"))
    assert values_equal(oracle.query(op), algext.from_rational(F0.vfield, 5))
    trivial = make_principal_operator(G17, level)
    assert values_equal(oracle.query(trivial), algext.one(F0.vfield))
    # F0 and F2 are twists, so their principal projections agree everywhere
    oracle2 = project_to_principal(bundle.system("2.1", "F2"))
    ops = [
        op,
        trivial,
        make_principal_operator(G17, level, t=ideal_from_label(K17, "9.2")),
        make_principal_operator(G17, level, aa=p31, t=ideal_from_label(K17, "13.1")),
        make_principal_operator(G17, level, aa=p31, w=ideal_from_label(K17, "2.1")),
        make_principal_operator(G17, level, t=ideal_from_label(K17, "17.1")),
    ]
    for o in ops:
        assert values_equal(oracle.query(o), oracle2.query(o))


def test_oracle_coverage_errors(bundle, G17, K17):
    F0 = bundle.system("2.1", "F0")
    oracle = project_to_principal(F0)
    # the primes above 53 are principal (53 = 6^2 + 17) but not stored in F0
    op = make_principal_operator(G17, F0.level, t=ideal_from_label(K17, "53.1"))
    with pytest.raises(OracleMissingError):
        oracle.query(op)


def test_class_number_one_recovery_is_exact():
    g = compute_class_group(make_field(1))
    rng = random.Random(5)
    F = random_eigensystem(g, rng, bound=80)
    res = recover(project_to_principal(F), g, F.level, 80)
    # with h = 1 every operator is principal and the source comes back exactly
    assert systems_equal(res.system, F)


def test_16_1_round_trip(bundle, G17):
    for name in ["F1", "F2", "F4", "F6"]:
        F = bundle.system("16.1", name)
        res = recover(project_to_principal(F), G17, F.level, bound=17)
        orbit = orbit_quiet(F)
        assert any(systems_equal(res.system, H) for H in orbit)
        assert res.system.character in (ClassCharacter((1,)), ClassCharacter((3,)))


def test_sign_flip_lands_in_same_orbit(bundle, G17):
    F0 = bundle.system("2.1", "F0")
    res_a = recover(project_to_principal(F0), G17, F0.level, bound=25)
    res_b = recover(project_to_principal(F0), G17, F0.level, bound=25, sign_flip=True)
    orbit = orbit_quiet(F0)
    assert any(systems_equal(res_a.system, H) for H in orbit)
    assert any(systems_equal(res_b.system, H) for H in orbit)
    assert not systems_equal(res_a.system, res_b.system)


def test_sign_table_doubles_and_caps():
    g = compute_class_group(make_field(21))  # C2 x C2, r2 = 2
    table = SignTable(g)
    f = algext.RATIONAL_FIELD
    pool = primes_of_norm_up_to(g.field, 60)
    used = []
    for p in pool:
        cls = g.ideal_class(p)
        if cls.is_identity() or cls in g.squares():
            continue
        if table.lookup(cls) is None:
            table.extend(p, algext.from_rational(f, 1))
            used.append(p)
        if table.size() == 4:
            break
    assert table.size() == 4  # 2^r2
    assert len(used) == 2  # doubled exactly r2 times


def test_character_probe_must_be_sign(G17, K17):
    level = ideal_from_label(K17, "2.1")
    op = make_principal_operator(G17, level, aa=ideal_from_label(K17, "9.1"))
    bad = FixtureOracle({op: algext.from_rational(algext.RATIONAL_FIELD, 3)})
    with pytest.raises(RecoveryError):
        recover(bad, G17, level, bound=3)


def test_oracle_fixture_round_trip_serialization(G17):
    from iqhecke.recovery import fixture_oracle_to_json

    data = json.loads((DEFAULT_BUNDLE_DIR / "oracle_2.1.json").read_text())
    oracle, level = fixture_oracle_from_json(G17, data)
    assert len(oracle.mapping) == len(data["values"])
    for row in data["values"]:
        op = make_principal_operator(
            G17,
            level,
            aa=ideal_from_label(G17.field, row["aa"]) if row["aa"] else None,
            t=ideal_from_label(G17.field, row["t"]) if row["t"] else None,
            w=ideal_from_label(G17.field, row["w"]) if row["w"] else None,
        )
        assert values_equal(
            oracle.query(op),
            algext.parse_value(algext.RATIONAL_FIELD, str(row["value"])),
        )
    # print-then-parse is the identity on the oracle contents
    blob = fixture_oracle_to_json(G17, level, oracle)
    oracle2, level2 = fixture_oracle_from_json(G17, blob)
    assert level2 == level
    assert set(oracle2.mapping) == set(oracle.mapping)
    for op, v in oracle.mapping.items():
        assert values_equal(oracle2.mapping[op], v)
    assert fixture_oracle_to_json(G17, level, oracle2) == blob


def test_selftwist_pattern_round_trip(bundle, G17):
    # all eigenvalues vanish in the order-4 classes: the sign table never
    # fires and the zero branch of the nonsquare route is exercised
    F64 = bundle.system("64.1", "selftwist")
    restricted = make_eigensystem(
        G17,
        F64.level,
        F64.character,
        {p: v for p, v in F64.alpha if p.norm <= 13},
        None,
        vfield=F64.vfield,
    )
    res = recover(
        project_to_principal(restricted), G17, F64.level, bound=13, on_missing="skip"
    )
    assert res.system.character.is_trivial()
    assert not res.alpha_gaps
    assert res.al_incomplete  # the fixture carries no involution signs
    orbit = orbit_quiet(restricted)
    assert len(orbit) == 2
    assert any(systems_equal(res.system, H) for H in orbit)
    amap = res.system.alpha_map()
    assert all(amap[p].is_zero() for p in amap if G17.class_order(G17.ideal_class(p)) == 4)


def test_projection_is_twist_invariant(bundle, G17, K17):
    from iqhecke.characters import character_group
    from iqhecke.eigensystem import twist

    F0 = bundle.system("2.1", "F0")
    level = F0.level
    p31 = ideal_from_label(K17, "3.1")
    ops = [
        make_principal_operator(G17, level, aa=p31, t=ideal_from_label(K17, "9.1")),
        make_principal_operator(G17, level, t=ideal_from_label(K17, "9.2")),
        make_principal_operator(G17, level, aa=p31, t=ideal_from_label(K17, "13.1")),
        make_principal_operator(G17, level, t=ideal_from_label(K17, "17.1")),
        make_principal_operator(G17, level, t=ideal_from_label(K17, "25.1")),
        make_principal_operator(
            G17, level, t=ideal_from_label(K17, "21.2")
        ),  # 3.1 * 7.2, principal
    ]
    base = project_to_principal(F0)
    for psi in character_group(G17):
        other = project_to_principal(twist(F0, psi))
        for op in ops:
            assert values_equal(base.query(op), other.query(op))


def test_al_incomplete_reported():
    # a level whose single involution block sits in a nonsquare class, with
    # all eigenvalues zero in the inverse class: the sign is unreachable
    g = compute_class_group(make_field(17))
    K = g.field
    level = ideal_from_label(K, "3.1")
    alpha = {}
    f = algext.RATIONAL_FIELD
    for p in primes_of_norm_up_to(K, 30):
        if p.norm % 3 == 0:
            continue
        cls = g.ideal_class(p)
        inverse_of_q = g.inv(g.ideal_class(level))
        alpha[p] = (
            algext.zero(f) if cls == inverse_of_q else algext.from_rational(f, 2)
        )
    F = make_eigensystem(g, level, ClassCharacter((0,)), alpha, {level: 1})
    res = recover(project_to_principal(F), g, level, bound=30, on_missing="skip")
    assert res.al_incomplete == [level]
