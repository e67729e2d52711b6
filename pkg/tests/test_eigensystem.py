import warnings

import pytest

from iqhecke import algext
from iqhecke.algext import parse_value, values_equal
from iqhecke.characters import ClassCharacter, character_group, mul_characters
from iqhecke.classgroup import compute_class_group
from iqhecke.eigensystem import (
    EigensystemError,
    base_change_candidate,
    coefficient,
    eigensystem_from_json,
    eigensystem_to_json,
    euler_factor_coefficients,
    galois_conjugate_system,
    hecke_field_report,
    inner_twist_pairs,
    make_eigensystem,
    prime_power_coefficients,
    selftwist_status,
    support_subgroup,
    systems_equal,
    twist,
    twist_orbit,
)
from iqhecke.quadfield import (
    ideal_from_label,
    ideal_mul,
    make_field,
    primes_of_norm_up_to,
    unit_ideal,
)


def orbit_quiet(F):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return twist_orbit(F)


@pytest.fixture(scope="module")
def F0(bundle):
    return bundle.system("2.1", "F0")


def test_coefficient_examples(F0, K17):
    p31 = ideal_from_label(K17, "3.1")
    v = coefficient(F0, ideal_mul(p31, p31))
    assert values_equal(v, algext.from_rational(F0.vfield, 5))
    assert values_equal(coefficient(F0, unit_ideal(K17)), algext.one(F0.vfield))
    p131 = ideal_from_label(K17, "13.1")
    v2 = coefficient(F0, ideal_mul(p31, p131))
    assert values_equal(v2, parse_value(F0.vfield, "-4*sqrt2"))


def test_coefficient_missing_prime_reported(F0, K17):
    with pytest.raises(EigensystemError) as err:
        coefficient(F0, ideal_from_label(K17, "53.1"))
    assert "53.1" in str(err.value)


def test_recursion_matches_euler_factor_oracle(bundle):
    for level, table in bundle.eigensystem_tables.items():
        for F in table.values():
            for p in F.stored_primes():
                rec = prime_power_coefficients(F, p, 4)
                eul = euler_factor_coefficients(F, p, 4)
                assert all(values_equal(a, b) for a, b in zip(rec, eul))


def test_twist_examples(bundle, F0, K17):
    chi1 = ClassCharacter((1,))
    F1 = twist(F0, chi1)
    p31 = ideal_from_label(K17, "3.1")
    assert values_equal(F1.alpha_map()[p31], parse_value(F1.vfield, "2*sqrt2*i"))
    assert systems_equal(F1, bundle.system("2.1", "F1"))
    assert systems_equal(twist(F0, ClassCharacter((0,))), F0)
    F2 = twist(twist(F0, chi1), chi1)
    assert systems_equal(F2, twist(F0, ClassCharacter((2,))))
    p231 = ideal_from_label(K17, "23.1")
    assert values_equal(F0.alpha_map()[p231], parse_value(F0.vfield, "-4*sqrt2"))
    assert values_equal(F2.alpha_map()[p231], parse_value(F2.vfield, "4*sqrt2"))


def test_twist_composition_property(bundle, G17):
    F0 = bundle.system("2.1", "F0")
    for psi in character_group(G17):
        for psi2 in character_group(G17):
            lhs = twist(twist(F0, psi), psi2)
            rhs = twist(F0, mul_characters(G17, psi, psi2))
            assert systems_equal(lhs, rhs)


def test_twist_orbit_sizes(bundle, F0):
    assert len(orbit_quiet(F0)) == 4
    assert len(orbit_quiet(bundle.system("64.1", "selftwist"))) == 2
    # class number 1: a one-element orbit
    g = compute_class_group(make_field(1))
    alpha = {
        p: algext.from_rational(algext.RATIONAL_FIELD, 1 + p.norm % 5)
        for p in primes_of_norm_up_to(g.field, 60)
    }
    F = make_eigensystem(
        g, unit_ideal(g.field), ClassCharacter(()), alpha, {}
    )
    assert len(orbit_quiet(F)) == 1


def test_character_orbit_is_square_coset(bundle, G17):
    squares = {
        mul_characters(G17, psi, psi) for psi in character_group(G17)
    }
    for level, table in bundle.eigensystem_tables.items():
        for F in table.values():
            orbit_chars = {H.character for H in orbit_quiet(F)}
            coset = {mul_characters(G17, F.character, s) for s in squares}
            assert orbit_chars == coset
            assert len(coset) == len(squares)


def test_orbit_size_divides_h_with_selftwist_stabilizer(bundle, G17):
    for level, table in bundle.eigensystem_tables.items():
        for F in table.values():
            orbit = orbit_quiet(F)
            assert G17.h % len(orbit) == 0
            if len(orbit) < G17.h:
                assert selftwist_status(F).status == "possible"


def test_selftwist_status(bundle, F0, K17):
    st = selftwist_status(F0)
    assert st.status == "impossible"
    F64 = bundle.system("64.1", "selftwist")
    st64 = selftwist_status(F64)
    assert st64.status == "possible"
    assert st64.candidates == (ClassCharacter((2,)),)
    # empty eligible set rules self-twist out regardless of the eigenvalues
    F12 = make_eigensystem(
        F0.group,
        ideal_from_label(K17, "12.1"),
        ClassCharacter((0,)),
        {p: algext.zero(algext.RATIONAL_FIELD)
         for p in primes_of_norm_up_to(K17, 30)
         if p.norm not in (2, 3)},
        {},
    )
    assert selftwist_status(F12).status == "impossible"


def test_galois_conjugation(bundle, F0, K17):
    F2 = bundle.system("2.1", "F2")
    assert systems_equal(galois_conjugate_system(F0), F2)
    assert systems_equal(galois_conjugate_system(galois_conjugate_system(F0)), F0)
    F72 = bundle.system("7.2", "a")
    conj = galois_conjugate_system(F72)
    assert conj.level == ideal_from_label(K17, "7.1")
    p31, p32 = ideal_from_label(K17, "3.1"), ideal_from_label(K17, "3.2")
    assert values_equal(conj.alpha_map()[p31], F72.alpha_map()[p32])


def test_conjugate_of_twist_property(bundle, G17):
    # (F (x) psi)^sigma = F^sigma (x) psi^(-1) on all stored data
    from iqhecke.characters import character_inverse

    F0 = bundle.system("2.1", "F0")
    for psi in character_group(G17):
        lhs = galois_conjugate_system(twist(F0, psi))
        rhs = twist(galois_conjugate_system(F0), character_inverse(G17, psi))
        assert systems_equal(lhs, rhs)


def test_inner_twists(bundle, F0, G17):
    chi2 = ClassCharacter((2,))
    pairs = inner_twist_pairs(F0)
    assert any(
        tau.describe() == "sqrt2 -> -sqrt2" and psi == chi2 for tau, psi in pairs
    )
    # rational system over an odd-class-number field: only the trivial pair
    g = compute_class_group(make_field(23))
    alpha = {
        p: algext.from_rational(algext.RATIONAL_FIELD, (p.norm % 7) - 3)
        for p in primes_of_norm_up_to(g.field, 60)
    }
    F = make_eigensystem(g, unit_ideal(g.field), ClassCharacter((0,)), alpha, {})
    only = inner_twist_pairs(F)
    assert len(only) == 1
    tau, psi = only[0]
    assert tau.is_identity() and psi.is_trivial()


def test_base_change_candidates(bundle, F0, K17):
    assert base_change_candidate(bundle.system("2.1", "F1"))
    assert base_change_candidate(bundle.system("2.1", "F3"))
    assert not base_change_candidate(F0)
    with pytest.raises(EigensystemError):
        base_change_candidate(bundle.system("7.2", "a"))
    # class number 1 with symmetric values
    g = compute_class_group(make_field(1))
    alpha = {}
    for p in primes_of_norm_up_to(g.field, 60):
        q = p.conjugate()
        key = min(p, q)
        alpha[p] = algext.from_rational(algext.RATIONAL_FIELD, key.norm % 5)
    F = make_eigensystem(g, unit_ideal(g.field), ClassCharacter(()), alpha, {})
    assert base_change_candidate(F)


def test_support_subgroup(bundle, F0, G17):
    assert support_subgroup(F0).index == 1
    sup = support_subgroup(bundle.system("64.1", "selftwist"))
    assert sup.index == 2
    chi2 = ClassCharacter((2,))
    from iqhecke.characters import eval_on_class

    kernel = {c for c in G17.all_classes() if eval_on_class(G17, chi2, c).is_one()}
    assert sup.classes == frozenset(kernel)


def test_hecke_field_reports(bundle):
    rep = hecke_field_report(bundle.system("2.1", "F0"))
    assert (rep.principal_degree, rep.full_degree, rep.ratio) == (1, 2, 2)
    rep25 = hecke_field_report(bundle.system("25.1", "F0"))
    assert (rep25.principal_degree, rep25.full_degree, rep25.ratio) == (3, 3, 1)
    rep161 = hecke_field_report(bundle.system("16.1", "F1"))
    assert (rep161.principal_degree, rep161.full_degree, rep161.ratio) == (1, 4, 4)


def test_trivial_character_towers_are_totally_real(bundle):
    for level, table in bundle.eigensystem_tables.items():
        for F in table.values():
            if not F.character.is_trivial():
                continue
            for r in F.vfield.adjoined:
                assert all(c == 0 for c in r[1:]) and r[0] > 0
            roots = algext._poly_roots([float(c) for c in F.vfield.minpoly])
            assert all(abs(z.imag) < 1e-9 for z in roots)


def test_al_signs_under_twist(bundle, F0, K17):
    chi2 = ClassCharacter((2,))
    q = ideal_from_label(K17, "2.1")
    F2 = twist(F0, chi2)
    assert F2.al_sign(q) == -1  # chi2 is +1 on the class of 2.1
    F1 = twist(F0, ClassCharacter((1,)))
    assert F1.al_signs is None


def test_serialization_round_trip(bundle, G17):
    for level, table in bundle.eigensystem_tables.items():
        for F in table.values():
            blob = eigensystem_to_json(F)
            back = eigensystem_from_json(G17, blob)
            assert systems_equal(back, F)
            assert eigensystem_to_json(back) == blob


def test_make_eigensystem_validation(G17, K17):
    with pytest.raises(EigensystemError):
        make_eigensystem(
            G17,
            ideal_from_label(K17, "2.1"),
            ClassCharacter((1,)),
            {},
            {ideal_from_label(K17, "2.1"): 1},
        )
    with pytest.raises(EigensystemError):
        make_eigensystem(
            G17,
            ideal_from_label(K17, "2.1"),
            ClassCharacter((0,)),
            {},
            {ideal_from_label(K17, "2.1"): 2},
        )
