"""Levy-Hincin correspondence: validation, gates, GNS round trips."""

import math
from fractions import Fraction

import pytest

from bifree import scalars
from bifree.cumulants import CumulantTable, MomentTable
from bifree.errors import (DegreeError, InconsistentDataError,
                           RealizabilityError)
from bifree.fock import FockModel, model_cumulants
from bifree.levy_hincin import (LevyHincinData, check_cond_bounded, check_cpsd,
                                check_moment_2sequence, extract_levy_measures,
                                gns_reconstruct, lh_to_cumulants,
                                r_transform_from_lh, validate_lh)
from bifree.limits import (bifree_gaussian, bifree_poisson,
                           compound_bifree_poisson)
from bifree.measures import (DiscretePlanarMeasure, moment_table, point_mass,
                             product_measure)
from bifree.series import r_transform_series

from conftest import (random_commuting_model, random_measure_1d,
                      random_validated_lh)

R = scalars.RATIONAL


def origin_measure(weight, signed=False):
    return DiscretePlanarMeasure.from_atoms([(0, 0, weight)], signed=signed)


def gaussian_lh(s1, s2, c):
    return LevyHincinData(Fraction(0), Fraction(0), origin_measure(s1),
                          origin_measure(s2), origin_measure(c, signed=True))


def poisson_lh(lam, alpha, beta):
    atom = lambda w, signed=False: DiscretePlanarMeasure.from_atoms(
        [(alpha, beta, w)], signed=signed)
    return LevyHincinData(lam * alpha, lam * beta, atom(lam * alpha * alpha),
                          atom(lam * beta * beta), atom(lam * alpha * beta, True))


def factorial_table(degree=8):
    entries = {(m, t - m): Fraction(math.factorial(t))
               for t in range(1, degree + 1) for m in range(t + 1)}
    return CumulantTable(degree, R, entries)


def test_validate_gaussian_data():
    assert validate_lh(gaussian_lh(Fraction(1), Fraction(1), Fraction(1, 2))).ok


def test_validate_poisson_data():
    report = validate_lh(poisson_lh(Fraction(2), Fraction(1), Fraction(3)))
    assert report.ok and report.max_relation_residual == 0


def test_validate_atom_inequality_failure():
    report = validate_lh(gaussian_lh(Fraction(1), Fraction(1), Fraction(2)))
    assert not report.atom_inequality_ok
    assert report.relation_rho1_ok and report.relation_rho2_ok


def test_validate_relation_failure():
    broken = LevyHincinData(Fraction(0), Fraction(0),
                            DiscretePlanarMeasure.from_atoms([(1, 1, 1)]),
                            DiscretePlanarMeasure.from_atoms([(1, 1, 1)]),
                            DiscretePlanarMeasure.from_atoms([(1, 1, 2)], signed=True))
    report = validate_lh(broken)
    assert not report.ok and report.max_relation_residual == 1.0


def test_lh_to_cumulants_gaussian():
    cum = lh_to_cumulants(gaussian_lh(Fraction(2), Fraction(3), Fraction(1)), 6)
    assert cum.get(2, 0) == 2 and cum.get(0, 2) == 3 and cum.get(1, 1) == 1
    assert all(v == 0 for (m, n), v in cum.entries.items() if m + n >= 3)


def test_lh_to_cumulants_poisson():
    lam, a, b = Fraction(3), Fraction(1, 2), Fraction(-2)
    cum = lh_to_cumulants(poisson_lh(lam, a, b), 8)
    for (m, n), value in cum.entries.items():
        assert value == lam * a**m * b**n


def test_lh_to_cumulants_point_distribution():
    empty = DiscretePlanarMeasure.from_atoms([])
    empty_signed = DiscretePlanarMeasure.from_atoms([], signed=True)
    data = LevyHincinData(Fraction(3), Fraction(-1), empty, empty, empty_signed)
    cum = lh_to_cumulants(data, 5)
    assert cum.get(1, 0) == 3 and cum.get(0, 1) == -1
    assert all(v == 0 for (m, n), v in cum.entries.items() if m + n >= 2)


def test_lh_to_cumulants_overlap_disagreement_names_index():
    bad = LevyHincinData(Fraction(0), Fraction(0),
                         DiscretePlanarMeasure.from_atoms([(1, 1, 2)]),
                         DiscretePlanarMeasure.from_atoms([(1, 1, 2)]),
                         DiscretePlanarMeasure.from_atoms([(1, 1, 1)], signed=True))
    with pytest.raises(InconsistentDataError, match=r"\(1, 2\)"):
        lh_to_cumulants(bad, 4)


def test_cpsd_gaussian_verdicts():
    good = bifree_gaussian(1, 1, Fraction(1, 2), 8)
    report = check_cpsd(good, 3)
    assert report.ok and report.min_eigenvalue >= -1e-12

    bad_entries = dict(bifree_gaussian(1, 1, 0, 8).entries)
    bad_entries[(1, 1)] = Fraction(2)
    bad = CumulantTable(8, R, bad_entries)
    assert not check_cpsd(bad, 3).ok
    # eigenvalue of [[1, 2], [2, 1]] is -1 on the difference direction
    assert check_cpsd(bad, 1).min_eigenvalue == pytest.approx(-1.0)


def test_cpsd_zero_table():
    zero = CumulantTable(8, R, {(m, t - m): 0 for t in range(1, 9) for m in range(t + 1)})
    assert check_cpsd(zero, 3).ok


def test_cpsd_degenerate_face_guard():
    # vanishing (2,0) with a surviving left entry beyond the window
    entries = {(m, t - m): Fraction(0) for t in range(1, 9) for m in range(t + 1)}
    entries[(0, 2)] = Fraction(1)
    entries[(4, 4)] = Fraction(1)
    table = CumulantTable(8, R, entries)
    assert not check_cpsd(table, 1).ok


def test_cpsd_needs_degree():
    with pytest.raises(DegreeError):
        check_cpsd(bifree_gaussian(1, 1, 0, 4), 3)


def test_bounded_poisson_unit_witness():
    report = check_cond_bounded(bifree_poisson(1, 1, 1, 8), 3)
    assert report.ok
    assert report.witness == pytest.approx(1.0)


def test_bounded_gaussian_nilpotent_shifts():
    report = check_cond_bounded(bifree_gaussian(2, 1, Fraction(1, 2), 8), 3)
    assert report.ok
    assert report.witness == 1.0  # clamped; the shifts vanish on the quotient


def test_bounded_factorial_growth_fails():
    report = check_cond_bounded(factorial_table(), 3)
    assert not report.ok
    assert report.invariance_residual > 1.0


def test_bounded_witness_dominates_support():
    for lam, a, b in [(Fraction(1), Fraction(2), Fraction(1)),
                      (Fraction(1, 2), Fraction(-3), Fraction(1, 2))]:
        cum = lh_to_cumulants(poisson_lh(lam, a, b), 8)
        report = check_cond_bounded(cum, 3)
        assert report.ok
        assert report.witness >= max(abs(a), abs(b)) - 1e-9


def test_bounded_witness_dominates_support_multi_atom(rng):
    for _ in range(4):
        data = random_validated_lh(rng, rng.randint(2, 4))
        report = check_cond_bounded(lh_to_cumulants(data, 8), 3)
        assert report.ok
        coords = [abs(float(x)) for s, t, _ in data.rho1.atoms for x in (s, t)]
        coords += [abs(float(x)) for s, t, _ in data.rho2.atoms for x in (s, t)]
        assert report.witness >= max(coords) - 1e-8


def test_bounded_needs_degree():
    with pytest.raises(DegreeError):
        check_cond_bounded(bifree_poisson(1, 1, 1, 6), 3)


def test_constructor_tables_pass_gates():
    jump = DiscretePlanarMeasure.from_atoms(
        [(1, 1, Fraction(1, 2)), (-1, 2, Fraction(1, 2))])
    tables = [bifree_gaussian(1, 2, 1, 8),
              bifree_poisson(Fraction(3, 2), 1, -1, 8),
              compound_bifree_poisson(2, jump, 8)]
    for table in tables:
        assert check_cpsd(table, 3).ok
        assert check_cond_bounded(table, 3).ok


def test_model_tables_pass_gates(rng):
    # infinitely divisible realizations satisfy both gates
    for _ in range(5):
        model = random_commuting_model(rng, rng.randint(1, 4))
        cum = model_cumulants(model, 8)
        assert check_cpsd(cum, 3).ok
        assert check_cond_bounded(cum, 3).ok


def test_validated_triples_pass_cpsd(rng):
    for _ in range(5):
        data = random_validated_lh(rng, 3)
        assert validate_lh(data).ok
        cum = lh_to_cumulants(data, 8)
        assert check_cpsd(cum, 3).ok


def test_gns_gaussian_models():
    model = gns_reconstruct(bifree_gaussian(1, 1, Fraction(1, 2), 8), 3)
    assert model.dim == 2
    assert max(abs(x) for row in model.t1 for x in row) < 1e-9
    assert max(abs(x) for row in model.t2 for x in row) < 1e-9
    assert sum(x * x for x in model.f) == pytest.approx(1.0)
    assert sum(a * b for a, b in zip(model.f, model.g)) == pytest.approx(0.5)

    boundary = gns_reconstruct(bifree_gaussian(1, 4, 2, 8), 3)
    assert boundary.dim == 1


def test_gns_poisson_rank_one():
    lam, a, b = Fraction(2), Fraction(1, 2), Fraction(-1)
    table = lh_to_cumulants(poisson_lh(lam, a, b), 8)
    model = gns_reconstruct(table, 3)
    assert model.dim == 1
    assert model.t1[0][0] == pytest.approx(float(a))
    assert model.t2[0][0] == pytest.approx(float(b))
    rebuilt = model_cumulants(model, 8)
    for key, value in table.entries.items():
        assert rebuilt.entries[key] == pytest.approx(float(value), abs=1e-10)


def test_gns_point_mass_is_scalar_pair():
    empty = DiscretePlanarMeasure.from_atoms([])
    data = LevyHincinData(Fraction(2), Fraction(-1), empty, empty,
                          DiscretePlanarMeasure.from_atoms([], signed=True))
    model = gns_reconstruct(lh_to_cumulants(data, 8), 3)
    assert model.dim == 0
    assert model.lambda1 == 2.0 and model.lambda2 == -1.0
    assert all(v == 0 for v in model_cumulants(model, 4).entries.values()
               if v not in (2.0, -1.0))


def test_gns_rejects_bad_tables():
    bad_entries = dict(bifree_gaussian(1, 1, 0, 8).entries)
    bad_entries[(1, 1)] = Fraction(2)
    with pytest.raises(RealizabilityError):
        gns_reconstruct(CumulantTable(8, R, bad_entries), 3)
    with pytest.raises(RealizabilityError):
        gns_reconstruct(factorial_table(), 3)


def test_extract_gaussian_concentrates_at_origin():
    model = FockModel.from_arrays([1, 0], [Fraction(1, 2), Fraction(1, 4)],
                                  [[0, 0], [0, 0]], [[0, 0], [0, 0]])
    data = extract_levy_measures(model)
    assert [(s, t) for s, t, _ in data.rho1.atoms] == [(0.0, 0.0)]
    assert data.rho1.weight_at(0.0, 0.0) == pytest.approx(1.0)
    assert data.rho.weight_at(0.0, 0.0) == pytest.approx(0.5)


def test_extract_poisson_atoms():
    lam, a, b = 4.0, 0.5, 1.5
    root = math.sqrt(lam)
    model = FockModel.from_arrays([root * a], [root * b], [[a]], [[b]],
                                  lam * a, lam * b, kind=scalars.FLOAT)
    data = extract_levy_measures(model)
    assert data.rho1.weight_at(a, b) == pytest.approx(lam * a * a)
    assert data.rho2.weight_at(a, b) == pytest.approx(lam * b * b)
    assert data.rho.weight_at(a, b) == pytest.approx(lam * a * b)
    assert validate_lh(data, 1e-8).ok


def test_extract_zero_vectors_empty_measures():
    model = FockModel.from_arrays([0, 0], [0, 0], [[1, 0], [0, 2]], [[1, 0], [0, 2]],
                                  Fraction(5), Fraction(1))
    data = extract_levy_measures(model)
    assert data.rho1.atoms == () and data.rho2.atoms == () and data.rho.atoms == ()
    assert data.kappa10 == 5.0 and data.kappa01 == 1.0


def test_extract_requires_commutation():
    bad = FockModel.from_arrays([1, 0], [1, 0], [[1, 0], [0, 0]], [[0, 0], [0, 0]])
    from bifree.errors import CommutationError
    with pytest.raises(CommutationError):
        extract_levy_measures(bad)


def test_round_trip_cumulants(rng):
    for _ in range(6):
        data = random_validated_lh(rng, rng.randint(1, 4))
        cum = lh_to_cumulants(data, 8)
        model = gns_reconstruct(cum, 3)
        rebuilt = lh_to_cumulants(extract_levy_measures(model), 8)
        for total in range(1, 7):
            for m in range(total + 1):
                assert rebuilt.get(m, total - m) == pytest.approx(
                    float(cum.get(m, total - m)), abs=1e-8)


def assert_same_atoms(source, found, tol=1e-8):
    assert len(source.atoms) == len(found.atoms)
    for s, t, w in source.atoms:
        s, t, w = float(s), float(t), float(w)
        nearest = min(found.atoms, key=lambda a: abs(a[0] - s) + abs(a[1] - t))
        assert nearest[0] == pytest.approx(s, abs=tol)
        assert nearest[1] == pytest.approx(t, abs=tol)
        assert nearest[2] == pytest.approx(w, abs=tol)


def test_round_trip_measures_atom_by_atom(rng):
    for _ in range(6):
        data = random_validated_lh(rng, rng.randint(2, 4))
        model = gns_reconstruct(lh_to_cumulants(data, 8), 3)
        out = extract_levy_measures(model)
        for source, found in ((data.rho1, out.rho1), (data.rho2, out.rho2),
                              (data.rho, out.rho)):
            assert_same_atoms(source, found)


def test_r_transform_from_lh_gaussian():
    series = r_transform_from_lh(gaussian_lh(Fraction(1), Fraction(2), Fraction(1)), 5)
    assert series.get(2, 0) == 1 and series.get(0, 2) == 2 and series.get(1, 1) == 1
    assert all(series.get(m, t - m) == 0 for t in range(3, 6) for m in range(t + 1))


def test_r_transform_from_lh_poisson():
    lam, a, b = Fraction(2), Fraction(1, 2), Fraction(3)
    series = r_transform_from_lh(poisson_lh(lam, a, b), 6)
    for total in range(1, 7):
        for m in range(total + 1):
            assert series.get(m, total - m) == lam * a**m * b**(total - m)


def test_r_transform_from_lh_compound(rng):
    # compound data: rho = lam * s * t * nu and friends; coefficients are
    # lam times the jump moments
    lam = Fraction(3, 2)
    nu = product_measure(random_measure_1d(rng, 2), random_measure_1d(rng, 2))
    while any(s == 0 or t == 0 for s, t, _ in nu.atoms):
        nu = product_measure(random_measure_1d(rng, 2), random_measure_1d(rng, 2))
    rho1 = DiscretePlanarMeasure.from_atoms([(s, t, lam * s * s * w) for s, t, w in nu.atoms])
    rho2 = DiscretePlanarMeasure.from_atoms([(s, t, lam * t * t * w) for s, t, w in nu.atoms])
    rho = DiscretePlanarMeasure.from_atoms([(s, t, lam * s * t * w) for s, t, w in nu.atoms],
                                           signed=True)
    data = LevyHincinData(lam * nu.moment(1, 0), lam * nu.moment(0, 1), rho1, rho2, rho)
    assert validate_lh(data).ok
    series = r_transform_from_lh(data, 6)
    for total in range(1, 7):
        for m in range(total + 1):
            assert series.get(m, total - m) == lam * nu.moment(m, total - m)
    # agrees with the cumulant-side series
    direct = r_transform_series(lh_to_cumulants(data, 6))
    assert all(series.get(*k) == direct.get(*k) for k in series.coeffs)


def test_r_transform_from_lh_rejects_invalid():
    with pytest.raises(RealizabilityError):
        r_transform_from_lh(gaussian_lh(Fraction(1), Fraction(1), Fraction(2)), 4)


def test_moment_2sequence_point_mass():
    report = check_moment_2sequence(moment_table(point_mass(1, 2), 8), 2)
    assert report.ok
    assert report.witness == pytest.approx(2.0)


def test_moment_2sequence_psd_violation():
    entries = {(m, t - m): Fraction(0) for t in range(0, 9) for m in range(t + 1)}
    entries[(0, 0)] = Fraction(1)
    entries[(1, 1)] = Fraction(5)
    entries[(2, 0)] = Fraction(1)
    entries[(0, 2)] = Fraction(1)
    entries[(2, 2)] = Fraction(1)
    table = MomentTable(8, R, entries)
    assert not check_moment_2sequence(table, 2).ok


def test_moment_2sequence_origin_point():
    report = check_moment_2sequence(moment_table(point_mass(0, 0), 8), 2)
    assert report.ok
    assert report.witness == 1.0  # clamped at one


def test_gates_report_window():
    cum = bifree_poisson(1, 1, 1, 8)
    assert check_cpsd(cum, 2).degree_window == 2
    assert check_cond_bounded(cum, 3).degree_window == 3
