"""Shared random generators for the test suite.

Everything is seeded; rational generators keep all downstream arithmetic
exact so equality assertions can be strict.
"""

import random
from fractions import Fraction

import pytest

from bifree import scalars
from bifree.fock import FockModel
from bifree.levy_hincin import LevyHincinData
from bifree.measures import DiscreteMeasure1D, DiscretePlanarMeasure

# rational rotation pairs (cos, sin) from Pythagorean triples
ROTATIONS = [
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(12, 13)),
    (Fraction(8, 17), Fraction(15, 17)),
    (Fraction(7, 25), Fraction(24, 25)),
]


def rational(rng, lo=-3, hi=3, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def nonzero_rational(rng, lo=-3, hi=3, max_den=4) -> Fraction:
    while True:
        value = rational(rng, lo, hi, max_den)
        if value != 0:
            return value


def random_moment_table(rng, degree):
    from bifree.cumulants import MomentTable
    entries = {(0, 0): Fraction(1)}
    for total in range(1, degree + 1):
        for m in range(total + 1):
            entries[(m, total - m)] = rational(rng)
    return MomentTable(degree, scalars.RATIONAL, entries)


def random_cumulant_table(rng, degree):
    from bifree.cumulants import CumulantTable
    entries = {(m, total - m): rational(rng)
               for total in range(1, degree + 1) for m in range(total + 1)}
    return CumulantTable(degree, scalars.RATIONAL, entries)


def random_planar_measure(rng, natoms=3) -> DiscretePlanarMeasure:
    """Random rational probability measure with distinct atoms."""
    coords = set()
    while len(coords) < natoms:
        coords.add((rational(rng, -2, 2, 3), rational(rng, -2, 2, 3)))
    weights = [Fraction(rng.randint(1, 5)) for _ in range(natoms)]
    total = sum(weights)
    atoms = [(s, t, w / total) for (s, t), w in zip(sorted(coords), weights)]
    return DiscretePlanarMeasure.from_atoms(atoms)


def random_measure_1d(rng, natoms=2) -> DiscreteMeasure1D:
    coords = set()
    while len(coords) < natoms:
        coords.add(rational(rng, -2, 2, 3))
    weights = [Fraction(rng.randint(1, 5)) for _ in range(natoms)]
    total = sum(weights)
    return DiscreteMeasure1D.from_atoms(
        [(x, w / total) for x, w in zip(sorted(coords), weights)])


def rational_orthogonal(rng, dim):
    """Product of rational Givens rotations; exactly orthogonal."""
    mat = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for _ in range(2 * dim):
        if dim < 2:
            break
        i, j = rng.sample(range(dim), 2)
        c, s = rng.choice(ROTATIONS)
        if rng.random() < 0.5:
            s = -s
        for row in mat:
            row[i], row[j] = c * row[i] - s * row[j], s * row[i] + c * row[j]
    return mat


def random_commuting_model(rng, dim, with_scalars=True) -> FockModel:
    """Commuting rational model: joint diagonal gauges conjugated by Q.

    In the eigenbasis T1 = diag(s), T2 = diag(t), and g is chosen with
    s_k g_k = t_k f_k; conjugation by a rational orthogonal Q preserves
    everything exactly.
    """
    svals = [nonzero_rational(rng, -2, 2, 2) for _ in range(dim)]
    tvals = [rational(rng, -2, 2, 2) for _ in range(dim)]
    fhat = [rational(rng, -2, 2, 2) for _ in range(dim)]
    ghat = [tvals[k] * fhat[k] / svals[k] for k in range(dim)]
    q = rational_orthogonal(rng, dim)

    def conj_diag(diag):
        return [[sum(q[i][k] * diag[k] * q[j][k] for k in range(dim))
                 for j in range(dim)] for i in range(dim)]

    f = [sum(q[i][k] * fhat[k] for k in range(dim)) for i in range(dim)]
    g = [sum(q[i][k] * ghat[k] for k in range(dim)) for i in range(dim)]
    lam1 = rational(rng) if with_scalars else 0
    lam2 = rational(rng) if with_scalars else 0
    return FockModel.from_arrays(f, g, conj_diag(svals), conj_diag(tvals), lam1, lam2)


def random_validated_lh(rng, natoms=3) -> LevyHincinData:
    """Random atomic triple satisfying the measure relations exactly.

    Atoms sit in general position (nonzero coordinates, distinct pairs);
    weights are tied together by c = t a / s and b = t c / s, which makes
    rho2 positive automatically.
    """
    coords = set()
    while len(coords) < natoms:
        coords.add((nonzero_rational(rng, -2, 2, 2), nonzero_rational(rng, -2, 2, 2)))
    coords = sorted(coords)
    a_weights = [Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in coords]
    atoms1, atoms2, atoms = [], [], []
    for (s, t), a in zip(coords, a_weights):
        c = t * a / s
        b = t * c / s
        atoms1.append((s, t, a))
        atoms2.append((s, t, b))
        atoms.append((s, t, c))
    return LevyHincinData(
        rational(rng), rational(rng),
        DiscretePlanarMeasure.from_atoms(atoms1),
        DiscretePlanarMeasure.from_atoms(atoms2),
        DiscretePlanarMeasure.from_atoms(atoms, signed=True))


@pytest.fixture
def rng():
    return random.Random(20240817)
