"""The bi-free Levy-Hincin correspondence on atomic data.

Forward direction: a triple (rho1, rho2, rho) of atomic planar measures
with t d(rho1) = s d(rho) and s d(rho2) = t d(rho) determines every
cumulant of order >= 2 by integration; first-order cumulants ride along
separately. Validation, the conditional positivity and boundedness gates,
and the transform series are all evaluated atom by atom.

Inverse direction: a GNS quotient built from the cumulant Gram form gives
a finite-dimensional operator model, and simultaneous diagonalization of
its two gauge matrices recovers the measures.

Certification is windowed: positivity and boundedness are checked on the
monomials of total degree <= d, which needs table entries up to degree
2d + 2. A table can pass at one window and fail at a larger one; reports
state the window used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import scalars
from .cumulants import CumulantTable, MomentTable
from .errors import (CommutationError, DegreeError, InconsistentDataError,
                     RealizabilityError)
from .fock import FockModel, check_commutation, model_cumulants
from .measures import DiscretePlanarMeasure
from .series import BivariateSeries

PSD_TOL = -1e-9
NULL_SPACE_TOL = 1e-10
NULL_SHIFT_TOL = 1e-8
LEAK_TOL = 1e-8
DIAG_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class LevyHincinData:
    """First-order cumulants plus the measure triple (rho1, rho2, rho)."""

    kappa10: object
    kappa01: object
    rho1: DiscretePlanarMeasure
    rho2: DiscretePlanarMeasure
    rho: DiscretePlanarMeasure
    kind: str = scalars.RATIONAL

    def to_jsonable(self) -> dict:
        return {
            "kappa10": scalars.to_jsonable(self.kappa10, self.kind),
            "kappa01": scalars.to_jsonable(self.kappa01, self.kind),
            "rho1": self.rho1.to_jsonable(),
            "rho2": self.rho2.to_jsonable(),
            "rho": self.rho.to_jsonable(),
        }

    @classmethod
    def from_jsonable(cls, data, kind=None) -> "LevyHincinData":
        if kind is None:
            kind = scalars.RATIONAL if isinstance(data["kappa10"], str) else scalars.FLOAT
        return cls(
            scalars.from_jsonable(data["kappa10"], kind),
            scalars.from_jsonable(data["kappa01"], kind),
            DiscretePlanarMeasure.from_jsonable(data["rho1"], kind),
            DiscretePlanarMeasure.from_jsonable(data["rho2"], kind),
            DiscretePlanarMeasure.from_jsonable({**data["rho"], "signed": True}, kind),
            kind)


@dataclass(frozen=True)
class LhValidation:
    relation_rho1_ok: bool
    relation_rho2_ok: bool
    atom_inequality_ok: bool
    positivity_ok: bool
    max_relation_residual: float

    @property
    def ok(self) -> bool:
        return (self.relation_rho1_ok and self.relation_rho2_ok
                and self.atom_inequality_ok and self.positivity_ok)

    def to_jsonable(self) -> dict:
        return {
            "relation_rho1_ok": self.relation_rho1_ok,
            "relation_rho2_ok": self.relation_rho2_ok,
            "atom_inequality_ok": self.atom_inequality_ok,
            "positivity_ok": self.positivity_ok,
            "max_relation_residual": self.max_relation_residual,
            "ok": self.ok,
        }


def validate_lh(data: LevyHincinData, tol: float = 1e-10) -> LhValidation:
    """Check the measure relations atom by atom; reports, never throws.

    Over the union of supports: t * rho1{(s,t)} = s * rho{(s,t)} and
    s * rho2{(s,t)} = t * rho{(s,t)}; at the origin
    rho{(0,0)}^2 <= rho1{(0,0)} * rho2{(0,0)}; rho1, rho2 must be positive.
    """
    kind = data.kind
    zero = scalars.zero(kind)
    support = {(s, t) for s, t, _ in data.rho1.atoms}
    support |= {(s, t) for s, t, _ in data.rho2.atoms}
    support |= {(s, t) for s, t, _ in data.rho.atoms}
    rel1_ok = rel2_ok = True
    worst = 0.0
    for s, t in sorted(support):
        w1 = data.rho1.weight_at(s, t)
        w2 = data.rho2.weight_at(s, t)
        w = data.rho.weight_at(s, t)
        r1 = t * w1 - s * w
        r2 = s * w2 - t * w
        if not scalars.close(r1, zero, kind, tol):
            rel1_ok = False
        if not scalars.close(r2, zero, kind, tol):
            rel2_ok = False
        worst = max(worst, abs(scalars.as_float(r1)), abs(scalars.as_float(r2)))
    origin = (zero, zero)
    w0 = data.rho.weight_at(*origin)
    atom_ok = w0 * w0 <= data.rho1.weight_at(*origin) * data.rho2.weight_at(*origin) \
        or scalars.close(w0 * w0,
                         data.rho1.weight_at(*origin) * data.rho2.weight_at(*origin),
                         kind, tol)
    positive = all(w > 0 for _, _, w in data.rho1.atoms) \
        and all(w > 0 for _, _, w in data.rho2.atoms)
    return LhValidation(rel1_ok, rel2_ok, atom_ok, positive, worst)


def lh_to_cumulants(data: LevyHincinData, degree: int,
                    tol: float = 1e-10) -> CumulantTable:
    """Cumulants from the Levy-Hincin triple.

    kappa_{m,n} integrates s^(m-2) t^n against rho1 when m >= 2,
    s^m t^(n-2) against rho2 when n >= 2, and s^(m-1) t^(n-1) against rho
    when m, n >= 1. Where several formulas apply they must agree; the
    measure relations guarantee it, and a disagreement raises naming the
    index.
    """
    kind = data.kind
    entries: dict = {}
    for total in range(1, degree + 1):
        for m in range(total + 1):
            n = total - m
            candidates = []
            if (m, n) == (1, 0):
                candidates.append(data.kappa10)
            elif (m, n) == (0, 1):
                candidates.append(data.kappa01)
            else:
                if m >= 2:
                    candidates.append(data.rho1.moment(m - 2, n))
                if n >= 2:
                    candidates.append(data.rho2.moment(m, n - 2))
                if m >= 1 and n >= 1:
                    candidates.append(data.rho.moment(m - 1, n - 1))
            first = candidates[0]
            for other in candidates[1:]:
                if not scalars.close(other, first, kind, tol):
                    raise InconsistentDataError(
                        f"measure formulas disagree at index ({m}, {n}): "
                        f"{first} vs {other}")
            entries[(m, n)] = first
    return CumulantTable(degree, kind, entries)


def _monomials(d: int, include_constant: bool) -> list[tuple[int, int]]:
    start = 0 if include_constant else 1
    return [(m, total - m) for total in range(start, d + 1)
            for m in range(total, -1, -1)]


def _gram(get, monomials, shift=(0, 0)) -> np.ndarray:
    size = len(monomials)
    out = np.empty((size, size))
    for i, (m1, n1) in enumerate(monomials):
        for j, (m2, n2) in enumerate(monomials):
            out[i, j] = scalars.as_float(get(m1 + m2 + shift[0], n1 + n2 + shift[1]))
    return (out + out.T) / 2.0


@dataclass(frozen=True)
class CpsdReport:
    ok: bool
    min_eigenvalue: float
    degree_window: int

    def to_jsonable(self):
        return {"ok": self.ok, "min_eigenvalue": self.min_eigenvalue,
                "degree_window": self.degree_window}


def check_cpsd(table: CumulantTable, d: int) -> CpsdReport:
    """Positivity of the cumulant Gram form on monomials of degree 1..d.

    The form pairs s^(m1) t^(n1) with s^(m2) t^(n2) through the entry at
    (m1+m2, n1+n2). Degenerate faces are handled separately: a vanishing
    (2,0) entry forces every entry of order >= 2 touching the left face to
    vanish (Cauchy-Schwarz), and symmetrically for (0,2); the eigenvalue
    window alone could miss violations beyond it.
    """
    if 2 * d > table.degree:
        raise DegreeError(f"need table degree >= {2 * d}, have {table.degree}")
    mono = _monomials(d, include_constant=False)
    gram = _gram(table.get, mono)
    min_eig = float(np.linalg.eigvalsh(gram)[0]) if mono else 0.0
    ok = min_eig >= PSD_TOL
    kind = table.kind
    zero = scalars.zero(kind)
    if ok and scalars.close(table.get(2, 0), zero, kind, 1e-12):
        ok = all(scalars.close(v, zero, kind, 1e-10)
                 for (m, n), v in table.entries.items() if m >= 1 and m + n >= 2)
    if ok and scalars.close(table.get(0, 2), zero, kind, 1e-12):
        ok = all(scalars.close(v, zero, kind, 1e-10)
                 for (m, n), v in table.entries.items() if n >= 1 and m + n >= 2)
    return CpsdReport(ok, min_eig, d)


@dataclass(frozen=True)
class BoundednessReport:
    ok: bool
    witness: float
    null_shift_residual: float
    invariance_residual: float
    degree_window: int

    def to_jsonable(self):
        return {"ok": self.ok, "witness": self.witness,
                "null_shift_residual": self.null_shift_residual,
                "invariance_residual": self.invariance_residual,
                "degree_window": self.degree_window}


def _quotient(gram: np.ndarray):
    # Orthonormal quotient basis (columns) and the null directions.
    if gram.size == 0:
        return np.zeros((0, 0)), np.zeros((0, 0))
    eigvals, eigvecs = np.linalg.eigh(gram)
    keep = eigvals > NULL_SPACE_TOL
    basis = eigvecs[:, keep] / np.sqrt(eigvals[keep])
    null = eigvecs[:, ~keep]
    return basis, null


def _shift_analysis(get, monomials, gram):
    """Quotient basis, compressed shift matrices, and their defects.

    The multiplication-by-s and -by-t maps are operators on the quotient
    only if they send null vectors to null vectors and map the quotient
    span into itself; the second condition is measured by comparing the
    true degree-two Gram against the square of the compressed shift
    (the difference is the squared norm of what escapes the span).
    """
    basis, null = _quotient(gram)
    g10 = _gram(get, monomials, (1, 0))
    g01 = _gram(get, monomials, (0, 1))
    g20 = _gram(get, monomials, (2, 0))
    g02 = _gram(get, monomials, (0, 2))
    g11 = _gram(get, monomials, (1, 1))

    null_res = 0.0
    if null.size:
        null_res = max(float(np.max(np.abs(null.T @ g20 @ null))),
                       float(np.max(np.abs(null.T @ g02 @ null))))

    s1 = basis.T @ g10 @ basis
    s2 = basis.T @ g01 @ basis
    s1 = (s1 + s1.T) / 2.0
    s2 = (s2 + s2.T) / 2.0

    scale = max(1.0, float(np.max(np.abs(g20))) if g20.size else 0.0,
                float(np.max(np.abs(g02))) if g02.size else 0.0)
    leak = 0.0
    if basis.size:
        leak = max(float(np.max(np.abs(basis.T @ g20 @ basis - s1 @ s1))),
                   float(np.max(np.abs(basis.T @ g02 @ basis - s2 @ s2))),
                   float(np.max(np.abs(basis.T @ g11 @ basis - (s1 @ s2 + s2 @ s1) / 2.0))))
    return basis, s1, s2, null_res, leak, scale


def _operator_norm(mat: np.ndarray) -> float:
    if mat.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(mat))))


def check_cond_bounded(table: CumulantTable, d: int) -> BoundednessReport:
    """Whether the shifts act as bounded symmetric operators on the quotient.

    Builds the quotient space of the degree-window Gram form, compresses
    multiplication by s and by t onto it, and accepts iff null vectors stay
    null under the shifts and the shifts genuinely map the quotient into
    itself (no mass escapes the window). The witness is
    max(norm(S1), norm(S2), 1); for data carried by a measure it bounds the
    support coordinates seen by the window.
    """
    if 2 * d + 2 > table.degree:
        raise DegreeError(f"need table degree >= {2 * d + 2}, have {table.degree}")
    mono = _monomials(d, include_constant=False)
    gram = _gram(table.get, mono)
    basis, s1, s2, null_res, leak, scale = _shift_analysis(table.get, mono, gram)
    witness = max(_operator_norm(s1), _operator_norm(s2), 1.0)
    ok = null_res <= NULL_SHIFT_TOL * scale and leak <= LEAK_TOL * scale
    return BoundednessReport(ok, witness, null_res, leak, d)


def check_moment_2sequence(table: MomentTable, d: int) -> BoundednessReport:
    """Whether the table could be the moments of a compactly supported measure.

    Same Gram-and-shift machinery as the cumulant gates but over the
    monomials of degree 0..d including the constant; requires the (0,0)
    entry positive, positivity of the form, and shifts that act on the
    quotient with a finite witness.
    """
    if 2 * d + 2 > table.degree:
        raise DegreeError(f"need table degree >= {2 * d + 2}, have {table.degree}")
    if scalars.as_float(table.get(0, 0)) <= 0:
        raise ValueError("the (0, 0) entry must be positive")
    mono = _monomials(d, include_constant=True)
    gram = _gram(table.get, mono)
    min_eig = float(np.linalg.eigvalsh(gram)[0])
    basis, s1, s2, null_res, leak, scale = _shift_analysis(table.get, mono, gram)
    witness = max(_operator_norm(s1), _operator_norm(s2), 1.0)
    ok = (min_eig >= PSD_TOL * scale and null_res <= NULL_SHIFT_TOL * scale
          and leak <= LEAK_TOL * scale)
    return BoundednessReport(ok, witness, null_res, leak, d)


def gns_reconstruct(table: CumulantTable, d: int) -> FockModel:
    """Finite-dimensional model from the cumulant Gram form.

    Eigen-truncates the Gram matrix of the monomials of degree 1..d to an
    orthonormal model space, compresses the two shifts onto it as T1 and
    T2, and reads f and g off the classes of the two coordinate monomials;
    the scalar parts are the first-order cumulants. The model reproduces
    the table on the window and, when the window saturates the quotient
    (every atomic case here), on all degrees.
    """
    cpsd = check_cpsd(table, d)
    if not cpsd.ok:
        raise RealizabilityError(f"not conditionally positive: {cpsd}")
    bounded = check_cond_bounded(table, d)
    if not bounded.ok:
        raise RealizabilityError(f"not conditionally bounded: {bounded}")
    mono = _monomials(d, include_constant=False)
    gram = _gram(table.get, mono)
    basis, s1, s2, _, _, _ = _shift_analysis(table.get, mono, gram)
    # coordinates of the class of a monomial p: column of basis^T G e_p
    coords = basis.T @ gram
    idx_s = mono.index((1, 0))
    idx_t = mono.index((0, 1))
    f = coords[:, idx_s]
    g = coords[:, idx_t]
    return FockModel.from_arrays(
        f.tolist(), g.tolist(), s1.tolist(), s2.tolist(),
        scalars.as_float(table.get(1, 0)), scalars.as_float(table.get(0, 1)),
        kind=scalars.FLOAT)


def extract_levy_measures(model: FockModel, seed: int = 0) -> LevyHincinData:
    """Levy-Hincin triple of a commuting model by joint diagonalization.

    Diagonalizes T1 + gamma T2 for a seeded random gamma and checks both
    matrices come out diagonal, retrying with a fresh gamma up to five
    times (only finitely many gammas merge distinct eigenvalue pairs). The
    measures put mass <f, u_k>^2, <g, u_k>^2, and <f, u_k><g, u_k> at the
    joint eigenvalue pair of each basis vector u_k.
    """
    report = check_commutation(model)
    if not report.ok:
        raise CommutationError(f"faces do not commute: {report}")
    dim = model.dim
    lam1 = scalars.as_float(model.lambda1)
    lam2 = scalars.as_float(model.lambda2)
    if dim == 0:
        empty = DiscretePlanarMeasure.from_atoms([], kind=scalars.FLOAT)
        empty_signed = DiscretePlanarMeasure.from_atoms([], signed=True, kind=scalars.FLOAT)
        return LevyHincinData(lam1, lam2, empty, empty, empty_signed, scalars.FLOAT)
    t1 = np.array([[scalars.as_float(x) for x in row] for row in model.t1])
    t2 = np.array([[scalars.as_float(x) for x in row] for row in model.t2])
    fvec = np.array([scalars.as_float(x) for x in model.f])
    gvec = np.array([scalars.as_float(x) for x in model.g])
    scale = max(1.0, float(np.max(np.abs(t1))), float(np.max(np.abs(t2))))
    rng = random.Random(seed)
    basis = None
    for _ in range(5):
        gamma = rng.uniform(0.25, 1.75)
        _, vecs = np.linalg.eigh(t1 + gamma * t2)
        d1 = vecs.T @ t1 @ vecs
        d2 = vecs.T @ t2 @ vecs
        off = max(float(np.max(np.abs(d1 - np.diag(np.diag(d1))))),
                  float(np.max(np.abs(d2 - np.diag(np.diag(d2))))))
        if off <= DIAG_RESIDUAL_TOL * scale:
            basis = vecs
            svals, tvals = np.diag(d1), np.diag(d2)
            break
    if basis is None:
        raise CommutationError(
            f"simultaneous diagonalization residual above {DIAG_RESIDUAL_TOL}")
    fh = basis.T @ fvec
    gh = basis.T @ gvec
    atoms1, atoms2, atoms = [], [], []
    for k in range(dim):
        s, t = float(svals[k]), float(tvals[k])
        if abs(fh[k]) > 1e-13:
            atoms1.append((s, t, float(fh[k] ** 2)))
        if abs(gh[k]) > 1e-13:
            atoms2.append((s, t, float(gh[k] ** 2)))
        if abs(fh[k] * gh[k]) > 1e-13:
            atoms.append((s, t, float(fh[k] * gh[k])))
    return LevyHincinData(
        lam1, lam2,
        DiscretePlanarMeasure.from_atoms(atoms1, kind=scalars.FLOAT),
        DiscretePlanarMeasure.from_atoms(atoms2, kind=scalars.FLOAT),
        DiscretePlanarMeasure.from_atoms(atoms, signed=True, kind=scalars.FLOAT),
        scalars.FLOAT)


def r_transform_from_lh(data: LevyHincinData, degree: int) -> BivariateSeries:
    """Transform series of the triple, expanded to total degree `degree`.

    z R_1(z) contributes the pure-z row through rho1 moments, w R_2(w) the
    pure-w column through rho2, and the mixed kernel zw/((1-zs)(1-wt))
    integrated against rho fills the interior; the result coincides with
    the series of lh_to_cumulants.
    """
    check = validate_lh(data)
    if not check.ok:
        raise RealizabilityError(f"triple fails validation: {check}")
    kind = data.kind
    coeffs: dict = {(1, 0): data.kappa10, (0, 1): data.kappa01}
    for m in range(2, degree + 1):
        coeffs[(m, 0)] = data.rho1.moment(m - 2, 0)
        coeffs[(0, m)] = data.rho2.moment(0, m - 2)
    for m in range(1, degree):
        for n in range(1, degree + 1 - m):
            coeffs[(m, n)] = data.rho.moment(m - 1, n - 1)
    return BivariateSeries(degree, kind, coeffs)
