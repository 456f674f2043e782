"""Truncated formal power series and the two-variable transform identity.

Everything here is coefficient-level: series are truncated by total degree
and no analytic questions are asked. The reciprocal-of-the-Green-function
identity is rearranged into pole-free form before evaluation, so Laurent
terms never need to be represented: with u(z) = z / (1 + z R_a(z)) the
term zw / G(K_a(z), K_b(w)) equals
(1 + z R_a(z)) (1 + w R_b(w)) / M(u(z), v(w)), and every factor is an
honest truncated power series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import scalars
from .cumulants import CumulantTable, MomentTable, moments_to_cumulants
from .errors import DegreeError, SingularSeriesError


@dataclass
class UnivariateSeries:
    """Coefficients c_0..c_degree of a one-variable truncated series."""

    degree: int
    kind: str
    coeffs: tuple = field(repr=False)

    def __post_init__(self):
        scalars.check_kind(self.kind)
        self.coeffs = tuple(scalars.coerce(c, self.kind) for c in self.coeffs)
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")

    def get(self, k: int):
        return self.coeffs[k]

    @classmethod
    def zeros(cls, degree, kind):
        return cls(degree, kind, (scalars.zero(kind),) * (degree + 1))


def uni_multiply(f: UnivariateSeries, g: UnivariateSeries) -> UnivariateSeries:
    if f.degree != g.degree or f.kind != g.kind:
        raise DegreeError("series degree or kind mismatch")
    out = [scalars.zero(f.kind)] * (f.degree + 1)
    for i, a in enumerate(f.coeffs):
        for j in range(f.degree + 1 - i):
            out[i + j] = out[i + j] + a * g.coeffs[j]
    return UnivariateSeries(f.degree, f.kind, tuple(out))


def uni_reciprocal(f: UnivariateSeries) -> UnivariateSeries:
    if f.coeffs[0] == scalars.zero(f.kind):
        raise SingularSeriesError("reciprocal of a series with zero constant term")
    inv0 = scalars.one(f.kind) / f.coeffs[0]
    out = [inv0] + [scalars.zero(f.kind)] * f.degree
    for k in range(1, f.degree + 1):
        acc = scalars.zero(f.kind)
        for i in range(1, k + 1):
            acc = acc + f.coeffs[i] * out[k - i]
        out[k] = -inv0 * acc
    return UnivariateSeries(f.degree, f.kind, tuple(out))


def uni_shift(f: UnivariateSeries) -> UnivariateSeries:
    """Multiply by the variable, truncating the top coefficient."""
    return UnivariateSeries(f.degree, f.kind, (scalars.zero(f.kind),) + f.coeffs[:-1])


@dataclass
class BivariateSeries:
    """Coefficients on (m, n) with m + n <= degree."""

    degree: int
    kind: str
    coeffs: dict = field(repr=False)

    def __post_init__(self):
        scalars.check_kind(self.kind)
        self.coeffs = {k: scalars.coerce(v, self.kind) for k, v in self.coeffs.items()}
        for (m, n) in self.coeffs:
            if m < 0 or n < 0 or m + n > self.degree:
                raise ValueError(f"index ({m}, {n}) outside degree bound {self.degree}")

    def get(self, m: int, n: int):
        return self.coeffs.get((m, n), scalars.zero(self.kind))

    @classmethod
    def zeros(cls, degree, kind):
        return cls(degree, kind, {})

    def to_jsonable(self) -> dict:
        items = sorted((k, v) for k, v in self.coeffs.items() if k != (0, 0))
        return {
            "degree": self.degree,
            "kind": self.kind,
            "constant": scalars.to_jsonable(self.get(0, 0), self.kind),
            "entries": [[m, n, scalars.to_jsonable(v, self.kind)] for (m, n), v in items],
        }

    @classmethod
    def from_jsonable(cls, data) -> "BivariateSeries":
        kind = scalars.check_kind(data["kind"])
        coeffs = {(m, n): scalars.from_jsonable(v, kind) for m, n, v in data["entries"]}
        coeffs[(0, 0)] = scalars.from_jsonable(data.get("constant", 0), kind)
        return cls(int(data["degree"]), kind, coeffs)


def series_add(f: BivariateSeries, g: BivariateSeries) -> BivariateSeries:
    if f.degree != g.degree or f.kind != g.kind:
        raise DegreeError("series degree or kind mismatch")
    keys = set(f.coeffs) | set(g.coeffs)
    return BivariateSeries(f.degree, f.kind, {k: f.get(*k) + g.get(*k) for k in keys})


def series_subtract(f: BivariateSeries, g: BivariateSeries) -> BivariateSeries:
    if f.degree != g.degree or f.kind != g.kind:
        raise DegreeError("series degree or kind mismatch")
    keys = set(f.coeffs) | set(g.coeffs)
    return BivariateSeries(f.degree, f.kind, {k: f.get(*k) - g.get(*k) for k in keys})


def series_multiply(f: BivariateSeries, g: BivariateSeries) -> BivariateSeries:
    """Cauchy product truncated to the common total degree."""
    if f.degree != g.degree or f.kind != g.kind:
        raise DegreeError("series degree or kind mismatch")
    out: dict = {}
    zero = scalars.zero(f.kind)
    for (m1, n1), a in f.coeffs.items():
        if a == zero:
            continue
        for (m2, n2), b in g.coeffs.items():
            if m1 + m2 + n1 + n2 > f.degree:
                continue
            key = (m1 + m2, n1 + n2)
            out[key] = out.get(key, zero) + a * b
    return BivariateSeries(f.degree, f.kind, out)


def series_reciprocal(f: BivariateSeries) -> BivariateSeries:
    """Multiplicative inverse up to the truncation degree; needs f(0,0) != 0."""
    zero = scalars.zero(f.kind)
    if f.get(0, 0) == zero:
        raise SingularSeriesError("reciprocal of a series with zero constant term")
    inv0 = scalars.one(f.kind) / f.get(0, 0)
    out = {(0, 0): inv0}
    for total in range(1, f.degree + 1):
        for m in range(total + 1):
            n = total - m
            acc = zero
            for i in range(m + 1):
                for j in range(n + 1):
                    if (i, j) == (0, 0):
                        continue
                    c = f.get(i, j)
                    if c != zero:
                        acc = acc + c * out.get((m - i, n - j), zero)
            out[(m, n)] = -inv0 * acc
    return BivariateSeries(f.degree, f.kind, out)


def series_compose_bi(M: BivariateSeries, u: UnivariateSeries,
                      v: UnivariateSeries) -> BivariateSeries:
    """Substitute u(z) for the first variable and v(w) for the second.

    Both substituted series must vanish at 0 so the composition is
    well-defined on truncations.
    """
    zero = scalars.zero(M.kind)
    if u.coeffs[0] != zero or v.coeffs[0] != zero:
        raise SingularSeriesError("substituted series must have zero constant term")
    degree = M.degree
    # powers of u contribute only from z-degree >= power, so degree many suffice
    one_u = UnivariateSeries(degree, M.kind, (scalars.one(M.kind),) + (zero,) * degree)
    u_pows = [one_u]
    v_pows = [one_u]
    for _ in range(degree):
        u_pows.append(uni_multiply(u_pows[-1], u))
        v_pows.append(uni_multiply(v_pows[-1], v))
    out: dict = {}
    for (m, n), c in M.coeffs.items():
        if c == zero:
            continue
        up, vp = u_pows[m], v_pows[n]
        for i in range(m, degree + 1):
            a = up.coeffs[i]
            if a == zero:
                continue
            for j in range(n, degree + 1 - i):
                b = vp.coeffs[j]
                if b == zero:
                    continue
                key = (i, j)
                out[key] = out.get(key, zero) + c * a * b
    return BivariateSeries(degree, M.kind, out)


def r_transform_series(table: CumulantTable, degree: int | None = None) -> BivariateSeries:
    """The two-variable cumulant generating series, zero constant term."""
    degree = table.degree if degree is None else degree
    if degree > table.degree:
        raise DegreeError("requested degree exceeds table degree")
    coeffs = {(m, n): v for (m, n), v in table.entries.items() if m + n <= degree}
    return BivariateSeries(degree, table.kind, coeffs)


def moment_series(table: MomentTable) -> BivariateSeries:
    """Moment generating series including the constant 1."""
    return BivariateSeries(table.degree, table.kind, dict(table.entries))


def _embed_z(f: UnivariateSeries, degree: int) -> BivariateSeries:
    return BivariateSeries(degree, f.kind, {(k, 0): c for k, c in enumerate(f.coeffs)})


def _outer_product(f: UnivariateSeries, g: UnivariateSeries, degree: int) -> BivariateSeries:
    out = {}
    zero = scalars.zero(f.kind)
    for i, a in enumerate(f.coeffs):
        if a == zero:
            continue
        for j, b in enumerate(g.coeffs):
            if i + j > degree:
                break
            if b != zero:
                out[(i, j)] = a * b
    return BivariateSeries(degree, f.kind, out)


def verify_voiculescu_identity(table: MomentTable):
    """Coefficient-level residual of the two-variable transform identity.

    Checks R(z, w) = 1 + z R_a(z) + w R_b(w) - zw / G(K_a(z), K_b(w)) on
    truncations, with the last term evaluated in pole-free form. Returns the
    maximum absolute coefficient discrepancy over total degree <= D - 1; the
    final degree is not certified because the reciprocal loses one degree of
    trustworthy information.
    """
    degree = table.degree
    if degree < 2:
        raise DegreeError("need degree >= 2")
    kind = table.kind
    if not scalars.close(table.get(0, 0), scalars.one(kind), kind, 1e-12):
        raise ValueError("moment table must have (0, 0) entry 1")
    cum = moments_to_cumulants(table)

    left = r_transform_series(cum)

    zero = scalars.zero(kind)
    # z R_a(z): coefficient m holds kappa_{m,0}
    z_ra = UnivariateSeries(degree, kind,
                            (zero,) + tuple(cum.get(m, 0) for m in range(1, degree + 1)))
    w_rb = UnivariateSeries(degree, kind,
                            (zero,) + tuple(cum.get(0, n) for n in range(1, degree + 1)))
    one = scalars.one(kind)
    one_plus_zra = UnivariateSeries(degree, kind, (one,) + z_ra.coeffs[1:])
    one_plus_wrb = UnivariateSeries(degree, kind, (one,) + w_rb.coeffs[1:])

    u = uni_shift(uni_reciprocal(one_plus_zra))  # 1 / K_a(z), vanishes at 0
    v = uni_shift(uni_reciprocal(one_plus_wrb))

    composed = series_compose_bi(moment_series(table), u, v)
    green_term = series_multiply(_outer_product(one_plus_zra, one_plus_wrb, degree),
                                 series_reciprocal(composed))

    right = series_subtract(
        series_add(BivariateSeries(degree, kind, {(0, 0): one}),
                   series_add(_embed_z(z_ra, degree),
                              BivariateSeries(degree, kind,
                                              {(0, k): c for k, c in enumerate(w_rb.coeffs)}))),
        green_term)

    worst = zero
    for total in range(degree):
        for m in range(total + 1):
            diff = abs(left.get(m, total - m) - right.get(m, total - m))
            if diff > worst:
                worst = diff
    return worst
