"""Truncated full Fock space over R^d and the two-faced operator model.

The model (f, g, T1, T2, lambda1, lambda2) realizes the pair

    a = l(f) + l(f)* + gauge_l(T1) + lambda1,
    b = r(g) + r(g)* + gauge_r(T2) + lambda2,

on the Fock space over R^d. States are sparse maps from words over the
letters {0..d-1} to amplitudes; the empty word is the vacuum. Creation at
the level cap discards the word (truncation projection), which is harmless
whenever the cap is at least the number of operator applications, since
each operator changes word length by at most one.

Real scalars only: over the reals the mixed-inner-product condition for
commutation is automatic and all cumulants stay real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import scalars
from .cumulants import CumulantTable, MomentTable
from .errors import CommutationError, ShapeError

MAX_MODEL_DIM = 12

CREATE_L = "create_l"
ANNIH_L = "annih_l"
CREATE_R = "create_r"
ANNIH_R = "annih_r"
GAUGE_L = "gauge_l"
GAUGE_R = "gauge_r"
SCALAR = "scalar"

OPERATOR_KINDS = (CREATE_L, ANNIH_L, CREATE_R, ANNIH_R, GAUGE_L, GAUGE_R, SCALAR)


def _dot(x, y):
    return sum((a * b for a, b in zip(x, y)), start=x[0] * 0) if x else 0


def _matvec(mat, x):
    return tuple(_dot(row, x) for row in mat)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


@dataclass(frozen=True)
class FockModel:
    """Data (f, g, T1, T2, lambda1, lambda2) of a two-faced operator pair."""

    dim: int
    f: tuple
    g: tuple
    t1: tuple
    t2: tuple
    lambda1: object
    lambda2: object
    kind: str = scalars.RATIONAL

    @classmethod
    def from_arrays(cls, f, g, t1, t2, lambda1=0, lambda2=0,
                    kind=scalars.RATIONAL) -> "FockModel":
        scalars.check_kind(kind)
        f = tuple(scalars.coerce(x, kind) for x in f)
        g = tuple(scalars.coerce(x, kind) for x in g)
        dim = len(f)
        if dim > MAX_MODEL_DIM:
            raise ValueError(f"model dimension {dim} exceeds cap {MAX_MODEL_DIM}")
        if len(g) != dim:
            raise ShapeError("f and g must have equal length")
        t1 = tuple(tuple(scalars.coerce(x, kind) for x in row) for row in t1)
        t2 = tuple(tuple(scalars.coerce(x, kind) for x in row) for row in t2)
        for name, t in (("T1", t1), ("T2", t2)):
            if len(t) != dim or any(len(row) != dim for row in t):
                raise ShapeError(f"{name} must be {dim}x{dim}")
            tol = 0.0 if kind == scalars.RATIONAL else 1e-12
            for i in range(dim):
                for j in range(i + 1, dim):
                    if not scalars.close(t[i][j], t[j][i], kind, tol):
                        raise ShapeError(f"{name} is not symmetric")
        return cls(dim, f, g, t1, t2, scalars.coerce(lambda1, kind),
                   scalars.coerce(lambda2, kind), kind)

    def to_jsonable(self) -> dict:
        enc = lambda x: scalars.to_jsonable(x, self.kind)
        return {
            "dim": self.dim,
            "f": [enc(x) for x in self.f],
            "g": [enc(x) for x in self.g],
            "T1": [[enc(x) for x in row] for row in self.t1],
            "T2": [[enc(x) for x in row] for row in self.t2],
            "lambda1": enc(self.lambda1),
            "lambda2": enc(self.lambda2),
        }

    @classmethod
    def from_jsonable(cls, data, kind=None) -> "FockModel":
        if kind is None:
            kind = scalars.RATIONAL if isinstance(data["lambda1"], str) else scalars.FLOAT
        dec = lambda v: scalars.from_jsonable(v, kind)
        return cls.from_arrays(
            [dec(x) for x in data["f"]], [dec(x) for x in data["g"]],
            [[dec(x) for x in row] for row in data["T1"]],
            [[dec(x) for x in row] for row in data["T2"]],
            dec(data["lambda1"]), dec(data["lambda2"]), kind)


@dataclass
class FockState:
    """Sparse vector in the truncated Fock space; keys are letter words."""

    cap: int
    kind: str
    amplitudes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.amplitudes = {w: a for w, a in self.amplitudes.items()
                           if a != scalars.zero(self.kind)}
        if any(len(w) > self.cap for w in self.amplitudes):
            raise ValueError("word longer than the level cap")

    @classmethod
    def vacuum(cls, cap: int, kind: str) -> "FockState":
        return cls(cap, kind, {(): scalars.one(kind)})

    def amplitude(self, word: tuple):
        return self.amplitudes.get(tuple(word), scalars.zero(self.kind))


def state_add(x: FockState, y: FockState) -> FockState:
    out = dict(x.amplitudes)
    zero = scalars.zero(x.kind)
    for w, a in y.amplitudes.items():
        out[w] = out.get(w, zero) + a
    return FockState(x.cap, x.kind, out)


def apply_operator(kind: str, payload, state: FockState) -> FockState:
    """Apply a creation, annihilation, gauge, or scalar operator.

    Creation prepends (left) or appends (right) the payload vector,
    discarding words that would exceed the cap; annihilation contracts the
    first (left) or last (right) letter against the payload and kills the
    vacuum; gauge applies the payload matrix to the first or last letter
    and kills the vacuum; scalar multiplies throughout.
    """
    zero = scalars.zero(state.kind)
    out: dict = {}

    def put(word, value):
        if value != zero:
            out[word] = out.get(word, zero) + value

    if kind in (CREATE_L, CREATE_R, ANNIH_L, ANNIH_R):
        vec = tuple(payload)
        for word, amp in state.amplitudes.items():
            if kind == CREATE_L:
                if len(word) < state.cap:
                    for i, c in enumerate(vec):
                        put((i,) + word, amp * c)
            elif kind == CREATE_R:
                if len(word) < state.cap:
                    for i, c in enumerate(vec):
                        put(word + (i,), amp * c)
            elif kind == ANNIH_L:
                if word:
                    put(word[1:], amp * vec[word[0]])
            else:
                if word:
                    put(word[:-1], amp * vec[word[-1]])
    elif kind in (GAUGE_L, GAUGE_R):
        mat = payload
        for word, amp in state.amplitudes.items():
            if not word:
                continue
            if kind == GAUGE_L:
                col = word[0]
                for i in range(len(mat)):
                    put((i,) + word[1:], amp * mat[i][col])
            else:
                col = word[-1]
                for i in range(len(mat)):
                    put(word[:-1] + (i,), amp * mat[i][col])
    elif kind == SCALAR:
        for word, amp in state.amplitudes.items():
            put(word, amp * payload)
    else:
        raise ShapeError(f"unknown operator kind {kind!r}")
    return FockState(state.cap, state.kind, out)


def apply_left_face(model: FockModel, state: FockState) -> FockState:
    """Apply a = l(f) + l(f)* + gauge_l(T1) + lambda1."""
    total = apply_operator(CREATE_L, model.f, state)
    total = state_add(total, apply_operator(ANNIH_L, model.f, state))
    total = state_add(total, apply_operator(GAUGE_L, model.t1, state))
    return state_add(total, apply_operator(SCALAR, model.lambda1, state))


def apply_right_face(model: FockModel, state: FockState) -> FockState:
    """Apply b = r(g) + r(g)* + gauge_r(T2) + lambda2."""
    total = apply_operator(CREATE_R, model.g, state)
    total = state_add(total, apply_operator(ANNIH_R, model.g, state))
    total = state_add(total, apply_operator(GAUGE_R, model.t2, state))
    return state_add(total, apply_operator(SCALAR, model.lambda2, state))


def vacuum_moment(model: FockModel, m: int, n: int, cap: int | None = None):
    """The joint moment <a^m b^n vacuum, vacuum>.

    The word is applied right to left, so b acts n times first. The level
    cap defaults to m + n, which is exact: levels above m + n are
    unreachable from the vacuum in m + n applications.
    """
    cap = m + n if cap is None else cap
    state = FockState.vacuum(cap, model.kind)
    for _ in range(n):
        state = apply_right_face(model, state)
    for _ in range(m):
        state = apply_left_face(model, state)
    return state.amplitude(())


def moment_table_from_model(model: FockModel, degree: int) -> MomentTable:
    entries = {(m, t - m): vacuum_moment(model, m, t - m)
               for t in range(degree + 1) for m in range(t + 1)}
    return MomentTable(degree, model.kind, entries)


@dataclass(frozen=True)
class CommutationReport:
    ok: bool
    gauge_residual: float
    commutator_residual: float


def check_commutation(model: FockModel, tol: float = 1e-10) -> CommutationReport:
    """Whether the two faces commute: T1 g = T2 f and T1 T2 = T2 T1.

    Over the reals the remaining condition (the mixed inner product being
    real) is automatic. Residuals are max-abs; in rational mode they are
    exact, so ok means residual zero.
    """
    diff_vec = [a - b for a, b in zip(_matvec(model.t1, model.g), _matvec(model.t2, model.f))]
    p12 = _mat_mul(model.t1, model.t2)
    p21 = _mat_mul(model.t2, model.t1)
    diff_mat = [p12[i][j] - p21[i][j] for i in range(model.dim) for j in range(model.dim)]
    gauge_res = max((abs(scalars.as_float(x)) for x in diff_vec), default=0.0)
    comm_res = max((abs(scalars.as_float(x)) for x in diff_mat), default=0.0)
    if model.kind == scalars.RATIONAL:
        ok = all(x == 0 for x in diff_vec) and all(x == 0 for x in diff_mat)
    else:
        ok = gauge_res <= tol and comm_res <= tol
    return CommutationReport(ok, gauge_res, comm_res)


def model_cumulants(model: FockModel, degree: int) -> CumulantTable:
    """Closed-form cumulants of a commuting model.

    kappa_{1,0} = lambda1, kappa_{0,1} = lambda2,
    kappa_{m,0} = <T1^(m-2) f, f> for m >= 2 (likewise the right face), and
    kappa_{m,n} = <T1^(m-1) f, T2^(n-1) g> for m, n >= 1.
    """
    report = check_commutation(model)
    if not report.ok:
        raise CommutationError(f"faces do not commute: {report}")
    kind = model.kind
    # iterated images T1^k f and T2^k g, k = 0..degree-1
    t1f = [model.f]
    t2g = [model.g]
    for _ in range(degree - 1):
        t1f.append(_matvec(model.t1, t1f[-1]))
        t2g.append(_matvec(model.t2, t2g[-1]))
    zero = scalars.zero(kind)
    entries: dict = {}
    for total in range(1, degree + 1):
        for m in range(total + 1):
            n = total - m
            if (m, n) == (1, 0):
                value = model.lambda1
            elif (m, n) == (0, 1):
                value = model.lambda2
            elif n == 0:
                value = _dot(t1f[m - 2], model.f) if model.dim else zero
            elif m == 0:
                value = _dot(t2g[n - 2], model.g) if model.dim else zero
            else:
                value = _dot(t1f[m - 1], t2g[n - 1]) if model.dim else zero
            entries[(m, n)] = value
    return CumulantTable(degree, kind, entries)


def _rescale(model: FockModel, vec_scale, lam_scale) -> FockModel:
    kind = model.kind
    if isinstance(vec_scale, float) and kind == scalars.RATIONAL:
        kind = scalars.FLOAT
    conv = lambda x: scalars.coerce(x, kind)
    return FockModel.from_arrays(
        [conv(x) * conv(vec_scale) for x in model.f],
        [conv(x) * conv(vec_scale) for x in model.g],
        [[conv(x) for x in row] for row in model.t1],
        [[conv(x) for x in row] for row in model.t2],
        conv(model.lambda1) * conv(lam_scale),
        conv(model.lambda2) * conv(lam_scale), kind)


def amplify(model: FockModel, n: int) -> FockModel:
    """The single-summand model whose n-fold bi-free sum gives this one.

    Vectors shrink by 1/sqrt(n) and the scalar parts by 1/n, so every
    cumulant is divided by n. Exact when n is a perfect square times a
    square denominator; otherwise the result drops to float scalars.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    root = scalars.sqrt_or_float(Fraction(n) if model.kind == scalars.RATIONAL else float(n))
    inv_root = (Fraction(1) / root) if isinstance(root, Fraction) else 1.0 / root
    inv = Fraction(1, n) if model.kind == scalars.RATIONAL else 1.0 / n
    return _rescale(model, inv_root, inv)


def levy_marginal_model(model: FockModel, t) -> FockModel:
    """Time-t marginal of the stationary-increment process through the model.

    Scaling (f, g) by sqrt(t) and the scalar parts by t multiplies every
    cumulant by t, which reproduces the marginal distribution of the
    continuous-time increment construction at cumulant level.
    """
    t = scalars.coerce(t, model.kind)
    if t < 0:
        raise ValueError("time must be nonnegative")
    root = scalars.sqrt_or_float(t)
    return _rescale(model, root, t)
