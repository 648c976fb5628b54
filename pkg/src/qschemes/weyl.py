"""Weyl-group actions attached to a quiver with multiplicities.

Two mutually transposed actions of the simple reflections are implemented:
``reflect_dim`` (s_i) on integer dimension vectors, and ``reflect_param``
(r_i) on tuples of truncated scalars, one of order d_j per vertex.  The
transpose is taken with respect to the per-vertex residue pairings; it equals
``transpose_action`` and factors through the lifted Cartan matrix on the
index set {(i, k) : k < d_i}.

Parameter vectors are flattened vertex-major with eps-powers ascending, so
every action here is also available as an exact integer matrix; Coxeter
relations are verified by full matrix powering, never by sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import LengthMismatch, MismatchedOrder, SameVertex
from .linalg import int_identity, int_mat_mul
from .quiver import QuiverMult, cartan
from .scalars import GQ_ZERO, GaussQ, TruncScalar

COXETER_TABLE = {0: 2, 1: 3, 2: 4, 3: 6}
INFINITE = math.inf


# -- parameter vectors --------------------------------------------------------

def check_params(q: QuiverMult, lam) -> tuple[TruncScalar, ...]:
    lam = tuple(lam)
    if len(lam) != q.n:
        raise LengthMismatch(f"{len(lam)} parameters for {q.n} vertices")
    for v, x in zip(q.vertices, lam):
        if x.d != v.mult:
            raise MismatchedOrder(
                f"parameter at {v.name} has order {x.d}, vertex multiplicity {v.mult}"
            )
    return lam


def zero_params(q: QuiverMult) -> tuple[TruncScalar, ...]:
    return tuple(TruncScalar(m) for m in q.mults)


def param_offsets(q: QuiverMult) -> list[int]:
    offs, total = [], 0
    for m in q.mults:
        offs.append(total)
        total += m
    return offs


def flatten_params(q: QuiverMult, lam) -> list[GaussQ]:
    return [c for x in check_params(q, lam) for c in x.coeffs]


def unflatten_params(q: QuiverMult, coords) -> tuple[TruncScalar, ...]:
    out, pos = [], 0
    for m in q.mults:
        out.append(TruncScalar(m, coords[pos:pos + m]))
        pos += m
    if pos != len(coords):
        raise LengthMismatch("flat coordinate length mismatch")
    return tuple(out)


# -- reflections --------------------------------------------------------------

def reflect_dim(q: QuiverMult, i, v) -> tuple[int, ...]:
    """s_i(v) = v - (sum_j c_ij v_j) e_i."""
    i = q.index(i)
    if len(v) != q.n:
        raise LengthMismatch("dimension vector length differs from vertex count")
    c = cartan(q).c
    out = list(v)
    out[i] = v[i] - sum(c[i][j] * v[j] for j in range(q.n))
    return tuple(out)


def reflect_param(q: QuiverMult, i, lam) -> tuple[TruncScalar, ...]:
    """r_i: negate at i, and correct each neighbour j by top coefficients of lam_i.

    r_i(lam)_j = lam_j - c_ij * sum_{l < gcd(d_i,d_j)}
                 lam_{i, d_i - (d_i/gcd) l - 1} * eps_j^(d_j - (d_j/gcd) l - 1).
    """
    i = q.index(i)
    lam = check_params(q, lam)
    d = q.mults
    c = cartan(q).c
    out = list(lam)
    out[i] = -lam[i]
    for j in range(q.n):
        if j == i or c[i][j] == 0:
            continue
        g = math.gcd(d[i], d[j])
        fji = d[i] // g
        fij = d[j] // g
        coeffs = [GQ_ZERO] * d[j]
        for l in range(g):
            coeffs[d[j] - fij * l - 1] = lam[i].coeffs[d[i] - fji * l - 1]
        out[j] = lam[j] - TruncScalar(d[j], coeffs) * GaussQ(c[i][j])
    return tuple(out)


def transpose_action(q: QuiverMult, i, kappa) -> tuple[TruncScalar, ...]:
    """The residue-pairing transpose of r_i; changes only the i-th component."""
    i = q.index(i)
    kappa = check_params(q, kappa)
    d = q.mults
    c = cartan(q).c
    corr = [GQ_ZERO] * d[i]
    for j in range(q.n):
        if c[i][j] == 0:
            continue
        g = math.gcd(d[i], d[j])
        fji = d[i] // g
        fij = d[j] // g
        for m in range(g):
            corr[fji * m] = corr[fji * m] + GaussQ(c[i][j]) * kappa[j].coeffs[fij * m]
    out = list(kappa)
    out[i] = kappa[i] - TruncScalar(d[i], corr)
    return tuple(out)


def rho(q: QuiverMult, lam) -> tuple[GaussQ, ...]:
    """Per-vertex residue: the top coefficient of each parameter."""
    lam = check_params(q, lam)
    return tuple(x.coeffs[x.d - 1] for x in lam)


# -- matrices of the actions ---------------------------------------------------

def dim_reflection_matrix(q: QuiverMult, i):
    i = q.index(i)
    c = cartan(q).c
    m = int_identity(q.n)
    for j in range(q.n):
        m[i][j] -= c[i][j]
    return m


def param_reflection_matrix(q: QuiverMult, i):
    i = q.index(i)
    d = q.mults
    c = cartan(q).c
    offs = param_offsets(q)
    n = sum(d)
    m = int_identity(n)
    for k in range(d[i]):
        m[offs[i] + k][offs[i] + k] = -1
    for j in range(q.n):
        if j == i or c[i][j] == 0:
            continue
        g = math.gcd(d[i], d[j])
        fji = d[i] // g
        fij = d[j] // g
        for l in range(g):
            row = offs[j] + d[j] - fij * l - 1
            col = offs[i] + d[i] - fji * l - 1
            m[row][col] -= c[i][j]
    return m


def transpose_action_matrix(q: QuiverMult, i):
    i = q.index(i)
    d = q.mults
    c = cartan(q).c
    offs = param_offsets(q)
    m = int_identity(sum(d))
    for j in range(q.n):
        if c[i][j] == 0:
            continue
        g = math.gcd(d[i], d[j])
        fji = d[i] // g
        fij = d[j] // g
        for mm in range(g):
            m[offs[i] + fji * mm][offs[j] + fij * mm] -= c[i][j]
    return m


def pairing_matrix(q: QuiverMult):
    """Gram matrix of the summed residue pairings: per-vertex anti-diagonal."""
    d = q.mults
    offs = param_offsets(q)
    n = sum(d)
    m = [[0] * n for _ in range(n)]
    for i in range(q.n):
        for k in range(d[i]):
            m[offs[i] + k][offs[i] + d[i] - 1 - k] = 1
    return m


def rho_matrix(q: QuiverMult):
    d = q.mults
    offs = param_offsets(q)
    m = [[0] * sum(d) for _ in range(q.n)]
    for i in range(q.n):
        m[i][offs[i] + d[i] - 1] = 1
    return m


# -- lifted Cartan matrix ------------------------------------------------------

@dataclass(frozen=True)
class LiftedCartan:
    indices: tuple          # (vertex, k) pairs, flattened vertex-major
    c: tuple                # integer matrix on the lifted index set
    d: tuple                # symmetrizer: multiplicity of the underlying vertex

    def reflection_matrix(self, pos):
        n = len(self.indices)
        m = int_identity(n)
        for jl in range(n):
            m[pos][jl] -= self.c[pos][jl]
        return m


def lift_cartan(q: QuiverMult) -> LiftedCartan:
    """Cartan matrix on {(i,k) : k < d_i} whose reflections assemble r_i's transpose.

    Entry ((i,k),(j,l)) equals c_ij exactly when k and l are the m-th
    multiples of d_i/gcd and d_j/gcd for one common m, and 0 otherwise.
    """
    d = q.mults
    c = cartan(q).c
    indices = [(i, k) for i in range(q.n) for k in range(d[i])]
    n = len(indices)
    out = [[0] * n for _ in range(n)]
    for a, (i, k) in enumerate(indices):
        for b, (j, l) in enumerate(indices):
            g = math.gcd(d[i], d[j])
            fji = d[i] // g
            fij = d[j] // g
            if k % fji == 0:
                m = k // fji
                if l == fij * m:
                    out[a][b] = c[i][j]
    return LiftedCartan(
        tuple(indices),
        tuple(tuple(r) for r in out),
        tuple(d[i] for i, _ in indices),
    )


# -- Coxeter relations ----------------------------------------------------------

def coxeter_order(q: QuiverMult, i, j):
    """Order of s_i s_j from the standard table on c_ij * c_ji."""
    i, j = q.index(i), q.index(j)
    if i == j:
        raise SameVertex("coxeter_order needs two distinct vertices")
    c = cartan(q).c
    return COXETER_TABLE.get(c[i][j] * c[j][i], INFINITE)


@dataclass
class RelationCheck:
    action: str      # "param" or "dim"
    vertices: tuple
    order: int
    ok: bool


@dataclass
class CoxeterReport:
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def summary(self) -> str:
        bad = [c for c in self.checks if not c.ok]
        lines = [
            f"coxeter relations: {len(self.checks) - len(bad)}/{len(self.checks)} hold"
        ]
        for c in bad:
            lines.append(f"  FAIL {c.action} {c.vertices} order {c.order}")
        for pair, prod in self.skipped:
            lines.append(f"  skipped infinite pair {pair} (c_ij*c_ji = {prod})")
        return "\n".join(lines)


def verify_coxeter(q: QuiverMult) -> CoxeterReport:
    """Exact verification of r_i^2 = 1, s_i^2 = 1 and all finite braid relations."""
    report = CoxeterReport()
    c = cartan(q).c
    size = sum(q.mults)
    rid = int_identity(size)
    sid = int_identity(q.n)
    rmats = [param_reflection_matrix(q, i) for i in range(q.n)]
    smats = [dim_reflection_matrix(q, i) for i in range(q.n)]
    for i in range(q.n):
        report.checks.append(RelationCheck(
            "param", (q.name(i),), 2, int_mat_mul(rmats[i], rmats[i]) == rid))
        report.checks.append(RelationCheck(
            "dim", (q.name(i),), 2, int_mat_mul(smats[i], smats[i]) == sid))
    for i in range(q.n):
        for j in range(i + 1, q.n):
            m = COXETER_TABLE.get(c[i][j] * c[j][i])
            if m is None:
                report.skipped.append(((q.name(i), q.name(j)), c[i][j] * c[j][i]))
                continue
            rprod = int_mat_mul(rmats[i], rmats[j])
            sprod = int_mat_mul(smats[i], smats[j])
            racc, sacc = rid, sid
            for _ in range(m):
                racc = int_mat_mul(racc, rprod)
                sacc = int_mat_mul(sacc, sprod)
            report.checks.append(RelationCheck(
                "param", (q.name(i), q.name(j)), m, racc == rid))
            report.checks.append(RelationCheck(
                "dim", (q.name(i), q.name(j)), m, sacc == sid))
    return report


def apply_int_matrix_to_params(q: QuiverMult, m, lam) -> tuple[TruncScalar, ...]:
    flat = flatten_params(q, lam)
    out = [sum((GaussQ(a) * x for a, x in zip(row, flat) if a), GQ_ZERO) for row in m]
    return unflatten_params(q, out)


def apply_transposed_dim(q: QuiverMult, i, vec):
    """t(s_i) applied to a rational vector indexed by vertices."""
    m = dim_reflection_matrix(q, i)
    n = q.n
    return tuple(
        sum((GaussQ(m[r][col]) * vec[r] for r in range(n) if m[r][col]), GQ_ZERO)
        for col in range(n)
    )
