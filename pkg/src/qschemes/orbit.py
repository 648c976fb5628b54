"""Conjugation orbits of block-scalar endomorphisms and leg factorizations.

An ``OrbitSpec`` fixes block dimensions w_0..w_l and scalars theta_0..theta_l
of R_d whose pairwise differences are units; the model point Theta acts as
theta_i on the i-th block.  Membership of an endomorphism A in the orbit of
Theta is decided constructively: the candidate projectors

    pi_i = prod_{j != i} (theta_i - theta_j)^{-1} (A - theta_j)

must be orthogonal idempotents summing to the identity, with A pi_i =
theta_i pi_i and the residue rank of pi_i equal to w_i.

``leg_factorize`` writes a member A as the value of the chain-of-modules
presentation: nested images V_i = Im(sum_{j>=i} pi_j) get free bases by the
deterministic rule of ``free_basis`` (column-reduce the residue, pick the
lexicographically smallest pivot set, lift those columns), and the connecting
maps are coordinates of (-A + theta_i) between consecutive bases.  Distinct
basis choices differ by a gauge transformation only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotInOrbit, ShapeMismatch, TopSliceNotZero
from .linalg import Matrix, pivot_columns, rank, solve
from .rmatrix import (
    ModShape,
    RMap,
    compose,
    extend_scalars,
    extend_scalars_rev,
    from_slices,
    identity_end,
    restrict_scalars,
    scalar_end,
    scale_end,
    slices,
    zero_map,
)
from .rng import SplitMix64
from .scalars import GQ_ZERO, GaussQ, TruncScalar, trunc_inv


@dataclass(frozen=True)
class OrbitSpec:
    d: int
    blocks: tuple  # (dimension, theta) pairs

    def __post_init__(self):
        if len(self.blocks) < 2:
            raise ValueError("need at least two blocks")
        for dim, theta in self.blocks:
            if dim < 0:
                raise ValueError("block dimension must be non-negative")
            if theta.d != self.d:
                raise ValueError("theta order differs from spec order")
        for i, (_, ti) in enumerate(self.blocks):
            for j, (_, tj) in enumerate(self.blocks):
                if i < j and not (ti - tj).is_unit():
                    raise ValueError(
                        f"theta_{i} - theta_{j} is not a unit of R_{self.d}"
                    )

    @property
    def legs(self) -> int:
        """l: the number of blocks minus one."""
        return len(self.blocks) - 1

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.blocks)

    @property
    def thetas(self) -> tuple[TruncScalar, ...]:
        return tuple(t for _, t in self.blocks)

    @property
    def total(self) -> int:
        return sum(self.dims)

    def tail_dim(self, i) -> int:
        """Dimension of the i-th chain module: sum of block dims from i on."""
        return sum(self.dims[i:])


def big_theta(spec: OrbitSpec) -> RMap:
    """The model point: block-diagonal action of the theta scalars."""
    n = spec.total
    shape = ModShape(n, spec.d)
    rows = [[GQ_ZERO] * shape.dim for _ in range(shape.dim)]
    pos = 0
    for w, theta in spec.blocks:
        for j in range(pos, pos + w):
            for m in range(spec.d):
                for k in range(spec.d - m):
                    rows[shape.flat_index(j, m + k)][shape.flat_index(j, m)] = theta.coeffs[k]
        pos += w
    return RMap(shape, shape, spec.d, Matrix(rows, ncols=shape.dim))


# -- membership ----------------------------------------------------------------

@dataclass
class MembershipWitness:
    ok: bool
    idempotents: tuple
    reasons: list

    def __bool__(self):
        return self.ok


def orbit_membership(spec: OrbitSpec, a: RMap) -> MembershipWitness:
    n = spec.total
    shape = ModShape(n, spec.d)
    if a.src != shape or a.dst != shape or not a.is_end():
        raise ShapeMismatch(
            f"endomorphism must act on a rank-{n} order-{spec.d} module"
        )
    thetas = spec.thetas
    reasons = []
    minimal = identity_end(shape)
    for t in thetas:
        minimal = compose(minimal, a - scalar_end(t, n))
    if not minimal.is_zero():
        reasons.append("product of (A - theta_j) does not vanish")
    pis = []
    for i, ti in enumerate(thetas):
        prod = identity_end(shape)
        scal = TruncScalar.const(spec.d, 1)
        for j, tj in enumerate(thetas):
            if j == i:
                continue
            prod = compose(prod, a - scalar_end(tj, n))
            scal = scal * (ti - tj)
        pis.append(scale_end(prod, trunc_inv(scal)))
    total = pis[0]
    for p in pis[1:]:
        total = total + p
    if total != identity_end(shape):
        reasons.append("idempotents do not sum to the identity")
    for i, pi in enumerate(pis):
        for j, pj in enumerate(pis):
            want = pi if i == j else zero_map(shape, shape, spec.d)
            if compose(pi, pj) != want:
                reasons.append(f"pi_{i} pi_{j} is not {'pi_i' if i == j else 'zero'}")
    for i, (pi, ti) in enumerate(zip(pis, thetas)):
        if compose(a, pi) != scale_end(pi, ti):
            reasons.append(f"A does not act as theta_{i} on the image of pi_{i}")
    for i, pi in enumerate(pis):
        if rank(slices(pi)[0]) != spec.dims[i]:
            reasons.append(f"residue rank of pi_{i} differs from block dimension")
    return MembershipWitness(not reasons, tuple(pis), reasons)


# -- free bases over the truncated ring -----------------------------------------

def free_basis(e: RMap) -> RMap:
    """Deterministic free basis of the image of an idempotent endomorphism.

    Column-reduce the residue e(0), take the lexicographically smallest pivot
    column set, and lift those generator columns e(v_j (x) 1); by Nakayama
    they form a free basis of the image.
    """
    n, d = e.src.rank, e.src.order
    residue = slices(e)[0]
    pivots = pivot_columns(residue)
    r = len(pivots)
    gen_rows = [
        [e.flat[row, e.src.flat_index(j, 0)] for j in pivots]
        for row in range(e.src.dim)
    ]
    gens = RMap(ModShape(r, 1), e.src, 1, Matrix(gen_rows, ncols=r))
    return extend_scalars(gens)


def coordinates(u: RMap, f: RMap) -> RMap:
    """The map k with u . k = f, for u injective with Im f inside Im u."""
    if u.dst != f.dst:
        raise ShapeMismatch("targets differ")
    x = solve(u.flat, f.flat)
    return RMap(f.src, u.src, math.gcd(u.base, f.base), x)


# -- leg points ------------------------------------------------------------------

@dataclass(frozen=True)
class LegPoint:
    """Chain presentation: down/up maps between nested modules plus end maps.

    down[i-1] : V_i -> V_{i+1} and up[i-1] : V_{i+1} -> V_i for i = 1..l-1;
    ``a`` and ``b`` are the base-field forms of the junction maps between the
    ambient module and V_1.
    """

    d: int
    dims: tuple          # ranks of V_0..V_l
    down: tuple
    up: tuple
    a: RMap
    b: RMap

    def junction_in(self) -> RMap:
        """a extended to the ambient module: V_0 (x) R_d -> V_1 (x) R_d."""
        return extend_scalars(self.a)

    def junction_out(self) -> RMap:
        """b extended: V_1 (x) R_d -> V_0 (x) R_d."""
        return extend_scalars_rev(self.b)


def canonical_leg_point(spec: OrbitSpec) -> LegPoint:
    """The distinguished point presenting Theta itself.

    Up maps are the inclusions of the nested coordinate modules; down maps act
    as theta_i - theta_j on the j-th block.
    """
    d = spec.d
    l = spec.legs
    thetas = spec.thetas
    dims = [spec.tail_dim(i) for i in range(l + 1)]
    down, up = [], []
    for i in range(1, l):
        down.append(_scaled_projection(spec, i))
        up.append(_inclusion(spec, i))
    b10 = _scaled_projection(spec, 0)
    b01 = _inclusion(spec, 0)
    a = restrict_scalars(b10, "forward", 1)
    b = restrict_scalars(b01, "reverse", 1)
    return LegPoint(d, tuple(dims), tuple(down), tuple(up), a, b)


def _inclusion(spec: OrbitSpec, i) -> RMap:
    """V_{i+1} (x) R_d -> V_i (x) R_d, the last blocks of V_i."""
    d = spec.d
    src = ModShape(spec.tail_dim(i + 1), d)
    dst = ModShape(spec.tail_dim(i), d)
    shift = spec.dims[i]
    rows = [[GQ_ZERO] * src.dim for _ in range(dst.dim)]
    for j in range(src.rank):
        for k in range(d):
            rows[dst.flat_index(j + shift, k)][src.flat_index(j, k)] = GaussQ(1)
    return RMap(src, dst, d, Matrix(rows, ncols=src.dim))


def _scaled_projection(spec: OrbitSpec, i) -> RMap:
    """(-Theta + theta_i)|_{V_i}: kills block i, scales block j by theta_i - theta_j."""
    d = spec.d
    src = ModShape(spec.tail_dim(i), d)
    dst = ModShape(spec.tail_dim(i + 1), d)
    rows = [[GQ_ZERO] * src.dim for _ in range(dst.dim)]
    pos = 0
    for blk in range(i + 1, spec.legs + 1):
        s = spec.thetas[i] - spec.thetas[blk]
        for j in range(spec.dims[blk]):
            src_vertex = spec.dims[i] + pos + j
            dst_vertex = pos + j
            for m in range(d):
                for k in range(d - m):
                    rows[dst.flat_index(dst_vertex, m + k)][src.flat_index(src_vertex, m)] = s.coeffs[k]
        pos += spec.dims[blk]
    return RMap(src, dst, d, Matrix(rows, ncols=src.dim))


def nu(spec: OrbitSpec, point: LegPoint) -> RMap:
    """-B_{0,1} B_{1,0} + theta_0; recovers the presented endomorphism."""
    n = spec.total
    prod = compose(point.junction_out(), point.junction_in())
    return scalar_end(spec.thetas[0], n) - prod


def leg_moment(spec: OrbitSpec, point: LegPoint) -> tuple[RMap, ...]:
    """Chain moment values B_{i,i-1} B_{i-1,i} - B_{i,i+1} B_{i+1,i} for i = 1..l."""
    l = spec.legs
    out = []
    for i in range(1, l + 1):
        if i == 1:
            acc = compose(point.junction_in(), point.junction_out())
        else:
            acc = compose(point.down[i - 2], point.up[i - 2])
        if i < l:
            acc = acc - compose(point.up[i - 1], point.down[i - 1])
        out.append(acc)
    return tuple(out)


def leg_mesh_residuals(spec: OrbitSpec, point: LegPoint) -> tuple[RMap, ...]:
    """mu_i + (theta_i - theta_{i-1}) Id per chain vertex; zero on the level set."""
    mu = leg_moment(spec, point)
    out = []
    for i, m in enumerate(mu, start=1):
        lam = spec.thetas[i] - spec.thetas[i - 1]
        out.append(m + scalar_end(lam, m.src.rank))
    return tuple(out)


def leg_rank_checks(spec: OrbitSpec, point: LegPoint) -> bool:
    """Residue-rank witnesses: up maps injective, down maps surjective."""
    ups = [point.junction_out()] + list(point.up)
    downs = [point.junction_in()] + list(point.down)
    for i, (u_map, d_map) in enumerate(zip(ups, downs)):
        target = spec.tail_dim(i + 1)
        if rank(residue_slice(u_map)) != target:
            return False
        if rank(residue_slice(d_map)) != target:
            return False
    return True


def residue_slice(f: RMap) -> Matrix:
    """Residue (constant eps-slice) of a possibly rectangular map."""
    rows = [
        [f.flat[f.dst.flat_index(i, 0), f.src.flat_index(j, 0)] for j in range(f.src.rank)]
        for i in range(f.dst.rank)
    ]
    return Matrix(rows, ncols=f.src.rank)


def leg_factorize(spec: OrbitSpec, a_end: RMap) -> LegPoint:
    """Present a member of the orbit as a chain point with nu equal to it."""
    witness = orbit_membership(spec, a_end)
    if not witness.ok:
        raise NotInOrbit("; ".join(witness.reasons))
    d = spec.d
    n = spec.total
    l = spec.legs
    shape = ModShape(n, d)
    thetas = spec.thetas
    bases = [identity_end(shape)]
    for i in range(1, l + 1):
        proj = witness.idempotents[i]
        for p in witness.idempotents[i + 1:]:
            proj = proj + p
        bases.append(free_basis(proj))
    def minus_a_plus(t):
        return scalar_end(t, n) - a_end
    down, up = [], []
    for i in range(1, l):
        down.append(coordinates(bases[i + 1], compose(minus_a_plus(thetas[i]), bases[i])))
        up.append(coordinates(bases[i], bases[i + 1]))
    b10 = coordinates(bases[1], minus_a_plus(thetas[0]))
    a = restrict_scalars(b10, "forward", 1)
    b = restrict_scalars(bases[1], "reverse", 1)
    dims = tuple(spec.tail_dim(i) for i in range(l + 1))
    return LegPoint(d, dims, tuple(down), tuple(up), a, b)


# -- shifting between full and constant-free coordinates ---------------------------

def shift_decompose(a_end: RMap):
    """Split off the top eps-slice: A = eps^(d-1) top + rest."""
    parts = slices(a_end)
    d = a_end.src.order
    top = parts[d - 1]
    rest = from_slices(parts[:-1] + [Matrix.zero(top.nrows, top.ncols)], d)
    return top, rest


def shift_map(b_end: RMap, m: Matrix, zeta: GaussQ) -> RMap:
    """B - eps^(d-1) (m + zeta Id), for B with vanishing top slice."""
    parts = slices(b_end)
    d = b_end.src.order
    if not parts[d - 1].is_zero():
        raise TopSliceNotZero("input already has a top eps-slice")
    n = b_end.src.rank
    if m.nrows != n or m.ncols != n:
        raise ShapeMismatch("shift matrix has wrong size")
    top = -(m + Matrix.identity(n).scale(zeta))
    return from_slices(parts[:-1] + [top], d)


def orbit_dimension(spec: OrbitSpec) -> int:
    """d (n^2 - sum w_i^2): ambient group dimension minus stabilizer dimension."""
    n = spec.total
    return spec.d * (n * n - sum(w * w for w in spec.dims))


# -- deterministic generators --------------------------------------------------------

def random_conjugate(spec: OrbitSpec, seed) -> RMap:
    from .repn import random_unit_end

    rng = SplitMix64(seed)
    g = random_unit_end(rng, ModShape(spec.total, spec.d))
    theta = big_theta(spec)
    from .rmatrix import invert_end

    return compose(g, compose(theta, invert_end(g)))


def random_non_member(spec: OrbitSpec, seed) -> RMap:
    """A point certainly outside the orbit.

    Either shifts one diagonal eigenvalue away from every theta (breaks the
    minimal-polynomial product) or, when two block dimensions differ, uses the
    same scalars with swapped block sizes (breaks the residue-rank condition);
    then conjugates.
    """
    from .repn import random_unit_end
    from .rmatrix import invert_end

    rng = SplitMix64(seed)
    n = spec.total
    mode = rng.randint(0, 1)
    swap = None
    if mode == 1:
        for i in range(len(spec.blocks)):
            for j in range(i + 1, len(spec.blocks)):
                if spec.dims[i] != spec.dims[j]:
                    swap = (i, j)
                    break
            if swap:
                break
    if swap is not None:
        blocks = list(spec.blocks)
        wi, ti = blocks[swap[0]]
        wj, tj = blocks[swap[1]]
        blocks[swap[0]] = (wj, ti)
        blocks[swap[1]] = (wi, tj)
        base = big_theta(OrbitSpec(spec.d, tuple(blocks)))
    else:
        consts = [t.constant_term() for t in spec.thetas]
        nonempty = [i for i, w in enumerate(spec.dims) if w > 0]
        block = nonempty[rng.randint(0, len(nonempty) - 1)]
        shift = None
        for c in range(1, len(spec.blocks) + 2):
            cand = spec.thetas[block].constant_term() + GaussQ(c)
            if all(cand != other for other in consts):
                shift = GaussQ(c)
                break
        vertex = sum(spec.dims[:block])
        bump = [[shift if (r == c == vertex) else GQ_ZERO for c in range(n)] for r in range(n)]
        base = big_theta(spec) + from_slices(
            [Matrix(bump, ncols=n)] + [Matrix.zero(n, n)] * (spec.d - 1), spec.d
        )
    g = random_unit_end(rng, ModShape(n, spec.d))
    return compose(g, compose(base, invert_end(g)))
