"""Representation points, the per-vertex moment map, and its invariances.

A representation assigns to each arrow h of the double an RMap between the
endpoint modules that is linear over the common subring R_gcd; maps are keyed
by arrow name, with a "~" suffix for the reversed copy.  The moment component
at a vertex i averages the incoming composites B_h B_hbar into an
R_{d_i}-linear endomorphism with alternating signs:

    mu_i = sum over incoming h of sgn(h) * pr(B_h . B_hbar)

where pr is the averaging map of rmatrix.pr_cd.

The per-arrow ``arrow_extend``/``arrow_restrict`` helpers convert between an
R_gcd-linear map and its free parameters: a plain linear map out of (or into)
the base-field slice spanned by the first d/gcd eps-powers of the source (or
target).  Random points are drawn in that parametrization, so generated maps
satisfy the linearity constraint by construction.
"""

from __future__ import annotations

from types import MappingProxyType

from .errors import (
    LengthMismatch,
    NegativeDimension,
    NotInvertible,
    ShapeMismatch,
)
from .linalg import Matrix
from .quiver import DoubleArrow, QuiverMult, double
from .rmatrix import (
    ModShape,
    RMap,
    compose,
    invert_end,
    nilpotent,
    pair_d,
    pr_cd,
    scalar_end,
    trace_r,
    zero_map,
)
from .rng import SplitMix64
from .scalars import GQ_ZERO, GaussQ, TruncScalar
from .weyl import check_params


class Representation:
    """A point of the representation space: one RMap per arrow of the double."""

    __slots__ = ("quiver", "v", "maps", "_double")

    def __init__(self, quiver: QuiverMult, v, maps):
        v = tuple(v)
        if len(v) != quiver.n:
            raise LengthMismatch("dimension vector length differs from vertex count")
        if any(x < 0 for x in v):
            raise NegativeDimension("negative entry in dimension vector")
        dbl = double(quiver)
        mults = quiver.mults
        normalized = {}
        for h in dbl:
            if h.name not in maps:
                raise ShapeMismatch(f"missing map for arrow {h.name}")
            f = maps[h.name]
            want_src = ModShape(v[h.source], mults[h.source])
            want_dst = ModShape(v[h.target], mults[h.target])
            if f.src != want_src or f.dst != want_dst:
                raise ShapeMismatch(
                    f"arrow {h.name}: got {f.src}->{f.dst}, want {want_src}->{want_dst}"
                )
            if f.base == h.base:
                normalized[h.name] = f
            else:
                # re-declare at the arrow's base; constructor re-checks linearity
                normalized[h.name] = RMap(f.src, f.dst, h.base, f.flat)
        extra = set(maps) - set(normalized)
        if extra:
            raise ShapeMismatch(f"maps for unknown arrows: {sorted(extra)}")
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "maps", MappingProxyType(normalized))
        object.__setattr__(self, "_double", dbl)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    @property
    def arrows(self) -> tuple[DoubleArrow, ...]:
        return self._double

    def map(self, name) -> RMap:
        return self.maps[name]

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.v == other.v
            and dict(self.maps) == dict(other.maps)
        )

    def __add__(self, other):
        self._same_space(other)
        return Representation(
            self.quiver, self.v,
            {k: self.maps[k] + other.maps[k] for k in self.maps},
        )

    def __sub__(self, other):
        self._same_space(other)
        return Representation(
            self.quiver, self.v,
            {k: self.maps[k] - other.maps[k] for k in self.maps},
        )

    def _same_space(self, other):
        if self.quiver != other.quiver or self.v != other.v:
            raise ShapeMismatch("representations live on different spaces")


def zero_rep(q: QuiverMult, v) -> Representation:
    mults = q.mults
    maps = {}
    for h in double(q):
        maps[h.name] = zero_map(
            ModShape(v[h.source], mults[h.source]),
            ModShape(v[h.target], mults[h.target]),
            h.base,
        )
    return Representation(q, v, maps)


# -- slice parametrization of maps linear over a common subring -----------------

def slice_extend(src: ModShape, dst: ModShape, base: int, x: RMap) -> RMap:
    """R_base-linear map src -> dst from its free parameter block.

    x sends the slice {v_j eps^l : l < src.order/base} into the target; the
    unique R_base-linear extension fills in the remaining eps-powers.
    """
    f_in = src.order // base
    f_out = dst.order // base
    if x.src != ModShape(src.rank * f_in, 1) or x.dst != dst:
        raise ShapeMismatch("parameter block has the wrong shape")
    step = nilpotent(dst).power(f_out)
    cols = [None] * src.dim
    for j in range(src.rank):
        for l in range(f_in):
            cur = Matrix([[a] for a in x.flat.column(j * f_in + l)], ncols=1)
            for k in range(base):
                cols[src.flat_index(j, l + f_in * k)] = cur
                if k < base - 1:
                    cur = step @ cur
    rows = [[cols[c][r, 0] for c in range(src.dim)] for r in range(dst.dim)]
    return RMap(src, dst, base, Matrix(rows, ncols=src.dim))


def slice_restrict(base: int, b: RMap) -> RMap:
    """Free parameter block of an R_base-linear map (inverse of slice_extend)."""
    src = b.src
    f_in = src.order // base
    cols = [
        b.flat.column(src.flat_index(j, l))
        for j in range(src.rank)
        for l in range(f_in)
    ]
    rows = [[col[r] for col in cols] for r in range(b.dst.dim)]
    return RMap(
        ModShape(src.rank * f_in, 1), b.dst, 1, Matrix(rows, ncols=len(cols))
    )


def slice_extend_rev(src: ModShape, dst: ModShape, base: int, y: RMap) -> RMap:
    """R_base-linear map src -> dst from a plain map onto the target slice.

    y sends the source module into {w_i eps^l : l < dst.order/base}; the
    extension places y(eps_base^(base-1-k) x) at eps_base-power k.
    """
    f_in = src.order // base
    f_out = dst.order // base
    if y.src != src or y.dst != ModShape(dst.rank * f_out, 1):
        raise ShapeMismatch("slice map has the wrong shape")
    rows = [[GQ_ZERO] * src.dim for _ in range(dst.dim)]
    for j in range(src.rank):
        for t in range(src.order):
            col = src.flat_index(j, t)
            for k in range(base):
                s = t + f_in * (base - 1 - k)
                if s >= src.order:
                    continue
                ycol = y.flat.column(src.flat_index(j, s))
                for i in range(dst.rank):
                    for l in range(f_out):
                        val = ycol[i * f_out + l]
                        if val:
                            r = dst.flat_index(i, l + f_out * k)
                            rows[r][col] = rows[r][col] + val
    return RMap(src, dst, base, Matrix(rows, ncols=src.dim))


def slice_restrict_rev(base: int, b: RMap) -> RMap:
    """Slice map of an R_base-linear map (inverse of slice_extend_rev)."""
    dst = b.dst
    f_out = dst.order // base
    rows = [
        [b.flat[dst.flat_index(i, l + f_out * (base - 1)), c]
         for c in range(b.src.dim)]
        for i in range(dst.rank)
        for l in range(f_out)
    ]
    return RMap(
        b.src, ModShape(dst.rank * f_out, 1), 1, Matrix(rows, ncols=b.src.dim)
    )


def _arrow_shapes(q: QuiverMult, h: DoubleArrow, v):
    mults = q.mults
    return ModShape(v[h.source], mults[h.source]), ModShape(v[h.target], mults[h.target])


def arrow_extend(q: QuiverMult, h: DoubleArrow, v, x: RMap) -> RMap:
    src, dst = _arrow_shapes(q, h, v)
    return slice_extend(src, dst, h.base, x)


def arrow_restrict(q: QuiverMult, h: DoubleArrow, v, b: RMap) -> RMap:
    return slice_restrict(h.base, b)


def arrow_extend_rev(q: QuiverMult, h: DoubleArrow, v, y: RMap) -> RMap:
    src, dst = _arrow_shapes(q, h, v)
    return slice_extend_rev(src, dst, h.base, y)


def arrow_restrict_rev(q: QuiverMult, h: DoubleArrow, v, b: RMap) -> RMap:
    return slice_restrict_rev(h.base, b)


def random_linear_map(rng: SplitMix64, src: ModShape, dst: ModShape, base: int) -> RMap:
    """Deterministic random R_base-linear map, drawn in the slice parametrization."""
    f_in = src.order // base
    block = RMap(
        ModShape(src.rank * f_in, 1), dst, 1,
        _random_matrix(rng, dst.dim, src.rank * f_in),
    )
    return slice_extend(src, dst, base, block)


# -- moment map -----------------------------------------------------------------

def moment_component(rep: Representation, i) -> RMap:
    """Moment value at one vertex."""
    q = rep.quiver
    i = q.index(i)
    shape = ModShape(rep.v[i], q.mults[i])
    acc = Matrix.zero(shape.dim, shape.dim)
    for h in rep.arrows:
        if h.target != i:
            continue
        prod = pr_cd(compose(rep.map(h.name), rep.map(h.reversed_name)))
        acc = acc + prod.flat if h.sign > 0 else acc - prod.flat
    return RMap(shape, shape, q.mults[i], acc)


def moment_map(rep: Representation) -> tuple[RMap, ...]:
    """Per-vertex moment value; component i is an R_{d_i}-endomorphism."""
    return tuple(moment_component(rep, i) for i in range(rep.quiver.n))


def mesh_check(rep: Representation, lam) -> tuple[RMap, ...]:
    """Residuals mu_i + lam_i * Id; all zero exactly on the level set."""
    lam = check_params(rep.quiver, lam)
    mu = moment_map(rep)
    out = []
    for i, m in enumerate(mu):
        out.append(m + scalar_end(lam[i], rep.v[i]))
    return tuple(out)


def level_check(q: QuiverMult, lam, v) -> bool:
    """Whether sum_i v_i * (top residue of lam_i) vanishes."""
    lam = check_params(q, lam)
    if len(v) != q.n:
        raise LengthMismatch("dimension vector length differs from vertex count")
    acc = GQ_ZERO
    for vi, x in zip(v, lam):
        acc = acc + GaussQ(vi) * x.coeffs[x.d - 1]
    return not acc


def moment_trace_sum(mu) -> GaussQ:
    """Pairing of a moment value against the central direction; always zero."""
    acc = GQ_ZERO
    for m in mu:
        t = trace_r(m)
        acc = acc + t.coeffs[t.d - 1]
    return acc


# -- symplectic structure ---------------------------------------------------------

def symplectic_form(t1: Representation, t2: Representation, sign: int = 1) -> GaussQ:
    """omega(t1, t2) summed over unreversed arrows at their gcd orders.

    ``sign`` is a view-level orientation flag for consumers wanting the
    opposite convention; it simply negates the value.
    """
    t1._same_space(t2)
    acc = GQ_ZERO
    for h in t1.arrows:
        if h.sign < 0:
            continue
        acc = acc + pair_d(t1.map(h.name), t2.map(h.reversed_name), h.base)
        acc = acc - pair_d(t2.map(h.name), t1.map(h.reversed_name), h.base)
    return acc if sign >= 0 else -acc


def symplectic_form_signed(t1: Representation, t2: Representation) -> GaussQ:
    """Half the signed sum over the full double; equals symplectic_form."""
    t1._same_space(t2)
    acc = GQ_ZERO
    for h in t1.arrows:
        term = pair_d(t1.map(h.name), t2.map(h.reversed_name), h.base)
        term = term - pair_d(t2.map(h.name), t1.map(h.reversed_name), h.base)
        acc = acc + (GaussQ(h.sign) * term)
    return acc / GaussQ(2)


def generating_tangent(rep: Representation, xi) -> Representation:
    """Tangent vector of the gauge action direction xi at the point rep."""
    q = rep.quiver
    if len(xi) != q.n:
        raise LengthMismatch("one endomorphism per vertex required")
    maps = {}
    for h in rep.arrows:
        b = rep.map(h.name)
        maps[h.name] = compose(xi[h.target], b) - compose(b, xi[h.source])
    return Representation(q, rep.v, maps)


def moment_derivative_check(rep: Representation, delta: Representation, xi) -> bool:
    """Hamiltonian identity <Dmu(B)[delta], xi> = omega(xi*, delta), exactly.

    The derivative is computed by polarization of the quadratic map mu.
    """
    rep._same_space(delta)
    mults = rep.quiver.mults
    mu_b = moment_map(rep)
    mu_bd = moment_map(rep + delta)
    mu_d = moment_map(delta)
    lhs = GQ_ZERO
    for i in range(rep.quiver.n):
        deriv = mu_bd[i] - mu_b[i] - mu_d[i]
        lhs = lhs + pair_d(deriv, xi[i], mults[i])
    rhs = symplectic_form(generating_tangent(rep, xi), delta)
    return lhs == rhs


# -- gauge action ------------------------------------------------------------------

def gauge(rep: Representation, g) -> Representation:
    """Transform by one unit endomorphism per vertex: B_h -> g_t B_h g_s^{-1}."""
    q = rep.quiver
    if len(g) != q.n:
        raise LengthMismatch("one gauge element per vertex required")
    mults = q.mults
    ginv = []
    for i, gi in enumerate(g):
        if gi.src != ModShape(rep.v[i], mults[i]) or not gi.is_end():
            raise ShapeMismatch(f"gauge element at vertex {q.name(i)} has wrong shape")
        try:
            ginv.append(invert_end(gi))
        except NotInvertible:
            raise NotInvertible(
                f"gauge element at vertex {q.name(i)} is not a unit"
            ) from None
    maps = {}
    for h in rep.arrows:
        maps[h.name] = compose(g[h.target], compose(rep.map(h.name), ginv[h.source]))
    return Representation(q, rep.v, maps)


# -- deterministic generators -------------------------------------------------------

def _random_matrix(rng: SplitMix64, nrows, ncols, lo=-3, hi=3) -> Matrix:
    return Matrix(
        [[GaussQ(rng.randint(lo, hi)) for _ in range(ncols)] for _ in range(nrows)],
        ncols=ncols,
    )


def random_unit_end(rng: SplitMix64, shape: ModShape) -> RMap:
    """Deterministic unit of End_{R_d}: unitriangular times nonzero diagonal."""
    n, d = shape.rank, shape.order
    lower = [[GaussQ(1) if i == j else (GaussQ(rng.randint(-2, 2)) if i > j else GQ_ZERO)
              for j in range(n)] for i in range(n)]
    upper = [[GaussQ(1) if i == j else (GaussQ(rng.randint(-2, 2)) if i < j else GQ_ZERO)
              for j in range(n)] for i in range(n)]
    diag_choices = (1, -1, 2, -2, 3)
    diag = [[GaussQ(diag_choices[rng.randint(0, 4)]) if i == j else GQ_ZERO
             for j in range(n)] for i in range(n)]
    const = Matrix(lower, ncols=n) @ Matrix(diag, ncols=n) @ Matrix(upper, ncols=n)
    parts = [const] + [_random_matrix(rng, n, n, -2, 2) for _ in range(d - 1)]
    from .rmatrix import from_slices

    return from_slices(parts, d)


def random_trunc(rng: SplitMix64, d, unit=False) -> TruncScalar:
    c0 = rng.randint(-3, 3)
    if unit:
        while c0 == 0:
            c0 = rng.randint(-3, 3)
    return TruncScalar(d, [c0] + [rng.randint(-3, 3) for _ in range(d - 1)])


def random_rep(q: QuiverMult, v, seed) -> Representation:
    """Deterministic random point, drawn in the per-arrow free parametrization."""
    v = tuple(v)
    if any(x < 0 for x in v):
        raise NegativeDimension("negative entry in dimension vector")
    rng = SplitMix64(seed)
    maps = {}
    for h in double(q):
        src, dst = _arrow_shapes(q, h, v)
        maps[h.name] = random_linear_map(rng, src, dst, h.base)
    return Representation(q, v, maps)


def random_gauge(q: QuiverMult, v, seed):
    rng = SplitMix64(seed)
    mults = q.mults
    return tuple(
        random_unit_end(rng, ModShape(v[i], mults[i])) for i in range(q.n)
    )


def random_params(q: QuiverMult, seed, units=()) -> tuple[TruncScalar, ...]:
    """Random parameter tuple; vertices listed in ``units`` get unit values."""
    rng = SplitMix64(seed)
    unit_ids = {q.index(u) for u in units}
    return tuple(
        random_trunc(rng, m, unit=(i in unit_ids)) for i, m in enumerate(q.mults)
    )
