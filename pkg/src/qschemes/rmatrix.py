"""Homomorphisms between free modules V (x) R_d.

An ``RMap`` stores the matrix of an R_c-linear map V (x) R_src.order ->
W (x) R_dst.order over the base field, in the flat basis {v_j eps^k} ordered
vertex-major then eps-power ascending: basis index (j, k) sits at column
j*order + k.  The base order c must divide both module orders, and linearity
over R_c amounts to the intertwining identity

    flat . N_src^(src.order/c) == N_dst^(dst.order/c) . flat

with N the multiplication-by-eps matrix of each shape.  Constructors check
this eagerly, so a constructed RMap is always a genuine homomorphism.

An endomorphism with base == order ("REnd") may be viewed as a matrix
polynomial sum_k xi_k eps^k with xi_k plain matrices; ``slices``/
``from_slices`` convert between the two presentations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    MismatchedOrder,
    NotDivisible,
    NotEndomorphism,
    NotInvertible,
    NotLinearOverBase,
    ShapeMismatch,
)
from .linalg import Matrix, inverse
from .scalars import GQ_ZERO, GaussQ, TruncScalar


@dataclass(frozen=True)
class ModShape:
    rank: int
    order: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if self.order < 1:
            raise ValueError("order must be positive")

    @property
    def dim(self) -> int:
        """Base-field dimension rank * order."""
        return self.rank * self.order

    def flat_index(self, j, k) -> int:
        return j * self.order + k


def nilpotent(shape: ModShape) -> Matrix:
    """Multiplication by eps on V (x) R_d in the flat basis."""
    n = shape.dim
    rows = [[GQ_ZERO] * n for _ in range(n)]
    for j in range(shape.rank):
        for k in range(shape.order - 1):
            rows[shape.flat_index(j, k + 1)][shape.flat_index(j, k)] = GaussQ(1)
    return Matrix(rows, ncols=n)


def eps_shift_left(flat: Matrix, dst: ModShape, steps: int) -> Matrix:
    """N_dst^steps . flat, using the shift structure instead of a product."""
    if steps == 0:
        return flat
    zero_row = (GQ_ZERO,) * flat.ncols
    rows = []
    for j in range(dst.rank):
        for k in range(dst.order):
            rows.append(
                flat.rows[dst.flat_index(j, k - steps)] if k >= steps else zero_row
            )
    return Matrix(rows, ncols=flat.ncols)


def eps_shift_right(flat: Matrix, src: ModShape, steps: int) -> Matrix:
    """flat . N_src^steps: column (j, k) becomes column (j, k + steps) or zero."""
    if steps == 0:
        return flat
    rows = []
    for row in flat.rows:
        new_row = []
        for j in range(src.rank):
            for k in range(src.order):
                new_row.append(
                    row[src.flat_index(j, k + steps)]
                    if k + steps < src.order
                    else GQ_ZERO
                )
        rows.append(new_row)
    return Matrix(rows, ncols=flat.ncols)


class RMap:
    __slots__ = ("src", "dst", "base", "flat")

    def __init__(self, src: ModShape, dst: ModShape, base: int, flat: Matrix):
        if src.order % base != 0 or dst.order % base != 0:
            raise NotDivisible(
                f"base {base} must divide orders {src.order}, {dst.order}"
            )
        if flat.nrows != dst.dim or flat.ncols != src.dim:
            raise ShapeMismatch(
                f"flat is {flat.nrows}x{flat.ncols}, expected {dst.dim}x{src.dim}"
            )
        if eps_shift_right(flat, src, src.order // base) != eps_shift_left(
            flat, dst, dst.order // base
        ):
            raise NotLinearOverBase(
                f"matrix does not commute with eps^({src.order // base})"
            )
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "flat", flat)

    def __setattr__(self, name, value):
        raise AttributeError("RMap is immutable")

    # basics -------------------------------------------------------------------

    def is_end(self) -> bool:
        return self.src == self.dst and self.base == self.src.order

    def __eq__(self, other):
        if not isinstance(other, RMap):
            return NotImplemented
        return (
            self.src == other.src
            and self.dst == other.dst
            and self.flat == other.flat
        )

    def __hash__(self):
        return hash((self.src, self.dst, self.flat))

    def is_zero(self) -> bool:
        return self.flat.is_zero()

    def __add__(self, other):
        if self.src != other.src or self.dst != other.dst:
            raise ShapeMismatch("sum of maps with different shapes")
        return RMap(
            self.src, self.dst, math.gcd(self.base, other.base),
            self.flat + other.flat,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RMap(self.src, self.dst, self.base, -self.flat)

    def scale(self, c: GaussQ) -> "RMap":
        return RMap(self.src, self.dst, self.base, self.flat.scale(c))

    def __repr__(self):
        return (
            f"RMap({self.src.rank}x{self.src.order} -> "
            f"{self.dst.rank}x{self.dst.order} over R_{self.base})"
        )


# REnd is an RMap with src == dst and base == src.order.
REnd = RMap


def zero_map(src: ModShape, dst: ModShape, base=None) -> RMap:
    if base is None:
        base = math.gcd(src.order, dst.order)
    return RMap(src, dst, base, Matrix.zero(dst.dim, src.dim))


def identity_end(shape: ModShape) -> REnd:
    return RMap(shape, shape, shape.order, Matrix.identity(shape.dim))


def eps_end(shape: ModShape, power=1) -> REnd:
    return RMap(shape, shape, shape.order, nilpotent(shape).power(power))


def scalar_end(c: TruncScalar, rank: int) -> REnd:
    """The endomorphism acting as the scalar c on a rank-n module."""
    shape = ModShape(rank, c.d)
    rows = [[GQ_ZERO] * shape.dim for _ in range(shape.dim)]
    for j in range(rank):
        for m in range(c.d):
            for k in range(c.d - m):
                rows[shape.flat_index(j, m + k)][shape.flat_index(j, m)] = c.coeffs[k]
    return RMap(shape, shape, c.d, Matrix(rows, ncols=shape.dim))


def compose(f: RMap, g: RMap) -> RMap:
    """f after g.  The result is linear over the common base gcd(f.base, g.base)."""
    if g.dst != f.src:
        raise ShapeMismatch(f"cannot compose: inner shapes {g.dst} vs {f.src}")
    return RMap(g.src, f.dst, math.gcd(f.base, g.base), f.flat @ g.flat)


def slices(f: REnd) -> list[Matrix]:
    """Matrix-polynomial coefficients xi_k of an endomorphism."""
    if not f.is_end():
        raise NotEndomorphism("slices need src == dst and base == order")
    n, d = f.src.rank, f.src.order
    out = []
    for k in range(d):
        out.append(
            Matrix(
                [
                    [f.flat[f.src.flat_index(i, k), f.src.flat_index(j, 0)] for j in range(n)]
                    for i in range(n)
                ],
                ncols=n,
            )
        )
    return out


def from_slices(parts: list[Matrix], order: int) -> REnd:
    if len(parts) != order:
        raise MismatchedOrder(f"need {order} slices, got {len(parts)}")
    rank = parts[0].nrows
    shape = ModShape(rank, order)
    rows = [[GQ_ZERO] * shape.dim for _ in range(shape.dim)]
    for k, xi in enumerate(parts):
        if xi.nrows != rank or xi.ncols != rank:
            raise ShapeMismatch("slice is not square of the right rank")
        for i in range(rank):
            for j in range(rank):
                v = xi[i, j]
                if v:
                    for m in range(order - k):
                        rows[shape.flat_index(i, m + k)][shape.flat_index(j, m)] = v
    return RMap(shape, shape, order, Matrix(rows, ncols=shape.dim))


def trace_base(f: RMap, c: int) -> TruncScalar:
    """Trace over R_c of a square map that is (at least) R_c-linear."""
    if f.src != f.dst:
        raise NotEndomorphism("trace of a non-square map")
    if f.base % c != 0:
        raise NotLinearOverBase(f"map is not R_{c}-linear")
    n, d = f.src.rank, f.src.order
    step = d // c
    coeffs = [GQ_ZERO] * c
    for m in range(c):
        acc = GQ_ZERO
        for j in range(n):
            for l in range(step):
                acc = acc + f.flat[f.src.flat_index(j, l + m * step), f.src.flat_index(j, l)]
        coeffs[m] = acc
    return TruncScalar(c, coeffs)


def trace_r(f: REnd) -> TruncScalar:
    """R_d-valued trace of an R_d-endomorphism."""
    if not f.is_end():
        raise NotEndomorphism("trace_r needs src == dst and base == order")
    return trace_base(f, f.src.order)


def pair_d(x: RMap, y: RMap, d=None) -> GaussQ:
    """Residue pairing <x,y>_d: eps^(d-1) coefficient of the R_d-trace of x.y."""
    xy = compose(x, y)
    if d is None:
        d = xy.base
    if xy.base % d != 0:
        raise NotLinearOverBase(f"composite is not R_{d}-linear")
    return trace_base(xy, d).coeffs[d - 1]


def pr_cd(z: RMap) -> REnd:
    """Average an R_c-linear endomorphism of V (x) R_d into an R_d-linear one.

    pr(Z) = sum_{k<d/c} N^k Z N^(d/c-1-k); it is adjoint to the inclusion of
    the R_d-endomorphisms into the R_c-endomorphisms: <pr(Z), Z'>_d = <Z, Z'>_c
    for every R_d-linear Z'.
    """
    if z.src != z.dst:
        raise ShapeMismatch("pr_cd needs a square map")
    d = z.src.order
    q = d // z.base
    acc = Matrix.zero(z.src.dim, z.src.dim)
    for k in range(q):
        term = eps_shift_left(eps_shift_right(z.flat, z.src, q - 1 - k), z.dst, k)
        acc = acc + term
    return RMap(z.src, z.dst, d, acc)


def extend_scalars(x: RMap) -> RMap:
    """Induce an R_d-linear map on W (x) R_d from x: W (x) R_c -> V (x) R_d.

    Requires x fully R_c-linear on its source (base == src.order).  The
    induced source identifies w eps_c^m eps_d^k with w eps_d^(m*d/c + k);
    restricting the result to W (x) 1 recovers x.
    """
    c, d = x.src.order, x.dst.order
    if x.base != c:
        raise NotLinearOverBase("source must be fully linear over its own order")
    if d % c != 0:
        raise NotDivisible(f"{c} does not divide {d}")
    if c == d:
        return x
    w = x.src.rank
    new_src = ModShape(w, d)
    nd = nilpotent(x.dst)
    cols = {}
    for j in range(w):
        base_col = Matrix([[v] for v in x.flat.column(x.src.flat_index(j, 0))], ncols=1)
        cur = base_col
        for t in range(d):
            cols[new_src.flat_index(j, t)] = cur
            if t < d - 1:
                cur = nd @ cur
    rows = [
        [cols[jj][ii, 0] for jj in range(new_src.dim)] for ii in range(x.dst.dim)
    ]
    return RMap(new_src, x.dst, d, Matrix(rows, ncols=new_src.dim))


def extend_scalars_rev(y: RMap) -> RMap:
    """Induce an R_d-linear map into W (x) R_d from y: V (x) R_d -> W (x) R_c.

    The value on v is sum_{k<d/c} y(eps_d^(d/c-1-k) v) (x) eps_d^k; composing
    with the projection onto the top eps_d-component recovers y.
    """
    c, d = y.dst.order, y.src.order
    if y.base != c:
        raise NotLinearOverBase("target must be fully linear over its own order")
    if d % c != 0:
        raise NotDivisible(f"{c} does not divide {d}")
    if c == d:
        return y
    w = y.dst.rank
    q = d // c
    new_dst = ModShape(w, d)
    rows = [[GQ_ZERO] * y.src.dim for _ in range(new_dst.dim)]
    for j in range(y.src.rank):
        for t in range(d):
            col = y.src.flat_index(j, t)
            for k in range(q):
                s = t + q - 1 - k
                if s >= d:
                    continue
                ycol = y.src.flat_index(j, s)
                for i in range(w):
                    for m in range(c):
                        v = y.flat[y.dst.flat_index(i, m), ycol]
                        if v:
                            row = new_dst.flat_index(i, m * q + k)
                            rows[row][col] = rows[row][col] + v
    return RMap(y.src, new_dst, d, Matrix(rows, ncols=y.src.dim))


def restrict_scalars(f: RMap, kind: str, base: int) -> RMap:
    """Undo extend_scalars ("forward") or extend_scalars_rev ("reverse").

    ``base`` is the order c of the un-induced side; the induced shape does not
    remember it.
    """
    c = base
    if kind == "forward":
        d = f.src.order
        if f.base != f.src.order:
            raise NotLinearOverBase("map must be fully linear for restriction")
        if d % c != 0:
            raise NotDivisible(f"{c} does not divide {d}")
        if c == d:
            return f
        q = d // c
        w = f.src.rank
        new_src = ModShape(w, c)
        rows = [
            [f.flat[i, f.src.flat_index(j, m * q)] for j in range(w) for m in range(c)]
            for i in range(f.dst.dim)
        ]
        return RMap(new_src, f.dst, c, Matrix(rows, ncols=new_src.dim))
    if kind == "reverse":
        d = f.dst.order
        if f.base != f.dst.order:
            raise NotLinearOverBase("map must be fully linear for restriction")
        if d % c != 0:
            raise NotDivisible(f"{c} does not divide {d}")
        if c == d:
            return f
        q = d // c
        w = f.dst.rank
        new_dst = ModShape(w, c)
        rows = [
            [
                f.flat[f.dst.flat_index(i, m * q + q - 1), col]
                for col in range(f.src.dim)
            ]
            for i in range(w)
            for m in range(c)
        ]
        return RMap(f.src, new_dst, c, Matrix(rows, ncols=f.src.dim))
    raise ValueError(f"unknown restriction kind {kind!r}")


def scale_end(f: RMap, t: TruncScalar) -> RMap:
    """Multiply a square map on V (x) R_d by the scalar t of R_d."""
    if f.src != f.dst:
        raise ShapeMismatch("scalar multiple of a non-square map")
    if t.d != f.src.order:
        raise MismatchedOrder(f"scalar order {t.d} vs module order {f.src.order}")
    return compose(scalar_end(t, f.src.rank), f)


def invert_end(g: REnd) -> REnd:
    """Inverse of a unit endomorphism (invertible constant slice)."""
    if not g.is_end():
        raise NotEndomorphism("inverse needs a full endomorphism")
    try:
        inv = inverse(g.flat)
    except NotInvertible:
        raise NotInvertible("constant slice is singular") from None
    return RMap(g.src, g.dst, g.base, inv)
