"""Reflection functor at a vertex with a unit parameter.

A representation splits at a vertex i into the maps into i, the maps out of
i, and the untouched remainder.  Stacking the per-arrow free parameter blocks
(signs folded into the incoming side) gives a pair

    into : V~ -> V_i (x) R_{d_i},     outof : V_i (x) R_{d_i} -> V~

over the base field, where V~ concatenates one slice block per incoming
arrow of the double.  When the moment value at i equals -lam_i Id with lam_i
a unit, the composite A = -outof^R . into^R lies in the orbit of
diag(lam_i .. lam_i, 0 .. 0), and the functor replaces it by the shifted
endomorphism A - lam_i Id refactored through a fresh vertex module of rank
dim V~ - v_i.  The output is one specific gauge representative, pinned by the
deterministic basis rule of orbit.free_basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .errors import EmptyLevelSet, NotAUnit, NotInLevelSet
from .linalg import Matrix, hstack, vstack
from .orbit import OrbitSpec, _inclusion, _scaled_projection, coordinates, free_basis
from .quiver import QuiverMult, double
from .repn import (
    Representation,
    arrow_extend,
    arrow_extend_rev,
    arrow_restrict,
    arrow_restrict_rev,
    moment_component,
    random_linear_map,
    random_unit_end,
)
from .rmatrix import (
    ModShape,
    RMap,
    compose,
    extend_scalars,
    extend_scalars_rev,
    invert_end,
    restrict_scalars,
    scalar_end,
    scale_end,
)
from .rng import SplitMix64
from .scalars import GQ_ZERO, TruncScalar, trunc_inv
from .weyl import check_params, reflect_dim


@dataclass(frozen=True)
class SplitAtVertex:
    vertex: int
    blocks: tuple        # (incoming double-arrow name, slice dimension) pairs
    into: RMap           # stacked slice blocks -> V_i (x) R_{d_i}, signs folded in
    outof: RMap          # V_i (x) R_{d_i} -> stacked slice blocks
    rest: object         # mapping from untouched arrow names to their maps

    @property
    def tilde_dim(self) -> int:
        return sum(dim for _, dim in self.blocks)


def incoming_arrows(q: QuiverMult, i):
    return tuple(h for h in double(q) if h.target == q.index(i))


def tilde_dimension(q: QuiverMult, i, v) -> int:
    """dim V~ at vertex i: sum of f_in * v_src over incoming double arrows."""
    return sum(h.f_in * v[h.source] for h in incoming_arrows(q, i))


def split(rep: Representation, i) -> SplitAtVertex:
    q = rep.quiver
    i = q.index(i)
    d_i = q.mults[i]
    shape_i = ModShape(rep.v[i], d_i)
    blocks, in_flats, out_flats = [], [], []
    for h in incoming_arrows(q, i):
        dim = h.f_in * rep.v[h.source]
        blocks.append((h.name, dim))
        x = arrow_restrict(q, h, rep.v, rep.map(h.name))
        if h.sign < 0:
            x = -x
        in_flats.append(x.flat)
        rev = next(g for g in rep.arrows if g.name == h.reversed_name)
        y = arrow_restrict_rev(q, rev, rep.v, rep.map(rev.name))
        out_flats.append(y.flat)
    tilde = sum(dim for _, dim in blocks)
    if blocks:
        into = RMap(ModShape(tilde, 1), shape_i, 1, hstack(in_flats))
        outof = RMap(shape_i, ModShape(tilde, 1), 1, vstack(out_flats))
    else:
        into = RMap(ModShape(0, 1), shape_i, 1, Matrix.zero(shape_i.dim, 0))
        outof = RMap(shape_i, ModShape(0, 1), 1, Matrix.zero(0, shape_i.dim))
    rest = {
        h.name: rep.map(h.name)
        for h in rep.arrows
        if h.source != i and h.target != i
    }
    return SplitAtVertex(i, tuple(blocks), into, outof, MappingProxyType(rest))


def unsplit(q: QuiverMult, v, s: SplitAtVertex) -> Representation:
    """Inverse of split; v may differ from the original at the split vertex."""
    maps = dict(s.rest)
    col = 0
    row = 0
    incoming = {h.name: h for h in incoming_arrows(q, s.vertex)}
    for name, dim in s.blocks:
        h = incoming[name]
        xb = RMap(
            ModShape(dim, 1), s.into.dst, 1,
            s.into.flat.select_columns(range(col, col + dim)),
        )
        if h.sign < 0:
            xb = -xb
        maps[h.name] = arrow_extend(q, h, v, xb)
        yb = RMap(
            s.outof.src, ModShape(dim, 1), 1,
            Matrix([s.outof.flat.rows[r] for r in range(row, row + dim)],
                   ncols=s.outof.flat.ncols),
        )
        rev = next(g for g in double(q) if g.name == h.reversed_name)
        maps[rev.name] = arrow_extend_rev(q, rev, v, yb)
        col += dim
        row += dim
    return Representation(q, v, maps)


def phi(rep: Representation, i):
    """First factorization component -outof^R . into^R, plus the untouched maps."""
    s = split(rep, i)
    a = -compose(extend_scalars_rev(s.outof), extend_scalars(s.into))
    return a, s


def random_level_point(q: QuiverMult, lam, v, i, seed) -> Representation:
    """Deterministic point with moment value exactly -lam_i Id at vertex i.

    Built from the canonical rank-one-junction point of the corresponding
    two-block orbit, moved by random unit endomorphisms on both sides; the
    remaining arrows are drawn freely.
    """
    q_i = q.index(i)
    lam = check_params(q, lam)
    v = tuple(v)
    if not lam[q_i].is_unit():
        raise NotAUnit(f"parameter at vertex {q.name(q_i)} is not a unit")
    d_i = q.mults[q_i]
    tilde = tilde_dimension(q, q_i, v)
    comp = tilde - v[q_i]
    if comp < 0:
        raise EmptyLevelSet(
            f"reflected dimension at {q.name(q_i)} would be {comp}"
        )
    rng = SplitMix64(seed)
    spec = OrbitSpec(
        d_i, ((comp, TruncScalar(d_i)), (v[q_i], lam[q_i]))
    )
    b10 = _scaled_projection(spec, 0)
    b01 = _inclusion(spec, 0)
    g = random_unit_end(rng, ModShape(tilde, d_i))
    h_gauge = random_unit_end(rng, ModShape(v[q_i], d_i))
    b10 = compose(h_gauge, compose(b10, invert_end(g)))
    b01 = compose(g, compose(b01, invert_end(h_gauge)))
    into = restrict_scalars(b10, "forward", 1)
    outof = restrict_scalars(b01, "reverse", 1)
    blocks = tuple(
        (h.name, h.f_in * v[h.source]) for h in incoming_arrows(q, q_i)
    )
    rest = {}
    for h in double(q):
        if h.source == q_i or h.target == q_i:
            continue
        src = ModShape(v[h.source], q.mults[h.source])
        dst = ModShape(v[h.target], q.mults[h.target])
        rest[h.name] = random_linear_map(rng, src, dst, h.base)
    s = SplitAtVertex(q_i, blocks, into, outof, MappingProxyType(rest))
    return unsplit(q, v, s)


def reflection_functor(rep: Representation, i, lam) -> Representation:
    """Move a vertex-i level-set point to one for the reflected data.

    Requires lam_i a unit and moment value -lam_i Id at i.  The output lives
    on the reflected dimension vector; its moment value at i is lam_i Id, and
    away from i the moment values change by the scalar correction matching
    the parameter reflection.
    """
    q = rep.quiver
    q_i = q.index(i)
    lam = check_params(q, lam)
    lam_i = lam[q_i]
    if not lam_i.is_unit():
        raise NotAUnit(f"parameter at vertex {q.name(q_i)} is not a unit")
    tilde = tilde_dimension(q, q_i, rep.v)
    new_rank = tilde - rep.v[q_i]
    if new_rank < 0:
        raise EmptyLevelSet(
            f"reflected dimension at {q.name(q_i)} would be {new_rank}"
        )
    mu_i = moment_component(rep, q_i)
    if mu_i != scalar_end(-lam_i, rep.v[q_i]):
        raise NotInLevelSet(
            f"moment value at {q.name(q_i)} is not -lambda Id"
        )
    a, s = phi(rep, q_i)
    shifted = a - scalar_end(lam_i, tilde)
    idem = scale_end(shifted, -trunc_inv(lam_i))
    if compose(idem, idem) != idem:
        raise NotInLevelSet("shifted component is not a scaled idempotent")
    basis = free_basis(idem)
    if basis.src.rank != new_rank:
        raise NotInLevelSet("idempotent rank differs from reflected dimension")
    coords = coordinates(basis, idem)
    new_into_full = compose(scalar_end(lam_i, new_rank), coords)
    new_into = restrict_scalars(new_into_full, "forward", 1)
    new_outof = restrict_scalars(basis, "reverse", 1)
    new_v = reflect_dim(q, q_i, rep.v)
    s2 = SplitAtVertex(q_i, s.blocks, new_into, new_outof, s.rest)
    return unsplit(q, new_v, s2)


def braid_probe(rep: Representation, lam, i, j) -> dict:
    """Experimental comparison of the two alternating functor words at i, j.

    Applies the functor m times alternating starting from each of the two
    vertices (m the Coxeter order of the pair) and reports gauge-invariant
    data of both endpoints: traces of the products along each arrow pair and
    of powers of the vertex factorization component.  Whether these agree is
    a conjecture, so callers get a report, never an assertion.

    The input must satisfy the moment condition at both vertices; every
    intermediate parameter must stay a unit at its active vertex, otherwise
    the report marks the probe as not applicable.
    """
    from .weyl import coxeter_order, reflect_param as _reflect_param

    q = rep.quiver
    i, j = q.index(i), q.index(j)
    m = coxeter_order(q, i, j)
    if m == float("inf"):
        return {"applicable": False, "reason": "infinite order pair"}

    def run_word(start):
        cur_rep, cur_lam = rep, check_params(q, lam)
        word = [start if k % 2 == 0 else (j if start == i else i) for k in range(m)]
        for vertex in word:
            if not cur_lam[vertex].is_unit():
                return None, word
            cur_rep = reflection_functor(cur_rep, vertex, cur_lam)
            cur_lam = _reflect_param(q, vertex, cur_lam)
        return cur_rep, word

    out1, word1 = run_word(i)
    out2, word2 = run_word(j)
    if out1 is None or out2 is None:
        return {"applicable": False, "reason": "parameter became a non-unit"}

    def invariants(r):
        from .rmatrix import trace_r, trace_base

        data = {}
        for h in r.arrows:
            if h.sign < 0:
                continue
            prod = compose(r.map(h.reversed_name), r.map(h.name))
            data[f"loop({h.name})"] = str(trace_base(prod, h.base))
        for vertex in (i, j):
            a, _ = phi(r, vertex)
            power = a
            for p in range(1, a.src.rank * a.src.order + 1):
                data[f"phi({q.name(vertex)})^{p}"] = str(trace_r(power))
                if p < a.src.rank * a.src.order:
                    power = compose(power, a)
        return data

    inv1, inv2 = invariants(out1), invariants(out2)
    return {
        "applicable": True,
        "words": [[q.name(x) for x in word1], [q.name(x) for x in word2]],
        "endpoint_dims": [list(out1.v), list(out2.v)],
        "invariants": [inv1, inv2],
        "agree": inv1 == inv2 and out1.v == out2.v,
    }


def split_gauge(q: QuiverMult, v, i, g) -> RMap:
    """Induced unit on the stacked slice module from a per-vertex gauge tuple.

    Block h acts by the source gauge element rewritten over the arrow's common
    subring and induced up to order d_i.
    """
    q_i = q.index(i)
    d_i = q.mults[q_i]
    arrows = incoming_arrows(q, q_i)
    dims = [h.f_in * v[h.source] for h in arrows]
    tilde = sum(dims)
    shape = ModShape(tilde, d_i)
    rows = [[GQ_ZERO] * shape.dim for _ in range(shape.dim)]
    offset = 0
    for h, dim in zip(arrows, dims):
        gs = g[h.source]
        ds = q.mults[h.source]
        src_shape = ModShape(v[h.source], ds)
        # coefficients of g_s as a matrix polynomial over the arrow's base ring,
        # in the slice basis {v_j eps^l : l < f_in}
        for j in range(v[h.source]):
            for l in range(h.f_in):
                col_v = gs.flat.column(src_shape.flat_index(j, l))
                for jj in range(v[h.source]):
                    for ll in range(h.f_in):
                        for m in range(h.base):
                            val = col_v[src_shape.flat_index(jj, ll + h.f_in * m)]
                            if not val:
                                continue
                            src_block = offset + j * h.f_in + l
                            dst_block = offset + jj * h.f_in + ll
                            for k in range(d_i):
                                kk = k + h.f_out * m
                                if kk < d_i:
                                    rows[shape.flat_index(dst_block, kk)][
                                        shape.flat_index(src_block, k)
                                    ] = val
        offset += dim
    return RMap(shape, shape, d_i, Matrix(rows, ncols=shape.dim))
