"""Deterministic JSON forms for the domain values.

Scalars are strings ("a/b" or "a/b+c/di"), truncated scalars are coefficient
lists low-to-high, matrices are row-major string grids in the canonical flat
basis order.  ``dumps`` fixes key order and spacing, so serialization is
byte-identical across runs.
"""

from __future__ import annotations

import json

from .linalg import Matrix
from .orbit import LegPoint, OrbitSpec
from .quiver import QuiverMult
from .repn import Representation
from .rmatrix import ModShape, RMap
from .scalars import GaussQ, TruncScalar
from .weyl import check_params


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# -- scalars -----------------------------------------------------------------

def trunc_to_obj(t: TruncScalar) -> list:
    return [str(c) for c in t.coeffs]


def trunc_from_obj(obj, d=None) -> TruncScalar:
    coeffs = [GaussQ.parse(c) for c in obj]
    if d is None:
        d = len(coeffs)
    return TruncScalar(d, coeffs)


# -- maps ---------------------------------------------------------------------

def rmap_to_obj(f: RMap) -> dict:
    return {
        "src": {"rank": f.src.rank, "order": f.src.order},
        "dst": {"rank": f.dst.rank, "order": f.dst.order},
        "base": f.base,
        "flat": [[str(x) for x in row] for row in f.flat.rows],
    }


def rmap_from_obj(obj) -> RMap:
    src = ModShape(obj["src"]["rank"], obj["src"]["order"])
    dst = ModShape(obj["dst"]["rank"], obj["dst"]["order"])
    rows = [[GaussQ.parse(x) for x in row] for row in obj["flat"]]
    return RMap(src, dst, obj["base"], Matrix(rows, ncols=src.dim))


# -- parameters ------------------------------------------------------------------

def params_to_obj(q: QuiverMult, lam) -> dict:
    lam = check_params(q, lam)
    return {q.name(i): trunc_to_obj(x) for i, x in enumerate(lam)}


def params_from_obj(q: QuiverMult, obj) -> tuple:
    out = []
    for i, v in enumerate(q.vertices):
        if v.name not in obj:
            raise KeyError(f"missing parameter for vertex {v.name}")
        out.append(trunc_from_obj(obj[v.name], v.mult))
    return check_params(q, out)


# -- representations ----------------------------------------------------------------

def rep_to_obj(rep: Representation) -> dict:
    return {
        "v": {rep.quiver.name(i): x for i, x in enumerate(rep.v)},
        "maps": {name: rmap_to_obj(f) for name, f in rep.maps.items()},
    }


def rep_from_obj(q: QuiverMult, obj) -> Representation:
    v = tuple(obj["v"][q.name(i)] for i in range(q.n))
    maps = {name: rmap_from_obj(o) for name, o in obj["maps"].items()}
    return Representation(q, v, maps)


# -- orbit data -----------------------------------------------------------------------

def orbit_spec_to_obj(spec: OrbitSpec) -> dict:
    return {
        "d": spec.d,
        "blocks": [
            {"dim": w, "theta": trunc_to_obj(t)} for w, t in spec.blocks
        ],
    }


def orbit_spec_from_obj(obj) -> OrbitSpec:
    d = obj["d"]
    blocks = tuple(
        (b["dim"], trunc_from_obj(b["theta"], d)) for b in obj["blocks"]
    )
    return OrbitSpec(d, blocks)


def leg_point_to_obj(p: LegPoint) -> dict:
    return {
        "d": p.d,
        "dims": list(p.dims),
        "down": [rmap_to_obj(f) for f in p.down],
        "up": [rmap_to_obj(f) for f in p.up],
        "a": rmap_to_obj(p.a),
        "b": rmap_to_obj(p.b),
    }


def rend_dual_view(f: RMap) -> dict:
    """Formatting view of an endomorphism as a pole part in negative eps-powers.

    The eps^k coefficient is displayed at exponent k - d.  This is a
    presentation only; nothing consumes it as input.
    """
    from .rmatrix import slices

    d = f.src.order
    return {
        str(k - d): [[str(x) for x in row] for row in xi.rows]
        for k, xi in enumerate(slices(f))
    }
