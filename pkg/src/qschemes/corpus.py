"""Parametric builders for the shipped corpus quivers."""

from __future__ import annotations

from .quiver import QuiverMult


def example_chain(d: int) -> QuiverMult:
    """Three-vertex chain j - i - k with multiplicities (d, 1, 1) on (j, i, k)."""
    return QuiverMult.build(
        [("i", 1), ("j", d), ("k", 1)],
        [("a", "j", "i"), ("b", "i", "k")],
    )


def example_double(d: int) -> QuiverMult:
    """Three-vertex chain with multiplicities (d, d, 1) on (j, i, k)."""
    return QuiverMult.build(
        [("i", d), ("j", d), ("k", 1)],
        [("a", "j", "i"), ("b", "i", "k")],
    )


def example_star(n: int, d: int) -> QuiverMult:
    """Length-one leg of multiplicity d on the head of an (n-2)-vertex tail.

    Vertices: leg (mult d), base (mult 1), then c1..c_{n-2} of mult 1.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    vertices = [("leg", d), ("base", 1)] + [(f"c{i}", 1) for i in range(1, n - 1)]
    arrows = [("t0", "base", "leg")]
    prev = "base"
    for i in range(1, n - 1):
        arrows.append((f"t{i}", prev, f"c{i}"))
        prev = f"c{i}"
    return QuiverMult.build(vertices, arrows)


def example_two_legs(n: int, d: int) -> QuiverMult:
    """Chain of n vertices with multiplicities (d, 1, ..., 1, d)."""
    if n < 4:
        raise ValueError("need at least four vertices")
    vertices = [("legL", d), ("baseL", 1)]
    vertices += [(f"m{i}", 1) for i in range(1, n - 3)]
    vertices += [("baseR", 1), ("legR", d)]
    names = [v[0] for v in vertices]
    arrows = [
        (f"t{i}", names[i], names[i + 1]) for i in range(len(names) - 1)
    ]
    return QuiverMult.build(vertices, arrows)


def extra_a3() -> QuiverMult:
    """Multiplicity-free three-vertex chain."""
    return QuiverMult.build(
        [("p", 1), ("q", 1), ("r", 1)],
        [("a", "p", "q"), ("b", "q", "r")],
    )


def extra_pair_d2() -> QuiverMult:
    """Two vertices of multiplicities (1, 2) joined by one arrow."""
    return QuiverMult.build([("p", 1), ("q", 2)], [("a", "p", "q")])


def extra_pair_d3() -> QuiverMult:
    """Two vertices of multiplicities (1, 3) joined by one arrow."""
    return QuiverMult.build([("p", 1), ("q", 3)], [("a", "p", "q")])


def extra_kronecker() -> QuiverMult:
    """Two multiplicity-free vertices joined by two parallel arrows."""
    return QuiverMult.build(
        [("p", 1), ("q", 1)], [("a", "p", "q"), ("b", "p", "q")]
    )


def extra_nested() -> QuiverMult:
    """Multiplicities (2, 4, 3): one shared subring proper on both sides."""
    return QuiverMult.build(
        [("p", 2), ("q", 4), ("r", 3)],
        [("a", "p", "q"), ("b", "q", "r")],
    )


def extra_coprime() -> QuiverMult:
    """Multiplicities (2, 3): trivial shared subring, both slices proper."""
    return QuiverMult.build([("p", 2), ("q", 3)], [("a", "p", "q")])


def extra_single() -> QuiverMult:
    return QuiverMult.build([("p", 2)])


def corpus_quivers() -> dict[str, QuiverMult]:
    """The shipped corpus, keyed by file stem."""
    out = {}
    for d in (2, 3):
        out[f"chain_d{d}"] = example_chain(d)
        out[f"double_d{d}"] = example_double(d)
        out[f"star_n3_d{d}"] = example_star(3, d)
        out[f"twolegs_n4_d{d}"] = example_two_legs(4, d)
    out["a3"] = extra_a3()
    out["pair_d2"] = extra_pair_d2()
    out["pair_d3"] = extra_pair_d3()
    out["kronecker"] = extra_kronecker()
    out["nested"] = extra_nested()
    out["coprime"] = extra_coprime()
    out["single"] = extra_single()
    return out
