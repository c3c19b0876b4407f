"""Representability oracle vs an independent exhaustive enumerator."""

import pytest

from mdl import catalog, gf, rep
from mdl.bits import bits, submasks
from mdl.core import LinearMatroid, UniformMatroid
from mdl.errors import CapExceeded


def brute_representable(m, q):
    """Independent oracle: enumerate assignments of projective points.

    Fixes a greedy basis to identity columns (any representation can be
    changed to this form), then tries every point for every remaining
    element, checking rank agreement on all subsets of the assigned
    prefix at each step.  No flats, no constraint propagation.
    """
    f = gf.field(q)
    simp, _ = m.simplify()
    els = sorted(simp.elements())
    r = m.rank()
    if not els or r <= 1:
        return True
    points = gf.normalized_vectors(f, r)
    basis = simp.basis_of(simp.ground)
    order = sorted(bits(basis)) + [e for e in els if not (basis >> e) & 1]
    unit = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]

    def ranks_agree(assign):
        keys = list(assign)
        kmask = 0
        for e in keys:
            kmask |= 1 << e
        for sub in submasks(kmask):
            vecs = [assign[e] for e in bits(sub)]
            if gf.rank_of_vectors(f, vecs) != simp.rank(sub):
                return False
        return True

    def go(idx, assign):
        if idx == len(order):
            return True
        e = order[idx]
        pool = [unit[idx]] if idx < r else points
        for v in pool:
            assign[e] = v
            if ranks_agree(assign) and go(idx + 1, assign):
                return True
            del assign[e]
        return False

    return go(0, {})


TINY = {
    "u23": UniformMatroid(2, 3),
    "u24": UniformMatroid(2, 4),
    "u25": UniformMatroid(2, 5),
    "fano": catalog.gen("pg", (3, 2)),
}

# classical verdicts, frozen: U_{2,n} needs a field with >= n line points;
# the Fano plane is representable exactly in characteristic 2
EXPECTED = {
    ("u23", 2): True, ("u23", 3): True, ("u23", 4): True, ("u23", 5): True,
    ("u24", 2): False, ("u24", 3): True, ("u24", 4): True, ("u24", 5): True,
    ("u25", 2): False, ("u25", 3): False, ("u25", 4): True, ("u25", 5): True,
    ("fano", 2): True, ("fano", 3): False, ("fano", 4): True, ("fano", 5): False,
}


@pytest.mark.parametrize("name,q", sorted(EXPECTED))
def test_oracle_matches_brute_force_and_table(name, q):
    m = TINY[name]
    expected = EXPECTED[(name, q)]
    assert brute_representable(m, q) == expected
    assert rep.is_representable(m, q).representable == expected


def test_hirschfeld_fact_u25_gf5():
    assert rep.uniform_representability_fact(1, 5, 5)
    assert not rep.uniform_representability_fact(1, 5, 3)
    assert rep.uniform_representability_fact(1, 3, 2)


def test_uniform_fact_caps():
    with pytest.raises(CapExceeded):
        rep.uniform_representability_fact(3, 6, 2)
    with pytest.raises(CapExceeded):
        rep.uniform_representability_fact(1, 8, 8)


def test_returned_matrix_is_sound():
    for m, q in [(TINY["fano"], 2), (TINY["u24"], 3), (TINY["u25"], 4)]:
        res = rep.is_representable(m, q)
        assert res.representable
        lin = LinearMatroid(res.matrix)
        for x in submasks(m.ground):
            assert lin.rank(x) == m.rank(x)


def test_matrix_handles_loops_and_parallels():
    f = gf.field(2)
    cols = [(1, 0), (1, 0), (0, 0), (0, 1)]
    m = LinearMatroid(gf.Matrix.from_columns(f, cols, 2))
    res = rep.is_representable(m, 2)
    assert res.representable
    assert res.matrix.column(2) == (0, 0)
    assert res.matrix.column(0) == res.matrix.column(1)


def test_minor_closure_of_representability():
    fano = catalog.gen("pg", (3, 2))
    for e in list(fano.elements())[:4]:
        assert rep.is_representable(fano.contract(1 << e), 2).representable
        assert rep.is_representable(fano.delete(1 << e), 2).representable


def test_subfield_monotonicity():
    for m, q in [(TINY["u24"], 3), (TINY["fano"], 2)]:
        assert rep.is_representable(m, q).representable
        assert rep.is_representable(m, q * q).representable


def test_uniform_line_exhaustion():
    for q in (2, 3, 4):
        m = UniformMatroid(2, q + 2)
        assert not rep.is_representable(m, q).representable


def test_is_pg_examples():
    pg33 = catalog.gen("pg", (3, 3))
    assert rep.is_pg(pg33, 3, 3)
    fano = catalog.gen("pg", (3, 2))
    assert rep.is_pg(fano, 3, 2)
    assert not rep.is_pg(fano.delete(0b1), 3, 2)  # 6 points, not 7
    assert not rep.is_pg(UniformMatroid(3, 7), 3, 2)


def test_is_pg_embedded_geometry():
    # PG(3,2) points read over GF(4) is still the binary geometry
    m = catalog.gen("pg_plus_noise", (4, 2, 4, 0))
    assert rep.is_pg(m, 4, 2)
    assert not rep.is_pg(m, 4, 3)


def test_caps_enforced():
    with pytest.raises(CapExceeded):
        rep.is_representable(UniformMatroid(6, 8), 2)
    big = catalog.gen("pg", (4, 3))  # 40 points is at cap; 41 would not be
    assert rep.is_pg(big, 4, 3)


def test_rank_zero_and_one():
    f = gf.field(3)
    loops = LinearMatroid(gf.Matrix.from_columns(f, [(0,), (0,)], 1))
    res = rep.is_representable(loops, 3)
    assert res.representable
    assert all(v == (0,) for v in res.matrix.columns())
    par = LinearMatroid(gf.Matrix.from_columns(f, [(1,), (2,)], 1))
    assert rep.is_representable(par, 2).representable
