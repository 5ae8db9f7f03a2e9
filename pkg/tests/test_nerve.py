import pytest

from polylogic.errors import EmptyPoset, NotACountermodel
from polylogic.formula import bd, parse
from polylogic.nerve import max_pmorphism, nerve, realize, transfer_countermodel
from polylogic.poset import Poset, enumerate_posets, from_covers, is_pmorphism


def chain(n):
    return from_covers([f"c{i}" for i in range(n)], [[f"c{i}", f"c{i+1}"] for i in range(n - 1)])


def fork():
    return from_covers(["r", "x", "y"], [["r", "x"], ["r", "y"]])


def test_nerve_of_two_chain():
    nv = nerve(chain(2))
    assert sorted(nv.elements) == ["c0", "c0,c1", "c1"]
    assert nv.leq("c0", "c0,c1") and nv.leq("c1", "c0,c1")
    assert not nv.leq("c0", "c1")


def test_nerve_of_antichain_is_discrete():
    p = Poset(("x", "y"), (0b01, 0b10))
    nv = nerve(p)
    assert len(nv) == 2 and nv.depth() == 0


def test_nerve_chain_counts():
    # nerve of an n-chain is the poset of nonempty subsets: 2^n - 1 chains
    for n in range(1, 5):
        assert len(nerve(chain(n))) == 2**n - 1


def test_empty_poset_rejected():
    empty = Poset((), ())
    for fn in (nerve, realize, max_pmorphism):
        with pytest.raises(EmptyPoset):
            fn(empty)


def test_realize_on_standard_basis():
    p = fork()
    k = realize(p)
    assert k.dim() == p.depth() == 1
    assert len(k) == len(nerve(p))
    # vertices sit on pairwise distinct standard basis vectors
    coords = set(k.vertices.values())
    assert len(coords) == len(p)
    assert all(sum(c) == 1 and set(c) <= {0, 1} for c in coords)


def test_realize_face_poset_matches_nerve():
    for n in range(1, 5):
        for p in enumerate_posets(n):
            nv = nerve(p)
            face = realize(p).face_poset()
            assert nv.is_order_isomorphism(face, {e: e for e in nv.elements})


def test_max_pmorphism_properties():
    for p in [chain(3), fork()]:
        f = max_pmorphism(p)
        ok, witness = is_pmorphism(f)
        assert ok, witness
        assert f.is_surjective()
        # on singleton chains the map is the identity
        for e in p.elements:
            assert f(e) == e


def test_transfer_refutes_on_polyhedron():
    p = chain(2)
    valuation = {"p0": p.mask_of(["c1"])}
    pcm = transfer_countermodel(p, valuation, bd(0))
    assert pcm.complex.dim() == p.depth() == 1
    assert pcm.evaluation != pcm.frame.full_mask
    ev = pcm.evaluation_set()
    assert ev.polarity == "open"


def test_transfer_rejects_non_countermodels():
    p = chain(2)
    with pytest.raises(NotACountermodel):
        transfer_countermodel(p, {"p": p.full_mask}, parse("p -> p"))
