import pytest
from hypothesis import given, settings, strategies as st

from seventerm.groups import (GModule, GroupError, builtin_group, cyclic, from_multiplication_table,
                              group_ring_data, invariants, make_extension, semidirect_product,
                              symmetric)
from seventerm.linalg import FgAbGroup

Z2 = FgAbGroup.from_invariants([2])


def test_table_examples():
    assert from_multiplication_table([[0, 1], [1, 0]]).order == 2
    S3 = symmetric(3)
    assert S3.order == 6 and not S3.is_abelian()
    with pytest.raises(GroupError, match="no inverse for element 1"):
        from_multiplication_table([[0, 1], [1, 1]])


def test_non_associative_witness():
    # a Latin square with identity 0 that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError) as e:
        from_multiplication_table(t)
    a, b, c = e.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


@pytest.mark.parametrize("name", ["C2", "C4", "C9", "V4", "S3", "D8", "Q8"])
def test_builtins_valid(name):
    G = builtin_group(name)
    assert G.table[0] == tuple(range(G.order))


def test_builtin_centers():
    assert builtin_group("D8").center() == [0, 2]
    assert builtin_group("Q8").center() == [0, 1]


def test_make_extension_examples():
    ext = make_extension(cyclic(4), [0, 2])
    assert ext.Q.order == 2 and ext.sigma == (0, 1)
    with pytest.raises(GroupError, match="not normal") as e:
        make_extension(symmetric(3), [0, 1])
    g, n = e.value.witness
    S3 = symmetric(3)
    assert S3.conj(g, n) not in (0, 1)
    assert make_extension(S3, range(6)).Q.order == 1
    with pytest.raises(GroupError):
        make_extension(cyclic(4), [0, 1])


@pytest.mark.parametrize("name,N", [("C4", [0, 2]), ("S3", [0, 3, 4]), ("D8", [0, 2]),
                                    ("Q8", [0, 1]), ("Q8", [0, 1, 2, 3]), ("C9", [0, 3, 6])])
def test_extension_properties(name, N):
    G = builtin_group(name)
    ext = make_extension(G, N)
    assert G.order == len(ext.N) * ext.Q.order
    assert all(ext.pi[ext.sigma[q]] == q for q in ext.Q.elements())
    assert ext.sigma[0] == 0
    assert [g for g in G.elements() if ext.pi[g] == 0] == list(ext.N)
    data = group_ring_data(ext)
    assert {(data.n_of[g], data.q_of[g]) for g in G.elements()} == {
        (n, q) for n in ext.N for q in ext.Q.elements()}


def test_group_ring_examples():
    ext = make_extension(cyclic(4), [0, 2])
    data = group_ring_data(ext)
    assert data.reps == (0, 1)
    assert (data.n_of[3], data.q_of[3]) == (2, 1)
    assert group_ring_data(make_extension(cyclic(3), [0, 1, 2])).reps == (0,)
    assert group_ring_data(make_extension(cyclic(3), [0])).reps == (0, 1, 2)


def test_invariants_examples():
    C2 = cyclic(2)
    triv = GModule.trivial(C2, Z2)
    assert invariants(triv, [0, 1]).group.order() == 2
    sign = GModule.from_scalars(C2, 3, [1, -1])
    assert invariants(sign, [0, 1]).group.is_trivial()
    swap = GModule(C2, FgAbGroup.from_invariants([2, 2]), [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    sub = invariants(swap, [0, 1])
    assert sub.group.order() == 2
    assert sub.inclusion().images() == [(1, 1)]


def test_module_rejects_non_invertible():
    with pytest.raises(GroupError, match="element 1 is not invertible"):
        GModule(cyclic(2), FgAbGroup.from_invariants([4]), [[[1]], [[2]]])


def test_semidirect_examples():
    C2 = cyclic(2)
    assert semidirect_product(GModule.trivial(C2, FgAbGroup.trivial())).group.order == 2
    V = semidirect_product(GModule.trivial(C2, Z2)).group
    assert V.order == 4 and V.exponent() == 2
    S = semidirect_product(GModule.from_scalars(C2, 3, [1, -1])).group
    assert S.order == 6 and not S.is_abelian()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["C2", "C3", "C4", "V4", "S3"]), st.sampled_from([2, 3]))
def test_semidirect_recovers_base(name, m):
    G = builtin_group(name)
    sd = semidirect_product(GModule.trivial(G, FgAbGroup.from_invariants([m])))
    ext = make_extension(sd.group, sd.embed)
    # relabel Q by the G-part of its coset representatives
    lab = [sd.proj[x] for x in ext.sigma]
    assert sorted(lab) == list(G.elements())
    assert all(lab[ext.Q.mul(a, b)] == G.mul(lab[a], lab[b])
               for a in ext.Q.elements() for b in ext.Q.elements())
