import itertools

import numpy as np
import pytest
from hypothesis import given, settings, seed
from hypothesis.extra.numpy import arrays

from tensors import Hypergraph, SymmetricTensor, symmetrize, adjacency_tensor, hypergraph_from_tensor, normalize, \
    s_action_apply, contract, degree_count, degree_table, read_hypergraph, write_hypergraph, read_tensor, \
    write_tensor
from tensors.action import windows
from utils.errors import ArgumentError


def random_symmetric(rng, r, n, density=0.5):
    idx = np.array(list(itertools.combinations_with_replacement(range(n), r)), dtype=np.int64)
    keep = rng.random(len(idx)) < density
    return SymmetricTensor(r, n, idx[keep], rng.uniform(-1, 1, keep.sum()))


def random_hypergraph(rng, n, cards=(3,), p=0.4):
    edges = [e for c in cards for e in itertools.combinations(range(n), c) if rng.random() < p]
    return Hypergraph(n, edges)


def test_hypergraph_set_semantics():
    h = Hypergraph(4, [[2, 1, 0], (0, 1, 2), {3, 1}, [1, 3, 3]])
    assert h.num_edges == 2
    assert h.edge_set() == {(0, 1, 2), (1, 3)}
    assert (2, 0, 1) in h and (0, 3) not in h
    assert h.rank == 3 and h.cardinalities == (2, 3)


@pytest.mark.parametrize('n, edges', [(0, []), (3, [[0, 5]]), (2, [[0, 1, 1, 2]]), (3, [[]])])
def test_hypergraph_invalid(n, edges):
    with pytest.raises(ArgumentError):
        Hypergraph(n, edges)


def test_symmetrize_fixed_point(rng):
    t = random_symmetric(rng, 3, 4)
    assert symmetrize(t.to_dense()).allclose(t)


def test_symmetrize_examples():
    assert symmetrize([[0.0, 1.0], [0.0, 0.0]]).entry((0, 1)) == pytest.approx(0.5)
    dense = np.zeros((2, 2, 2))
    dense[0, 1, 1] = 6.0
    sym = symmetrize(dense)
    assert sym.nnz == 1
    for idx in set(itertools.permutations((0, 1, 1))):
        assert sym.entry(idx) == pytest.approx(2.0)


def test_conflicting_entries():
    with pytest.raises(ArgumentError):
        SymmetricTensor(2, 3, [[0, 1], [1, 0]], [1.0, 2.0])
    t = SymmetricTensor(2, 3, [[0, 1], [1, 0]], [1.0, 1.0])
    assert t.nnz == 1


def test_from_dense_rejects_asymmetric():
    with pytest.raises(ArgumentError):
        SymmetricTensor.from_dense([[0.0, 1.0], [0.0, 0.0]])


def test_adjacency_complete_triple():
    t = adjacency_tensor(Hypergraph(3, [[0, 1, 2]]))
    assert t.nnz == 1
    assert t.entry((0, 1, 2)) == 1.0 and t.entry((2, 0, 1)) == 1.0
    assert t.entry((0, 0, 1)) == 0.0


def test_adjacency_lower_cardinality():
    t = adjacency_tensor(Hypergraph(3, [[0, 1], [0, 1, 2]]), 3)
    assert t.entry((0, 1, 2)) == 1.0
    assert t.entry((0, 0, 1)) == 1.0 and t.entry((0, 1, 1)) == 1.0
    assert t.entry((0, 0, 2)) == 0.0
    assert hypergraph_from_tensor(t) == Hypergraph(3, [[0, 1], [0, 1, 2]])


def test_adjacency_edge_cases():
    assert adjacency_tensor(Hypergraph(5), 3).nnz == 0
    with pytest.raises(ArgumentError):
        adjacency_tensor(Hypergraph(4, [[0, 1, 2]]), 2)


def test_relabel_commutes(rng):
    h = random_hypergraph(rng, 6, cards=(2, 3))
    psi = rng.permutation(6)
    assert adjacency_tensor(h.relabel(psi), 3).allclose(adjacency_tensor(h, 3).relabel(psi))


def test_windows():
    assert windows(3, 2) == [[1, 2], [2, 0]]
    assert windows(4, 1) == [[1], [2], [3]]


def test_matrix_action_is_matrix_product(rng):
    m = rng.uniform(-1, 1, (5, 5))
    t = SymmetricTensor.from_dense(m + m.T)
    for j in range(5):
        e = np.eye(5)[j]
        assert np.allclose(contract(t, 1, [e]), (m + m.T)[:, j])


def test_two_action_single_entry():
    t = SymmetricTensor(3, 2, [[0, 0, 1]], [1.0])
    out = s_action_apply(t, 2, [np.ones((2, 2)), np.ones((2, 2))])
    assert out.entry((0, 0)) == pytest.approx(1.0)
    assert out.entry((0, 1)) == pytest.approx(1.0)
    assert out.entry((1, 1)) == pytest.approx(0.0)


def test_two_action_on_ones(rng):
    t = random_symmetric(rng, 3, 5)
    out = contract(t, 2, [np.ones((5, 5))] * 2)
    assert np.allclose(out, t.to_dense().sum(axis=0))


@pytest.mark.parametrize('r, s', [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)])
def test_sparse_matches_dense(rng, monkeypatch, r, s):
    n = 4
    t = random_symmetric(rng, r, n)
    fns = [symmetrize(rng.uniform(-1, 1, (n,) * s)).to_dense() for _ in range(r - 1)]
    dense = contract(t, s, fns)
    monkeypatch.setattr(SymmetricTensor, 'backend', property(lambda self: 'sparse'))
    assert np.allclose(contract(t, s, fns), dense)


def test_sparse_matches_dense_row_scaled(rng, monkeypatch):
    h = random_hypergraph(rng, 6)
    t = normalize(adjacency_tensor(h), 'degree')
    fns = [symmetrize(rng.uniform(-1, 1, (6, 6))).to_dense() for _ in range(2)]
    dense = contract(t, 2, fns)
    monkeypatch.setattr(SymmetricTensor, 'backend', property(lambda self: 'sparse'))
    assert np.allclose(contract(t, 2, fns), dense)


def test_action_errors():
    t = SymmetricTensor(3, 3, [[0, 1, 2]], [1.0])
    with pytest.raises(ArgumentError):
        contract(t, 3, [np.ones((3, 3, 3))] * 2)
    with pytest.raises(ArgumentError):
        contract(t, 2, [np.ones((3, 3))])
    with pytest.raises(ArgumentError):
        contract(t, 2, [np.ones((4, 4))] * 2)
    with pytest.raises(ArgumentError):
        contract(t.with_row_scale(np.ones((3, 3))), 1, [np.ones(3)] * 2)


def test_normalize_examples():
    zero = SymmetricTensor(3, 4)
    assert normalize(zero, 'uniform').nnz == 0
    complete = adjacency_tensor(Hypergraph(4, itertools.combinations(range(4), 3)))
    assert np.allclose(normalize(complete, 'uniform').values, 0.25)
    assert np.allclose(normalize(complete, 'sparse', 0.5).values, 2.0)
    with pytest.raises(ArgumentError):
        normalize(complete, 'sparse', 0.0)
    with pytest.raises(ArgumentError):
        normalize(complete, 'spectral')


def test_degree_normalization_entry():
    t = normalize(adjacency_tensor(Hypergraph(4, [[0, 1, 2], [0, 1, 3]])), 'degree')
    assert t.entry((2, 0, 1)) == pytest.approx(1.0)
    assert t.entry((0, 1, 2)) == pytest.approx(0.5)
    assert t.entry((0, 0, 1)) == 0.0


def test_degree_count_examples():
    h = Hypergraph(4, [[0, 1, 2], [0, 1, 3], [0, 1]])
    assert degree_count(Hypergraph(4), (0, 1)) == 0
    assert degree_count(h, (0, 1)) == 2
    assert degree_count(h, (0, 0)) == 1


@seed(3)
@settings(max_examples=50, deadline=None)
@given(arrays(np.bool_, 15), arrays(np.bool_, 20))
def test_degree_table_matches_counts(pairs, triples):
    n = 6
    edges = [e for e, keep in zip(itertools.combinations(range(n), 2), pairs) if keep]
    edges += [e for e, keep in zip(itertools.combinations(range(n), 3), triples) if keep]
    h = Hypergraph(n, edges)
    table = degree_table(h, 2)
    for idx in itertools.product(range(n), repeat=2):
        assert table[idx] == degree_count(h, idx)


def test_files_round_trip(tmp_path, rng):
    h = random_hypergraph(rng, 7, cards=(2, 3))
    write_hypergraph(h, tmp_path / 'h.txt')
    assert read_hypergraph(tmp_path / 'h.txt') == h
    
    t = random_symmetric(rng, 3, 4)
    write_tensor(t, tmp_path / 't.coo')
    assert read_tensor(tmp_path / 't.coo').allclose(t, atol=0)
    with pytest.raises(ArgumentError):
        write_tensor(t.with_row_scale(np.ones((4, 4))), tmp_path / 'scaled.coo')


def test_tensor_file_layout(tmp_path):
    write_tensor(SymmetricTensor(3, 2, [[1, 0, 0]], [0.5]), tmp_path / 't.coo')
    assert (tmp_path / 't.coo').read_text().split('\n')[:2] == ['3 2', '1 1 2 0.5']


def test_symmetrize_is_linear_and_idempotent(rng):
    for r, n in [(2, 5), (3, 4), (4, 3)]:
        x, y = rng.normal(size=(n,) * r), rng.normal(size=(n,) * r)
        alpha, beta = rng.normal(size=2)
        combined = symmetrize(alpha * x + beta * y).to_dense()
        assert np.allclose(combined, alpha * symmetrize(x).to_dense() + beta * symmetrize(y).to_dense(), atol=1e-12)
        once = symmetrize(x)
        assert symmetrize(once.to_dense()).allclose(once)


def test_degree_count_bounded_by_n(rng):
    for n in (4, 6, 8):
        h = random_hypergraph(rng, n, cards=(2, 3, 4), p=0.6)
        for length in (1, 2, 3):
            for vertices in itertools.product(range(n), repeat=length):
                count = degree_count(h, vertices)
                assert 0 <= count <= n - len(set(vertices))
