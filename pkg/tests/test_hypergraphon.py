import itertools

import numpy as np
import pytest

from hypergraphon import StepFunction, StepHypergraphon, SymmetricGridPartition, CoordinateIndex, from_hypergraph, \
    threshold_pairs, read_hypergraphon, write_hypergraphon, quotient, d1_quotient, stepping, cut_norm_estimate, \
    weak_regular_check, hom_density, hom_density_exact, as_multi_op, Quotient
from measures import DiscreteMeasure, lp_distance
from operators import from_tensor_action
from profiles import tuple_law
from spaces import GridSpace, TestFunction
from tensors import Hypergraph, adjacency_tensor, normalize
from utils.errors import ArgumentError

TRIANGLE = Hypergraph(3, itertools.combinations(range(3), 2))


def random_graph(rng, n, p=0.5):
    return Hypergraph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_hypergraphon(rng, k, resolutions):
    coords = CoordinateIndex(k)
    raw = rng.random(coords.axis_sizes(resolutions))
    values = sum(np.transpose(raw, perm) for perm in coords.permutations()) / len(coords.permutations())
    return StepHypergraphon(k, resolutions, values)


def random_partition(rng, k, resolutions, q):
    space = GridSpace(k, resolutions)
    return SymmetricGridPartition.from_classes(space, rng.integers(0, q, len(space)), q=q)


def generate_complete(n, k):
    return Hypergraph(n, itertools.combinations(range(n), k))


def exhaustive_cut_norm(values):
    m = values.shape[0]
    best = 0.0
    for u in itertools.product((0.0, 1.0), repeat=m):
        for v in itertools.product((0.0, 1.0), repeat=m):
            best = max(best, abs(np.array(v) @ values @ np.array(u)) / m ** 2)
    return best


def test_coordinates():
    coords = CoordinateIndex(3)
    assert coords.subsets == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]
    assert coords.face(2) == [0, 1, 3]
    assert coords.face(0) == [1, 2, 5]
    assert len(coords.permutations()) == 6


def test_step_hypergraphon_validation():
    with pytest.raises(ArgumentError):
        StepHypergraphon(2, 2, [[0.0, 1.5], [1.5, 0.0]])
    with pytest.raises(ArgumentError):
        StepHypergraphon(2, 2, [[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ArgumentError):
        StepHypergraphon(2, 2, np.zeros((3, 3)))


def test_refine_keeps_function():
    w = threshold_pairs(3, 2)
    fine = w.refine((3, 4))
    assert fine.resolutions == (3, 4)
    assert fine.mean() == pytest.approx(w.mean())
    assert (w - fine).values.max() == 0.0
    with pytest.raises(ArgumentError):
        w.refine((1, 3))


def test_from_hypergraph():
    n = 4
    w = from_hypergraph(generate_complete(n, 3), 3)
    assert w.resolutions == (n, 1)
    for i, j, k in itertools.product(range(n), repeat=3):
        assert w.values[i, j, k, 0, 0, 0] == float(len({i, j, k}) == 3)
    assert from_hypergraph(Hypergraph(n), 3).mean() == 0.0
    with pytest.raises(ArgumentError):
        from_hypergraph(Hypergraph(n, [[0, 1], [0, 1, 2]]), 3)


def test_threshold_pairs():
    w = threshold_pairs(3, 4)
    assert w.mean() == pytest.approx(0.125)
    with pytest.raises(ArgumentError):
        threshold_pairs(3, 3)
    with pytest.raises(ArgumentError):
        threshold_pairs(2, 2)


@pytest.mark.parametrize('m', [2, 4, 6])
def test_threshold_law(m):
    a = as_multi_op(threshold_pairs(3, m))
    ones = TestFunction.constant(a.space)
    law = tuple_law(a, [[ones, ones]])
    target = DiscreteMeasure.mixture([((1, 1, 0), 0.5), ((1, 1, 0.25), 0.5)])
    assert lp_distance(law, target, 1e-12) <= 1e-9


def test_constant_graphon_operator(rng):
    w = StepHypergraphon.constant(2, 0.3).refine(5)
    a = as_multi_op(w)
    f = TestFunction(a.space, rng.uniform(-1, 1, 5))
    assert np.allclose(a(f).values, 0.3 * f.values.mean())


def test_refined_operator_resolution():
    a = as_multi_op(threshold_pairs(3, 2), n=4)
    assert a.space == GridSpace(3, (4, 2))
    with pytest.raises(ArgumentError):
        as_multi_op(from_hypergraph(generate_complete(3, 3), 3), n=4)


@pytest.mark.parametrize('k', [2, 3])
def test_bridge_matches_tensor_action(rng, k):
    for n in (4, 6, 8):
        h = Hypergraph(n, [e for e in itertools.combinations(range(n), k) if rng.random() < 0.5])
        a = as_multi_op(from_hypergraph(h, k))
        b = from_tensor_action(normalize(adjacency_tensor(h, k), 'uniform'), k - 1)
        dense = [rng.uniform(-1, 1, (n,) * (k - 1)) for _ in range(k - 1)]
        dense = [(d + d.T) / 2 if d.ndim == 2 else d for d in dense]
        grid_fns = [TestFunction.from_dense(a.space, d.reshape(a.space.shape)) for d in dense]
        tensor_fns = [TestFunction.from_dense(b.space, d) for d in dense]
        assert np.allclose(a.apply(grid_fns).to_dense().reshape(b.space.shape), b.apply(tensor_fns).to_dense())


def test_hom_density_constant():
    w = StepHypergraphon.constant(2, 0.3)
    edge = Hypergraph(2, [[0, 1]])
    estimate = hom_density(edge, w, samples=10 ** 4)
    assert abs(estimate.value - 0.3) <= 3 * estimate.stderr + 1e-12
    assert hom_density_exact(edge, w) == pytest.approx(0.3)


def test_hom_density_progress_bar(rng, capsys):
    w = random_hypergraphon(rng, 2, (2,))
    quiet = hom_density(TRIANGLE, w, samples=2000, seed=3)
    assert capsys.readouterr().err == ''
    shown = hom_density(TRIANGLE, w, samples=2000, seed=3, progress=True)
    assert shown == quiet
    assert '100%' in capsys.readouterr().err


def test_hom_density_distinct_constants():
    ws = [StepHypergraphon.constant(2, c) for c in (0.2, 0.5, 0.7)]
    alpha = {(0, 1): 0, (1, 2): 1, (0, 2): 2}
    assert hom_density_exact(TRIANGLE, ws, alpha) == pytest.approx(0.2 * 0.5 * 0.7)
    assert hom_density(TRIANGLE, ws, [0, 1, 2], samples=10 ** 4).value == pytest.approx(0.07)


def test_hom_density_invalid_alpha():
    ws = [StepHypergraphon.constant(2, 0.5)]
    with pytest.raises(ArgumentError):
        hom_density_exact(TRIANGLE, ws, [0, 1, 0])
    with pytest.raises(ArgumentError):
        hom_density_exact(TRIANGLE, ws, {(0, 1): 0})
    with pytest.raises(ArgumentError):
        hom_density_exact(TRIANGLE, [StepHypergraphon.constant(3, 0.5)])
    with pytest.raises(ArgumentError):
        hom_density(TRIANGLE, ws, samples=10, batches=20)


def test_triangle_density_of_graphs(rng):
    within = 0
    for trial in range(20):
        n = int(rng.integers(3, 9))
        g = random_graph(rng, n, float(rng.uniform(0.3, 0.9)))
        adj = adjacency_tensor(g, 2).to_dense()
        count = np.einsum('ab,bc,ac->', adj, adj, adj) / n ** 3
        w = from_hypergraph(g, 2)
        assert hom_density_exact(TRIANGLE, w) == pytest.approx(count, abs=1e-12)
        estimate = hom_density(TRIANGLE, w, seed=trial)
        within += abs(estimate.value - count) <= 3 * estimate.stderr
    assert within >= 19


def test_hom_density_hypergraph_edge():
    w = threshold_pairs(3, 2)
    single = Hypergraph(3, [[0, 1, 2]])
    assert hom_density_exact(single, w) == pytest.approx(0.125)


def test_trivial_quotient(rng):
    w = random_hypergraphon(rng, 3, (2, 2))
    q = quotient(w, SymmetricGridPartition.trivial(3))
    assert q.volumes.shape == (1, 1, 1)
    assert q.volumes[0, 0, 0] == pytest.approx(1.0)
    assert q.weights[0, 0, 0] == pytest.approx(w.mean())


@pytest.mark.parametrize('k, resolutions, q', [(2, (6,), 3), (3, (2, 2), 2), (3, (4, 2), 3)])
def test_quotient_identities(rng, k, resolutions, q):
    w = random_hypergraphon(rng, k, resolutions)
    part = random_partition(rng, k, resolutions, q)
    quo = quotient(w, part)
    assert quo.volumes.sum() == pytest.approx(1.0, abs=1e-12)
    assert (quo.volumes * quo.weights).sum() == pytest.approx(w.mean(), abs=1e-12)
    assert np.allclose(quo.volumes, np.transpose(quo.volumes, list(reversed(range(k)))))


def test_coarser_partition_divides(rng):
    w = random_hypergraphon(rng, 2, (6,))
    part = random_partition(rng, 2, (3,), 2)
    assert quotient(w, part).volumes.sum() == pytest.approx(1.0)
    with pytest.raises(ArgumentError):
        quotient(w, random_partition(rng, 2, (4,), 2))


def test_partition_must_be_symmetric():
    labels = np.zeros((2, 2, 1), dtype=np.int64)
    labels[0, 1, 0] = 1
    with pytest.raises(ArgumentError):
        SymmetricGridPartition(3, (2, 1), labels)


def test_d1(rng):
    a = quotient(random_hypergraphon(rng, 2, (4,)), random_partition(rng, 2, (4,), 2))
    assert d1_quotient(a, a) == 0.0
    f = tuple(int(x) for x in np.argwhere(a.volumes > 0)[0])
    weights = a.weights.copy()
    weights[f] += 0.05
    moved = Quotient(a.volumes, weights)
    assert d1_quotient(a, moved) == pytest.approx(a.volumes[f] * 0.05)
    with pytest.raises(ArgumentError):
        d1_quotient(a, quotient(random_hypergraphon(rng, 2, (4,)), SymmetricGridPartition.trivial(2)))


def test_stepping(rng):
    w = random_hypergraphon(rng, 3, (2, 2))
    part = random_partition(rng, 3, (2, 2), 2)
    stepped = stepping(w, part)
    assert isinstance(stepped, StepHypergraphon)
    assert stepped.is_symmetric()
    assert stepped.mean() == pytest.approx(w.mean())
    assert np.allclose(stepping(stepped, part).values, stepped.values)
    assert len(stepping([w, stepped], part)) == 2


def test_cut_norm_constants():
    assert cut_norm_estimate(StepFunction(2, 3, np.zeros((3, 3)))).value == 0.0
    assert cut_norm_estimate(StepHypergraphon.constant(3, 0.4)).value == pytest.approx(0.4)
    assert cut_norm_estimate(StepHypergraphon.constant(3, 0.4).refine(3), budget=0).value == pytest.approx(0.4)


def test_cut_norm_exhaustive_oracle(rng):
    for _ in range(50):
        m = int(rng.integers(1, 7))
        raw = rng.choice([-1.0, 1.0], (m, m))
        values = np.triu(raw) + np.triu(raw, 1).T
        estimate = cut_norm_estimate(StepFunction(2, m, values))
        assert estimate.exhaustive
        assert estimate.value == pytest.approx(exhaustive_cut_norm(values), abs=1e-12)


def test_cut_norm_search_is_lower_bound(rng):
    w = StepFunction(3, (2, 2), random_hypergraphon(rng, 3, (2, 2)).values - 0.5)
    exact = cut_norm_estimate(w)
    searched = cut_norm_estimate(w, trials=8, budget=0)
    assert exact.exhaustive and not searched.exhaustive
    assert searched.value <= exact.value + 1e-12
    assert len(searched.witness) == 3


def test_weak_regularity(rng):
    w = random_hypergraphon(rng, 2, (4,))
    own = SymmetricGridPartition(2, 4, np.arange(4))
    assert weak_regular_check(w, own, 0.0).holds
    assert weak_regular_check(w, SymmetricGridPartition.trivial(2), 1.0).holds
    
    blocks = StepHypergraphon(2, 2, [[1.0, 0.0], [0.0, 1.0]])
    check = weak_regular_check(blocks, SymmetricGridPartition.trivial(2), 0.1)
    assert not check.holds
    assert check.estimate == pytest.approx(0.125)
    assert check.witness is not None


def test_hypergraphon_file(tmp_path, rng):
    w = random_hypergraphon(rng, 3, (2, 3))
    write_hypergraphon(w, tmp_path / 'w.txt')
    assert (tmp_path / 'w.txt').read_text().split('\n')[0] == '3 2 3'
    assert np.allclose(read_hypergraphon(tmp_path / 'w.txt').values, w.values, rtol=0, atol=1e-12)
    
    (tmp_path / 'c.txt').write_text('2 1\n1 1 0.5\n')
    assert read_hypergraphon(tmp_path / 'c.txt').mean() == 0.5
