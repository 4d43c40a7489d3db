import itertools

import numpy as np
import pytest

from operators import MultiPOperator, from_tensor_action, norm_estimate, check_property
from spaces import FiniteSymmetricSpace, TestFunction, draw, lp_norm
from tensors import Hypergraph, SymmetricTensor, adjacency_tensor, normalize, s_action_apply
from generators import generate
from utils import parallel
from utils.errors import ArgumentError, DomainError


def random_symmetric(rng, r, n):
    idx = np.array(list(itertools.combinations_with_replacement(range(n), r)), dtype=np.int64)
    return SymmetricTensor(r, n, idx, rng.uniform(-1, 1, len(idx)))


def random_3_uniform(rng, n, p=0.5):
    edges = [e for e in itertools.combinations(range(n), 3) if rng.random() < p]
    return Hypergraph(n, edges + [(0, 1, 2)])


def pairing(a, fns, last):
    return a.space.expectation(a.apply(fns).values * last.values)


def test_matrix_operator(rng):
    m = rng.uniform(-1, 1, (4, 4))
    m = m + m.T
    a = from_tensor_action(SymmetricTensor.from_dense(m), 1)
    v = TestFunction(a.space, rng.uniform(-1, 1, 4))
    assert a.arity == 1 and a.order == 2
    assert np.allclose(a(v).values, m @ v.values)


def test_zero_tensor_operator():
    a = from_tensor_action(SymmetricTensor(3, 4), 2)
    ones = TestFunction.constant(a.space)
    assert np.all(a(ones, ones).values == 0.0)


def test_delegates_to_tensor_action(rng):
    t = random_symmetric(rng, 3, 4)
    a = from_tensor_action(t, 2)
    f, g = draw(a.space, 'uniform', 0, 0), draw(a.space, 'uniform', 0, 1)
    expected = s_action_apply(t, 2, [f.to_dense(), g.to_dense()])
    assert np.allclose(a(f, g).to_dense(), expected.to_dense())


def test_apply_errors():
    a = from_tensor_action(SymmetricTensor(3, 4), 2)
    ones = TestFunction.constant(a.space)
    with pytest.raises(ArgumentError):
        a(ones)
    with pytest.raises(DomainError):
        a(ones, TestFunction.constant(FiniteSymmetricSpace(5, 2)))
    with pytest.raises(ArgumentError):
        from_tensor_action(SymmetricTensor(3, 4), 3)
    with pytest.raises(ArgumentError):
        from_tensor_action(SymmetricTensor(3, 4), 2, FiniteSymmetricSpace(5, 2))


def test_norm_of_zero_and_identity():
    space = FiniteSymmetricSpace(5, 2)
    assert norm_estimate(MultiPOperator.zero(space, 2), (2, 2), 2, trials=8) == 0.0
    identity = from_tensor_action(SymmetricTensor.from_dense(np.eye(5)), 1)
    assert norm_estimate(identity, (2,), 2, trials=8) == pytest.approx(1.0)


def test_norm_estimate_monotone_in_trials(rng):
    a = from_tensor_action(normalize(adjacency_tensor(random_3_uniform(rng, 7)), 'uniform'), 2)
    values = [norm_estimate(a, (2, 2), 2, trials=t, seed=4) for t in (1, 4, 16)]
    assert values == sorted(values)


def test_norm_estimate_in_pool(rng, monkeypatch):
    a = from_tensor_action(normalize(adjacency_tensor(random_3_uniform(rng, 6)), 'uniform'), 2)
    serial = norm_estimate(a, (2, 2), 2, trials=8, seed=1)
    monkeypatch.setenv('HYPERLIM_THREADS', '2')
    monkeypatch.setattr(parallel.mp, 'cpu_count', lambda: 4)
    assert norm_estimate(a, (2, 2), 2, trials=8, seed=1) == serial


def test_norm_estimate_errors():
    space = FiniteSymmetricSpace(3, 2)
    zero = MultiPOperator.zero(space, 2)
    with pytest.raises(ArgumentError):
        norm_estimate(zero, (2,), 2)
    with pytest.raises(ArgumentError):
        norm_estimate(zero, (2, 0.5), 2)
    with pytest.raises(ArgumentError):
        norm_estimate(zero, (2, 2), 2, trials=0)


@pytest.mark.parametrize('n', [10, 50, pytest.param(200, marks=pytest.mark.slow)])
def test_uniform_two_action_is_l2_bounded(n):
    h = generate(f'er_uniform:n={n},p=0.3,r=3', seed=n).hypergraph
    a = from_tensor_action(normalize(adjacency_tensor(h), 'uniform'), 2)
    entries = ('uniform', 'rademacher', 'rank_one', 'coordinate', 'random_subset')
    violations = 0
    for trial in range(167):
        entry = entries[trial % len(entries)]
        f, g = draw(a.space, entry, n, 2 * trial), draw(a.space, entry, n, 2 * trial + 1)
        if lp_norm(a(f, g), 2) > lp_norm(f, 2) * lp_norm(g, 2) + 1e-10:
            violations += 1
    assert violations == 0


def test_symmetry_identity_uniform(rng):
    for _ in range(100):
        n = int(rng.integers(2, 9))
        a = from_tensor_action(random_symmetric(rng, 3, n), 2)
        f, g, h = (TestFunction(a.space, rng.uniform(-1, 1, len(a.space))) for _ in range(3))
        base = pairing(a, [f, g], h)
        for x, y, z in itertools.permutations([f, g, h]):
            assert pairing(a, [x, y], z) == pytest.approx(base, abs=1e-10)


def test_symmetry_identity_degree_weighted(rng):
    for _ in range(100):
        n = int(rng.integers(4, 9))
        hg = random_3_uniform(rng, n, p=float(rng.uniform(0.2, 0.8)))
        space = FiniteSymmetricSpace(n, 2, 'degree_weighted', hg)
        a = from_tensor_action(normalize(adjacency_tensor(hg), 'degree'), 2, space)
        f, g, h = (TestFunction(space, rng.uniform(-1, 1, len(space))) for _ in range(3))
        base = pairing(a, [f, g], h)
        for x, y, z in itertools.permutations([f, g, h]):
            assert pairing(a, [x, y], z) == pytest.approx(base, abs=1e-10)


def test_check_symmetric(rng):
    a = from_tensor_action(random_symmetric(rng, 3, 5), 2)
    assert check_property(a, 'symmetric')
    
    space = FiniteSymmetricSpace(4, 1)
    skew = MultiPOperator(space, 2, lambda arrays: 2.0 * arrays[0], name='first-slot')
    result = check_property(skew, 'symmetric')
    assert not result
    assert result.violation > 1e-10 and 'permutation' in result.witness


def test_adjacency_actions_preserve_positivity(rng):
    h = random_3_uniform(rng, 6)
    for s in (1, 2):
        a = from_tensor_action(normalize(adjacency_tensor(h), 'uniform'), s)
        assert check_property(a, 'positivity_preserving')
    negative = from_tensor_action(SymmetricTensor.from_dense(-np.eye(3)), 1)
    assert not check_property(negative, 'positivity_preserving')


def test_check_positive():
    assert check_property(from_tensor_action(SymmetricTensor.from_dense(np.eye(3)), 1), 'positive')
    swap = from_tensor_action(SymmetricTensor.from_dense([[0.0, 1.0], [1.0, 0.0]]), 1)
    assert not check_property(swap, 'positive', trials=32)


def test_check_c_regular():
    n = 6
    cycle = np.zeros((n, n))
    for i in range(n):
        cycle[i, (i + 1) % n] = cycle[(i + 1) % n, i] = 1.0
    a = from_tensor_action(normalize(SymmetricTensor.from_dense(cycle), 'uniform'), 1)
    result = check_property(a, 'c_regular')
    assert result and result.witness['c'] == pytest.approx(2 / n)
    assert not check_property(a, 'c_regular', c=1.0)
    
    path = from_tensor_action(adjacency_tensor(generate('tight_path:n=6', 0).hypergraph), 2)
    assert not check_property(path, 'c_regular')


def test_unknown_property():
    with pytest.raises(ArgumentError):
        check_property(MultiPOperator.zero(FiniteSymmetricSpace(2, 1), 1), 'monotone')
