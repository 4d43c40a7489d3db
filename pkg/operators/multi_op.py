import functools

import numpy as np

from spaces import FiniteSymmetricSpace, TestFunction
from tensors.action import contract
from utils.errors import ArgumentError, DomainError


def _zero(shape, arrays):
    return np.zeros(shape)


class MultiPOperator:
    """Multi-linear operator of ``arity`` arguments on the functions of ``space``.

    ``evaluator`` maps ``arity`` dense orbit-constant arrays of ``space.shape`` to
    one such array.
    """
    
    def __init__(self, space, arity, evaluator, name=None):
        if arity < 1:
            raise ArgumentError(f'arity must be positive, got {arity}')
        self._space = space
        self._arity = int(arity)
        self._evaluator = evaluator
        self._name = name or 'operator'
    
    @classmethod
    def zero(cls, space, arity):
        return cls(space, arity, functools.partial(_zero, space.shape), name='zero')
    
    def apply(self, fns):
        fns = list(fns)
        if len(fns) != self._arity:
            raise ArgumentError(f'{self._name} takes {self._arity} functions, got {len(fns)}')
        for fn in fns:
            if fn.space != self._space:
                raise DomainError(f'function on {fn.space!r} passed to an operator on {self._space!r}')
        out = self._evaluator([fn.to_dense() for fn in fns])
        return TestFunction.from_dense(self._space, out)
    
    def __call__(self, *fns):
        return self.apply(fns)
    
    def __repr__(self):
        return f'MultiPOperator({self._name}, arity={self._arity}, {self._space!r})'
    
    @property
    def space(self):
        return self._space
    
    @property
    def arity(self):
        return self._arity
    
    @property
    def order(self):
        return self._arity + 1
    
    @property
    def name(self):
        return self._name


def from_tensor_action(t, s, space=None, name=None):
    """The s-action of ``t`` as an operator, on ``([n]^s, Sym, uniform)`` unless ``space`` is given."""
    if not 1 <= s <= t.order - 1:
        raise ArgumentError(f'action order s={s} outside [1, {t.order - 1}]')
    if space is None:
        space = FiniteSymmetricSpace(t.dimension, s)
    if space.shape != (t.dimension,) * s:
        raise ArgumentError(f'space of shape {space.shape} for an order-{s} action in dimension {t.dimension}')
    return MultiPOperator(space, t.order - 1, functools.partial(contract, t, s), name=name or f'{s}-action')
