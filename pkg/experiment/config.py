import copy

from pathlib2 import Path

import utils.jsonio as jio
from generators.models import MODELS, parse_model_spec
from measures import DiscreteMeasure
from spaces.functions import CATALOG
from spaces.space import FAMILIES
from utils.errors import ArgumentError

DEFAULTS = {
    'name': 'experiment',
    'models': [],
    'n': [100],
    'action': None,
    'normalization': 'uniform',
    's_n': None,
    'measure_family': 'uniform',
    'k_max': 1,
    'sampler': [{'entry': 'ones', 'count': 1}],
    'pairs': True,
    'seeds': [0],
    'tol': 1e-6,
    'out': 'results',
    'thresholds': {},
}


class ExperimentConfig:
    """Experiment description loaded from one JSON file.

    Every model is ``{"label", "spec", "target"?}``; ``spec`` omits ``n``, which
    comes from the ``n`` schedule, and ``target`` is a list of ``{point, mass}``
    atoms for the law of the all-ones tuple.
    """
    
    def __init__(self, data):
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ArgumentError(f'unknown config keys: {sorted(unknown)}')
        cfg = copy.deepcopy(DEFAULTS)
        cfg.update(copy.deepcopy(data))
        self._cfg = cfg
        self._targets = {}
        self._validate()
    
    @classmethod
    def load(cls, file):
        return cls(jio.load(file))
    
    def override(self, **kwargs):
        data = copy.deepcopy(self._cfg)
        data.update({k: v for k, v in kwargs.items() if v is not None})
        return ExperimentConfig(data)
    
    def _validate(self):
        cfg = self._cfg
        if not cfg['models']:
            raise ArgumentError('config lists no models')
        labels = [m.get('label') for m in cfg['models']]
        if None in labels or len(set(labels)) != len(labels):
            raise ArgumentError(f'model labels must be present and unique, got {labels}')
        for model in cfg['models']:
            spec = parse_model_spec(model['spec'])
            if spec.model not in MODELS:
                raise ArgumentError(f'unknown model "{spec.model}"')
            if 'n' in spec.params:
                raise ArgumentError(f'model "{model["label"]}" fixes n, use the n schedule instead')
            if 'target' in model:
                self._targets[model['label']] = DiscreteMeasure.mixture(
                    [(a['point'], a['mass']) for a in model['target']])
        if not cfg['n'] or min(cfg['n']) < 1:
            raise ArgumentError(f'invalid n schedule {cfg["n"]}')
        if not cfg['seeds']:
            raise ArgumentError('config lists no seeds')
        if cfg['measure_family'] not in FAMILIES:
            raise ArgumentError(f'unknown measure family "{cfg["measure_family"]}"')
        if cfg['normalization'] not in ('uniform', 'sparse', 'degree'):
            raise ArgumentError(f'unknown normalization "{cfg["normalization"]}"')
        if cfg['k_max'] < 1:
            raise ArgumentError(f'k_max must be positive, got {cfg["k_max"]}')
        if not cfg['tol'] > 0:
            raise ArgumentError(f'tol must be positive, got {cfg["tol"]}')
        for item in cfg['sampler']:
            if item.get('entry') not in CATALOG:
                raise ArgumentError(f'unknown catalog entry "{item.get("entry")}"')
        for label in cfg['thresholds']:
            if label not in labels:
                raise ArgumentError(f'threshold for unknown model "{label}"')
    
    def model_spec(self, label, n):
        model = next(m for m in self._cfg['models'] if m['label'] == label)
        spec = parse_model_spec(model['spec'])
        return spec._replace(params=dict(spec.params, n=int(n)))
    
    def target(self, label):
        return self._targets.get(label)
    
    def to_json(self):
        return copy.deepcopy(self._cfg)
    
    def __getattr__(self, key):
        cfg = self.__dict__.get('_cfg')
        if cfg is not None and key in cfg:
            return cfg[key]
        raise AttributeError(key)
    
    @property
    def labels(self):
        return [m['label'] for m in self._cfg['models']]
    
    @property
    def out_path(self):
        return Path(self._cfg['out'])
