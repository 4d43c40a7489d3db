import itertools

import numpy as np
import pandas as pd
from tensorboardX import SummaryWriter
from tqdm import tqdm

import utils.jsonio as jio
from generators import generate, edge_density_stats, format_model_spec
from measures import lp_distance
from operators import from_tensor_action
from profiles import k_profile, tuple_law, dM_from_profiles
from spaces import build_space, draw
from tensors import adjacency_tensor, normalize
from utils.parallel import num_workers, pool_map
from utils.version import describe

COLUMNS = ['model', 'n', 'k', 'metric', 'value', 'target', 'seed', 'version']


def build_operator(h, config, name=None):
    t = normalize(adjacency_tensor(h), config.normalization, config.s_n)
    s = config.action or t.order - 1
    space = None
    if config.measure_family != 'uniform':
        space = build_space(h.n, s, config.measure_family, h)
    return from_tensor_action(t, s, space, name=name)


def resolve_sampler(sampler, generated):
    """Replace ``"subset": "aux:<key>"`` by the symmetric cells of that auxiliary edge list.

    Models without that key get the empty set, so every model keeps the same sampler layout.
    """
    resolved = []
    for item in sampler:
        item = dict(item)
        subset = item.get('subset')
        if isinstance(subset, str) and subset.startswith('aux:'):
            pairs = np.asarray(generated.aux.get(subset[4:], []), dtype=np.int64).reshape(-1, 2)
            item['subset'] = np.concatenate([pairs, pairs[:, ::-1]])
        resolved.append(item)
    return resolved


def _row(model, n, k, metric, value, target, seed, version):
    return [model, int(n), int(k), metric, float(value), target, int(seed), version]


def run_point(args):
    """All rows and profile dumps of one ``(n, seed)`` grid point."""
    config, n, seed, version = args
    rows, dumps, profiles = [], {}, {}
    
    for label in config.labels:
        spec = config.model_spec(label, n)
        generated = generate(spec, seed)
        h = generated.hypergraph
        a = build_operator(h, config, name=label)
        
        stats = edge_density_stats(h, h.rank)
        rows.append(_row(label, n, 0, 'edge_density', stats.density, format_model_spec(spec), seed, version))
        
        target = config.target(label)
        if target is not None:
            ones = draw(a.space, 'ones', seed, 0)
            law = tuple_law(a, [[ones] * a.arity])
            rows.append(_row(label, n, 1, 'lp_target', lp_distance(law, target, config.tol), 'target', seed, version))
        
        sampler = resolve_sampler(config.sampler, generated)
        profiles[label] = [k_profile(a, k, sampler=sampler, seed=seed) for k in range(1, config.k_max + 1)]
        dumps[f'{label}_n{n}_seed{seed}'] = {f'k{p.k}': p.to_json() for p in profiles[label]}
    
    if config.pairs:
        for la, lb in itertools.combinations(config.labels, 2):
            estimate = dM_from_profiles(profiles[la], profiles[lb], config.tol)
            for k, d in enumerate(estimate.terms, start=1):
                rows.append(_row(la, n, k, 'd_H', d, lb, seed, version))
            rows.append(_row(la, n, config.k_max, 'd_M', estimate.value, lb, seed, version))
            rows.append(_row(la, n, config.k_max, 'd_M_tail', estimate.truncation, lb, seed, version))
    return rows, dumps


def threshold_failures(results, thresholds):
    failures = []
    for label, limit in thresholds.items():
        hits = results[(results.model == label) & (results.metric == 'lp_target') & (results.value > limit)]
        for _, row in hits.iterrows():
            failures.append(f'{label} n={row.n} seed={row.seed}: lp_target {row.value:.6f} > {limit}')
    return failures


def run_experiment(config, log_path=None):
    """Run every ``(n, seed)`` grid point, write ``results.csv`` and profile dumps under ``config.out``.

    Returns the result table and the list of threshold violations.
    """
    version = describe()
    tasks = [(config, n, seed, version) for n in config.n for seed in config.seeds]
    if num_workers() > 1:
        outputs = pool_map(run_point, tasks)
    else:
        outputs = [run_point(task) for task in tqdm(tasks, ascii=True, dynamic_ncols=True)]
    
    rows = [row for point_rows, _ in outputs for row in point_rows]
    results = pd.DataFrame(rows, columns=COLUMNS)
    
    out = config.out_path
    if not out.exists():
        out.mkdir(parents=True)
    results.to_csv(str(out / 'results.csv'), index=False)
    for _, dumps in outputs:
        for key, data in dumps.items():
            jio.save(data, out / 'profiles' / f'{key}.json')
    jio.save(config.to_json(), out / 'config.json')
    
    if log_path is not None:
        writer = SummaryWriter(str(log_path))
        for _, row in results.iterrows():
            tag = f'{row.metric}/{row.model}' + (f'-{row.target}' if row.metric.startswith('d_') else '')
            writer.add_scalar(f'{tag}/k{row.k}', row.value, row.n)
        writer.close()
    
    return results, threshold_failures(results, config.thresholds)
