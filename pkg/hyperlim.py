import sys

import click
import numpy as np
from pathlib2 import Path

import utils.jsonio as jio
from experiment import ExperimentConfig, run_experiment
from generators import generate, parse_model_spec, edge_density_stats
from hypergraphon import read_hypergraphon, as_multi_op, cut_norm_estimate, stepping, SymmetricGridPartition
from measures import DiscreteMeasure, MeasureSet, lp_distance, hausdorff, tau
from operators import from_tensor_action
from profiles import k_profile, tuple_law, tensor_isomorphism_oracle, DEFAULT_SAMPLER
from spaces import build_space, draw, FAMILIES
from tensors import read_hypergraph, write_hypergraph, adjacency_tensor, normalize, read_tensor, write_tensor
from utils.errors import ArgumentError, DomainError
from utils.parallel import num_workers


def fail(message):
    print(message, file=sys.stderr)
    sys.exit(-1)


def load_measures(file):
    data = jio.load(file)
    if 'members' in data:
        return MeasureSet.from_json(data)
    return DiscreteMeasure.from_json(data)


@click.group()
def main():
    pass


@main.command('generate')
@click.argument('spec')
@click.option('--seed', help='Random seed', type=int, default=0, show_default=True)
@click.option('--out', 'out_file', help='Hypergraph file to write, aux data goes next to it as JSON',
              type=click.Path(dir_okay=False, resolve_path=True), required=True)
def generate_cmd(spec, seed, out_file):
    """Sample a hypergraph from SPEC, e.g. "er_uniform:n=200,p=0.125,r=3"."""
    try:
        generated = generate(parse_model_spec(spec), seed)
    except (ArgumentError, DomainError) as e:
        fail(f'invalid model "{spec}": {e}')
    h = generated.hypergraph
    out_file = Path(out_file)
    write_hypergraph(h, out_file)
    jio.save({'spec': spec, 'seed': seed, **generated.aux}, out_file.with_suffix('.aux.json'))
    
    stats = edge_density_stats(h, h.rank)
    print(f'{"Vertices":>12s}: {h.n}')
    print(f'{"Edges":>12s}: {h.num_edges}')
    print(f'{"Density":>12s}: {stats.density:.6f}')


@main.command('tensor')
@click.argument('hypergraph', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
@click.option('--order', help='Tensor order, defaults to the largest edge', type=int, default=None)
@click.option('--normalize', 'scheme', help='Normalization scheme',
              type=click.Choice(['none', 'uniform', 'sparse']), default='none', show_default=True)
@click.option('--s_n', help='Sparse normalization factor', type=float, default=None)
@click.option('--out', 'out_file', help='COO tensor file to write',
              type=click.Path(dir_okay=False, resolve_path=True), required=True)
def tensor_cmd(hypergraph, order, scheme, s_n, out_file):
    """Write the adjacency tensor of HYPERGRAPH."""
    try:
        t = adjacency_tensor(read_hypergraph(hypergraph), order)
        if scheme != 'none':
            t = normalize(t, scheme, s_n)
    except ArgumentError as e:
        fail(str(e))
    write_tensor(t, out_file)
    print(f'{"Order":>12s}: {t.order}')
    print(f'{"Dimension":>12s}: {t.dimension}')
    print(f'{"Entries":>12s}: {t.nnz}')


@main.command('profile')
@click.argument('hypergraph', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
@click.option('-k', 'k', help='Profile order', type=int, default=1, show_default=True)
@click.option('-s', '--action', help='Action order, defaults to r-1', type=int, default=None)
@click.option('--normalize', 'scheme', help='Normalization scheme',
              type=click.Choice(['uniform', 'sparse', 'degree']), default='uniform', show_default=True)
@click.option('--s_n', help='Sparse normalization factor', type=float, default=None)
@click.option('--family', help='Probability on the function space', type=click.Choice(FAMILIES),
              default='uniform', show_default=True)
@click.option('--sampler', 'sampler_file', help='JSON list of {entry, count}',
              type=click.Path(exists=True, dir_okay=False, resolve_path=True), default=None)
@click.option('--seed', help='Sampler seed', type=int, default=0, show_default=True)
@click.option('--out', 'out_file', help='Profile JSON to write',
              type=click.Path(dir_okay=False, resolve_path=True), required=True)
def profile_cmd(hypergraph, k, action, scheme, s_n, family, sampler_file, seed, out_file):
    """Sample the k-profile of the s-action of HYPERGRAPH's adjacency tensor."""
    try:
        h = read_hypergraph(hypergraph)
        t = normalize(adjacency_tensor(h), scheme, s_n)
        s = action or t.order - 1
        space = build_space(h.n, s, family, h) if family != 'uniform' else None
        a = from_tensor_action(t, s, space)
        sampler = jio.load(sampler_file) if sampler_file else DEFAULT_SAMPLER
        profile = k_profile(a, k, sampler=sampler, seed=seed)
    except (ArgumentError, DomainError) as e:
        fail(str(e))
    jio.save(profile.to_json(), out_file)
    print(f'{"Measures":>12s}: {len(profile.measures)}')
    print(f'{"Dimension":>12s}: {profile.measures.dimension}')


@main.command('distance')
@click.argument('first', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
@click.argument('second', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
@click.option('--tol', help='Lévy-Prokhorov tolerance', type=float, default=1e-9, show_default=True)
def distance_cmd(first, second, tol):
    """Lévy-Prokhorov distance of two measures, or Hausdorff distance of two measure sets."""
    try:
        a, b = load_measures(first), load_measures(second)
        if isinstance(a, MeasureSet) or isinstance(b, MeasureSet):
            a = a if isinstance(a, MeasureSet) else MeasureSet([a])
            b = b if isinstance(b, MeasureSet) else MeasureSet([b])
            print(f'{"d_H":>12s}: {hausdorff(a, b, tol):.12f}')
        else:
            print(f'{"d_LP":>12s}: {lp_distance(a, b, tol):.12f}')
            print(f'{"tau":>12s}: {tau(a):.12f} / {tau(b):.12f}')
    except (ArgumentError, DomainError, KeyError) as e:
        fail(f'cannot compare measures: {e}')


@main.command('isocheck')
@click.argument('first', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
@click.argument('second', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
def isocheck_cmd(first, second):
    """Search a vertex bijection between two COO tensors."""
    try:
        psi = tensor_isomorphism_oracle(read_tensor(first), read_tensor(second))
    except ArgumentError as e:
        fail(str(e))
    if psi is None:
        print('none')
        sys.exit(1)
    print(' '.join(str(int(v) + 1) for v in psi))


@main.command('hypergraphon')
@click.argument('file', type=click.Path(exists=True, dir_okay=False, resolve_path=True))
@click.option('--trials', help='Random restarts of the cut norm search', type=int, default=32, show_default=True)
@click.option('--seed', help='Seed of the cut norm restarts', type=int, default=0, show_default=True)
def hypergraphon_cmd(file, trials, seed):
    """Summarize a step hypergraphon: mean, law of W~[1, ..., 1] and distance to its mean."""
    try:
        w = read_hypergraphon(file)
    except (ArgumentError, OSError, ValueError) as e:
        fail(f'cannot read hypergraphon: {e}')
    a = as_multi_op(w)
    ones = draw(a.space, 'ones', seed, 0)
    law = tuple_law(a, [[ones] * a.arity])
    flat = cut_norm_estimate(w - stepping(w, SymmetricGridPartition.trivial(w.k)), trials, seed)
    
    print(f'{"Order":>12s}: {w.k}')
    print(f'{"Resolutions":>12s}: {w.resolutions}')
    print(f'{"Mean":>12s}: {w.mean():.12f}')
    print(f'{"Cut to mean":>12s}: {flat.value:.12f}' + (' (exact)' if flat.exhaustive else ''))
    for point, mass in zip(law.points, law.masses):
        print(f'{"atom":>12s}: {np.round(point, 9).tolist()} x {mass:.9f}')


@main.command('experiment')
@click.option('-c', '--config', 'config_file', help='Experiment JSON config',
              type=click.Path(exists=True, dir_okay=False, resolve_path=True), required=True)
@click.option('--seed', help='Run a single seed instead of the configured ones', type=int, default=None)
@click.option('--tol', help='Lévy-Prokhorov tolerance', type=float, default=None)
@click.option('--out', 'out_path', help='Output directory',
              type=click.Path(file_okay=False, resolve_path=True), default=None)
@click.option('--assert', 'check', help='Exit nonzero when a threshold is exceeded', is_flag=True)
@click.option('--log', 'log_path', help='tensorboard log directory',
              type=click.Path(file_okay=False, resolve_path=True), default=None)
def experiment_cmd(config_file, seed, tol, out_path, check, log_path):
    """Generate, profile and compare the configured models over the n schedule."""
    try:
        config = ExperimentConfig.load(config_file)
        config = config.override(seeds=[seed] if seed is not None else None, tol=tol, out=out_path)
    except (ArgumentError, DomainError, ValueError) as e:
        fail(f'invalid config "{config_file}": {e}')
    
    print(f'{" Start experiment ":-^40s}\n')
    print(f'{"Name":>12s}: {config.name}')
    print(f'{"Models":>12s}: {", ".join(config.labels)}')
    print(f'{"Sizes":>12s}: {config.n}')
    print(f'{"Seeds":>12s}: {config.seeds}')
    print(f'{"Workers":>12s}: {num_workers()}')
    print(f'{"Output":>12s}: {config.out}\n')
    
    try:
        results, failures = run_experiment(config, log_path)
    except OSError as e:
        fail(f'cannot write results: {e}')
    
    print(f'\n{" Results ":-^40s}\n')
    for _, row in results[results.metric != 'edge_density'].iterrows():
        print(f'{row.model:>12s} n={row.n:<5d} k={row.k} {row.metric:<10s} {row.target:<10s} {row.value:.6f}')
    
    if check and failures:
        for failure in failures:
            print(failure, file=sys.stderr)
        sys.exit(1)


if __name__ == '__main__':
    main()
