#!/usr/bin/env python
"""
Exhaustive verification sweeps: reductions against the oracles on both
sides, formulas against the oracle of the property they define, compiled
arbiters against direct evaluation, bounded bodies against their
neighborhoods, and the Cook-Levin translation against the property of its
sentence.
"""
from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import conf
from .compiler import compile_formula_to_arbiter
from .cook_levin import cook_levin_program, cook_levin_translate
from .evaluator import VariableAssignment, evaluate, satisfies
from .formulas import free_relations, nesting_radius, split_local, split_prefix
from .games import arbitrate
from .graphs import (
    LabeledGraph, enumerate_graphs, enumerate_id_assignments, format_lg, generate_small_ids,
)
from .oracles import check_property
from .reductions import (
    SatGraphTo3SatGraph, ThreeSatGraphToThreeColorable, get_reduction, run_reduction,
    validate_cluster_map,
)
from .structures import structural_neighborhood, structural_representation

logger = logging.getLogger(__name__)

# labels over at most four variables, from trivial to needing auxiliaries
BOOLEAN_LABELS = (
    'x1', '!x1', 'x1|!x2', 'x1&!x1', 'x1|x2|x3|x4', '!x1&(x2|!x3)',
    '(x1|!x2)&(!x1|x2)', 'x1&x2&x3&x4', '(x1&x2)|(!x3&x4)', 'false',
)
THREE_CNF_LABELS = (
    'x1', '!x1', 'x1|!x2|!x3', 'x3|x4|!x5', '(x1|x2)&(!x1|x2)&(!x2)', 'true',
)


@dataclass(frozen=True)
class SweepRecord:
    instance: str
    expected: bool
    observed: bool
    # side conditions, e.g. the cluster-map condition of a reduction
    valid: bool = True

    @property
    def agrees(self):
        return self.valid and self.expected == self.observed


@dataclass
class SweepReport:
    name: str
    records: list = field(default_factory=list)

    @property
    def total(self):
        return len(self.records)

    @property
    def disagreements(self):
        return [r for r in self.records if not r.agrees]

    @property
    def ok(self):
        return not self.disagreements

    def summary(self):
        positives = sum(r.expected for r in self.records)
        lines = [
            f'{"sweep":<24} {"instances":>9} {"true":>6} {"false":>6} {"mismatches":>10}',
            f'{self.name:<24} {self.total:>9} {positives:>6} {self.total - positives:>6} '
            f'{len(self.disagreements):>10}',
        ]
        for record in self.disagreements:
            lines.append(f'mismatch (expected {record.expected}, got {record.observed}'
                         f'{"" if record.valid else ", side condition failed"}):')
            lines.append(record.instance.rstrip())
        return '\n'.join(lines)

    def as_dict(self):
        return {
            'name': self.name,
            'total': self.total,
            'ok': self.ok,
            'records': [
                {'instance': r.instance, 'expected': r.expected, 'observed': r.observed,
                 'valid': r.valid}
                for r in self.records
            ],
        }


def _map(work, items, jobs):
    """Apply `work` to every item, in item order whatever the job count."""
    jobs = jobs or conf.get('LPH_JOBS')
    if jobs <= 1:
        return [work(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, items))


def boolean_corpus(labels=BOOLEAN_LABELS, max_nodes=2):
    """Single nodes and (for max_nodes >= 2) single edges over the labels."""
    yield from (LabeledGraph.build(['v0'], (), {'v0': label}) for label in labels)
    if max_nodes >= 2:
        for first, second in itertools.combinations_with_replacement(labels, 2):
            yield LabeledGraph.build(['v0', 'v1'], [('v0', 'v1')], {'v0': first, 'v1': second})


def reduction_instances(reduction, max_nodes):
    if reduction.program.name == ThreeSatGraphToThreeColorable.name:
        return list(boolean_corpus(THREE_CNF_LABELS, min(max_nodes, 2)))
    if reduction.boolean_input:
        return list(boolean_corpus(BOOLEAN_LABELS, min(max_nodes, 2)))
    return list(enumerate_graphs(max_nodes, ('0', '1')))


def verify_reduction(name, max_nodes=4, seed=None, jobs=None, instances=None):
    """
    For every instance g: the source property on g against the target
    property on the reduced graph, plus the cluster-map condition.
    """
    reduction = get_reduction(name)
    if reduction.source is None:
        source = target = 'allselected'
    else:
        source, target = reduction.source, reduction.target
    seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed
    instances = reduction_instances(reduction, max_nodes) if instances is None else instances

    def check(g):
        ids = generate_small_ids(g, 1, seed)
        cg = run_reduction(reduction.program, g, ids)
        valid = validate_cluster_map(cg, g)
        return SweepRecord(format_lg(g, ids), check_property(source, g),
                           check_property(target, cg.output), valid)

    report = SweepReport(name, _map(check, instances, jobs))
    logger.info('%s: %d instances, %d mismatches', name, report.total,
                len(report.disagreements))
    return report


def verify_formula(f, property_name, max_nodes=4, labels=('',), jobs=None, name=None):
    """The formula against the property oracle on every enumerated graph."""
    instances = list(enumerate_graphs(max_nodes, labels))

    def check(g):
        return SweepRecord(format_lg(g), check_property(property_name, g), satisfies(g, f))

    report = SweepReport(name or property_name, _map(check, instances, jobs))
    logger.info('%s: %d graphs, %d mismatches', report.name, report.total,
                len(report.disagreements))
    return report


def verify_cook_levin(f, property_name, max_nodes=3, seed=None, compose=False, jobs=None):
    """
    The Boolean graph of f on every empty-label graph against the property
    oracle; with `compose`, also through the 3-CNF and 3-coloring steps.
    """
    seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed
    instances = list(enumerate_graphs(max_nodes))
    rho = cook_levin_program(f).rho

    def check(g):
        ids = generate_small_ids(g, rho, seed)
        translated = cook_levin_translate(f, g, ids)
        observed = check_property('satgraph', translated)
        consistent = True
        if compose:
            cnf = run_reduction(SatGraphTo3SatGraph(), translated, ids).output
            colored = run_reduction(ThreeSatGraphToThreeColorable(), cnf, ids).output
            consistent = check_property('3colorable', colored) == observed
        return SweepRecord(format_lg(g, ids), check_property(property_name, g), observed,
                           consistent)

    report = SweepReport(f'cook-levin/{property_name}', _map(check, instances, jobs))
    logger.info('%s: %d graphs, %d mismatches', report.name, report.total,
                len(report.disagreements))
    return report


def verify_arbiter(f, max_nodes=4, labels=('',), id_count=3, seed=None, jobs=None, name=None):
    """
    The game of the compiled arbiter of f against direct evaluation, on every
    enumerated graph under up to `id_count` distinct identifier assignments.
    """
    arbiter = compile_formula_to_arbiter(f)
    seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed
    instances = [
        (g, ids)
        for g in enumerate_graphs(max_nodes, labels)
        for ids in enumerate_id_assignments(g, arbiter.spec.rho, id_count, seed)
    ]

    def check(instance):
        g, ids = instance
        return SweepRecord(format_lg(g, ids), satisfies(g, f),
                           arbitrate(arbiter.program, g, ids, arbiter.spec))

    report = SweepReport(f'arbiter/{name or "formula"}', _map(check, instances, jobs))
    logger.info('%s: %d runs, %d mismatches', report.name, report.total,
                len(report.disagreements))
    return report


def _interpretations(domain, arities, seed):
    """Empty, full and one seeded random interpretation of the relations."""
    rng = random.Random(seed)
    tuples = {name: list(itertools.product(domain, repeat=k)) for name, k in arities.items()}
    return {
        'empty': {name: set() for name in arities},
        'full': {name: set(found) for name, found in tuples.items()},
        'random': {name: {t for t in found if rng.random() < 0.5}
                   for name, found in tuples.items()},
    }


def verify_locality(f, max_nodes=5, labels=('',), seed=None, jobs=None, name=None):
    """
    The bounded body of f at every node v, evaluated on the whole structure
    and on the structure of the r-neighborhood of v (r its nesting radius),
    under several interpretations of its relation variables.
    """
    _, matrix = split_prefix(f)
    var, body = split_local(matrix)
    r = nesting_radius(body)
    arities = free_relations(body)
    seed = conf.get('LPH_DEFAULT_SEED') if seed is None else seed

    def check(g):
        s = structural_representation(g)
        records = []
        for kind, relations in _interpretations(s.domain, arities, seed).items():
            for v in g.nodes:
                local = structural_neighborhood(g, v, r)
                kept = set(local.domain)
                restricted = {
                    name: {t for t in found if kept.issuperset(t)}
                    for name, found in relations.items()
                }
                records.append(SweepRecord(
                    f'{format_lg(g)}at {v}, {kind} relations\n',
                    evaluate(s, body, VariableAssignment({var: v}, relations)),
                    evaluate(local, body, VariableAssignment({var: v}, restricted)),
                ))
        return records

    found = _map(check, list(enumerate_graphs(max_nodes, labels)), jobs)
    report = SweepReport(f'locality/{name or "formula"}', list(itertools.chain(*found)))
    logger.info('%s: radius %d, %d evaluations, %d mismatches', report.name, r, report.total,
                len(report.disagreements))
    return report
