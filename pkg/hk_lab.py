"""
hk-lab - command line entry point

    python hk_lab.py segre 2 2
    python hk_lab.py stirling 4 3
    python hk_lab.py mhk --spec specs/quadric.hk --emax 3
"""
import argparse
import json
import logging
import sys
import time
from fractions import Fraction

import config
from errors import (EXIT_INPUT_ERROR, BudgetExceeded, HKLabError, InvalidParameters,
                    NotGorensteinQuotient)
from groebner import bracket_power
from hk_estimator import (NOT_APPLICABLE, bounds_report, ehk_samples, estimate_ehk,
                          extrapolate, mhk_gorenstein, probe_diagonal_hypersurface,
                          relative_hk_sample)
from length_oracle import graded_quotient_length
from performance_analysis import QUICK_SCENARIOS, SCENARIOS, PerformanceAnalyzer
from quotient import (QuotientParams, VeroneseParams, canonical_cover_check, quotient_ehk,
                      quotient_ehk_ideal, quotient_mhk, veronese_convergence,
                      veronese_extended_length)
from reports import ReportDocument
from segre import (SegreParams, gorenstein_sum, rees_formulas, segre_bracket_length,
                   segre_convergence, segre_ehk_closed, segre_finite_q, segre_mhk_closed,
                   segre_mhk_pair_sum_form, segre_multiplicity, socle_annihilator_count,
                   sum_identity, truncated_sum_limit)
from spec_parser import InputSpec, load_spec, render_spec
from stirling import stirling2, stirling2_explicit

log = logging.getLogger('hk_lab')

# oracle checks are only attempted while q stays small
ORACLE_MAX_Q = 8
LENGTH_ORACLE_MAX_Q = 25

# odd q keep e = 2 on its exact (3q^2 - 1)/2 branch
VERONESE_Q_LADDER = (3, 9, 27, 81)

# quotient invariants of order 2 vs. the quadric cone estimates
QUADRIC_TOLERANCE = 0.05


# ---- helpers ----

def _add_estimate(doc, estimate, prefix=''):
    doc.add_value(f'{prefix}estimate', estimate.value)
    doc.add_value(f'{prefix}last_sample', estimate.last_sample)
    if estimate.two_point_fit is not None:
        doc.add_value(f'{prefix}two_point_fit', estimate.two_point_fit)
    doc.add_note(f'{prefix}method', estimate.method)
    doc.add_note(f'{prefix}monotone', estimate.monotone)


def _samples_table(doc, name, samples):
    rows = []
    for s in samples:
        row = [s.e, s.q, s.length, s.ratio]
        if s.parts:
            row += list(s.parts)
        rows.append(row)
    columns = ['e', 'q', 'length', 'ratio']
    if samples.samples and samples.samples[0].parts:
        columns += ['outer_length', 'inner_length']
    doc.add_table(name, columns, rows)


def _e_max(params):
    e_max = params.get('emax')
    if e_max is None:
        return config.DEFAULT_E_MAX
    if e_max < 1:
        raise InvalidParameters(f"--emax must be >= 1, got {e_max}")
    return e_max


def _ring_inputs(spec, params):
    return {'spec': render_spec(spec), 'dimension': params.get('dimension')}


def _close(a, b):
    return abs(Fraction(a) - Fraction(b)) < Fraction(str(QUADRIC_TOLERANCE))


def _quadric_cross_match(doc, spec, params, group_order, ehk, mhk, ladder_ratios=()):
    """
    compare order-2 quotient invariants with e_HK(m) and m_HK via J estimated on
    the ring in --spec (the quadric cone); returns the m_HK estimate or None
    """
    if not spec.variables:
        return None
    doc.inputs['spec'] = render_spec(spec)
    if group_order != 2:
        doc.add_check('quadric_ehk_match', NOT_APPLICABLE)
        doc.add_check('quadric_mhk_match', NOT_APPLICABLE)
        return None
    ring = spec.ring_spec(params.get('dimension'))
    e_max, budget, workers = _e_max(params), params.get('budget'), params.get('workers', 1)
    quadric_ehk = estimate_ehk(ring, spec.ideal(None), e_max, budget, workers).value
    quadric_mhk = mhk_gorenstein(ring, spec.ideal('J'), e_max, budget, workers).value
    doc.add_value('quadric_ehk', quadric_ehk)
    doc.add_value('quadric_mhk', quadric_mhk)
    doc.add_check('quadric_ehk_match', all(_close(x, quadric_ehk) for x in (ehk, *ladder_ratios)))
    doc.add_check('quadric_mhk_match', _close(mhk, quadric_mhk))
    return quadric_mhk


# ---- commands ----

def cmd_stirling(spec, params):
    n, k = params['n'], params['k']
    doc = ReportDocument('stirling', {'n': n, 'k': k})
    value = stirling2(n, k)
    doc.add_value('value', value)
    doc.add_check('explicit_sum_agrees', value == stirling2_explicit(n, k))
    return doc


def cmd_segre(spec, params):
    p = SegreParams(params['r'], params['s'])
    ladder = params.get('q_ladder') or config.DEFAULT_Q_LADDER
    doc = ReportDocument('segre', {'r': p.r, 's': p.s, 'q_ladder': list(ladder)})
    ehk, mhk = segre_ehk_closed(p), segre_mhk_closed(p)
    doc.add_value('ehk', ehk)
    doc.add_value('mhk', mhk)
    doc.add_value('ehk_plus_mhk', ehk + mhk)
    doc.add_value('truncated_limit', truncated_sum_limit(p))
    doc.add_note('dimension', p.d)
    doc.add_note('multiplicity', segre_multiplicity(p))

    doc.add_check('sum_identity', ehk + mhk == sum_identity(p))
    doc.add_check('mhk_alternative_form', mhk == segre_mhk_pair_sum_form(p))
    if p.r == 2:
        doc.add_check('rees_formulas', rees_formulas(p.s) == (ehk, mhk))
    else:
        doc.add_check('rees_formulas', NOT_APPLICABLE)
    if p.is_gorenstein:
        doc.add_check('gorenstein_sum', gorenstein_sum(p.r) == ehk + mhk)
        for c in bounds_report(segre_multiplicity(p), ehk, mhk, p.d,
                               hypersurface=(p.r == p.s == 2)):
            doc.add_check(c.name, c.status)
    else:
        doc.add_check('gorenstein_sum', NOT_APPLICABLE)

    socle_ok = bracket_ok = True
    for q in ladder:
        if q > ORACLE_MAX_Q:
            continue
        counts = segre_finite_q(p, q)
        try:
            socle_ok &= socle_annihilator_count(p, q) == counts.mhk_numerator
            bracket_ok &= segre_bracket_length(p, q) == counts.ehk_numerator
        except BudgetExceeded as exc:
            log.warning("oracle skipped at q=%d: %s", q, exc)
    doc.add_check('socle_count_oracle', socle_ok)
    doc.add_check('bracket_length_oracle', bracket_ok)

    rows, verdict = segre_convergence(p, ladder)
    doc.add_table('ladder', ['q', 'ehk_ratio', 'mhk_ratio', 'truncated_ratio',
                             'ehk_error', 'mhk_error', 'truncated_error'],
                  [[r.q, r.ehk_ratio, r.mhk_ratio, r.truncated_ratio,
                    r.ehk_error, r.mhk_error, r.truncated_error] for r in rows])
    for name, v in verdict.items():
        doc.add_check(f'{name}_convergence', v.passed)
    return doc


def cmd_rees(spec, params):
    s = params['s']
    doc = ReportDocument('rees', {'s': s})
    ehk, mhk = rees_formulas(s)
    doc.add_value('ehk', ehk)
    doc.add_value('mhk', mhk)
    p = SegreParams(2, s)
    doc.add_check('matches_segre_closed_forms', (ehk, mhk) == (segre_ehk_closed(p), segre_mhk_closed(p)))
    return doc


def cmd_veronese(spec, params):
    v = VeroneseParams(params['e'])
    ladder = params.get('q_ladder') or VERONESE_Q_LADDER
    doc = ReportDocument('veronese', {'e': v.e, 'q_ladder': list(ladder)})
    ehk, mhk = quotient_ehk(v.quotient_params()), quotient_mhk(v.group_order)
    doc.add_value('ehk', ehk)
    doc.add_value('mhk', mhk)
    doc.add_note('mu', v.mu)
    extended = veronese_extended_length(v.e)
    doc.add_check('mu_matches_extended_length', extended == v.mu)
    doc.add_check('ideal_formula_agrees', quotient_ehk_ideal(v.group_order, extended) == ehk)
    doc.add_check('mhk_le_ehk', mhk <= ehk)
    rows, verdict = veronese_convergence(v.e, ladder)
    doc.add_table('ladder', ['q', 'length', 'ratio', 'error'],
                  [[r.q, r.length, r.ratio, r.error] for r in rows])
    doc.add_note('error_decreasing', verdict.decreasing)
    doc.add_check('ladder_within_threshold', verdict.final_error < verdict.threshold)
    _quadric_cross_match(doc, spec, params, v.group_order, ehk, mhk, (rows[-1].ratio,))
    return doc


def cmd_quotient(spec, params):
    qp = QuotientParams(params['order'], params['mu'], params.get('char'))
    doc = ReportDocument('quotient', {'order': qp.group_order, 'mu': qp.mu,
                                      'char': qp.characteristic,
                                      'subgroup': params.get('subgroup')})
    ehk, mhk = quotient_ehk(qp), quotient_mhk(qp.group_order)
    doc.add_value('ehk', ehk)
    doc.add_value('mhk', mhk)
    doc.add_check('mhk_le_ehk', mhk <= ehk)
    quadric_mhk = _quadric_cross_match(doc, spec, params, qp.group_order, ehk, mhk)
    if params.get('subgroup') is not None:
        check = canonical_cover_check(qp.group_order, params['subgroup'], qp.characteristic,
                                      quadric_estimate=quadric_mhk, tolerance=QUADRIC_TOLERANCE)
        doc.add_value('cover_mhk', check.mhk_cover)
        doc.add_note('cover_index', check.index)
        doc.add_note('cover_index_coprime', check.index_coprime)
        doc.add_check('canonical_cover', check.status)
        if quadric_mhk is not None:
            doc.add_check('cover_quadric_estimate', check.estimate_status)
    return doc


def _oracle_check(doc, ring, ideal, samples):
    """confirm engine lengths by the linear algebra oracle for small homogeneous cases"""
    if not (ideal.is_homogeneous() and all(f.is_homogeneous() for f in ring.relations)):
        doc.add_check('length_oracle', NOT_APPLICABLE)
        return
    ok = True
    for s in samples:
        if s.q > LENGTH_ORACLE_MAX_Q:
            continue
        ok &= graded_quotient_length(bracket_power(ideal, s.q), ring.relations) == s.length
    doc.add_check('length_oracle', ok)


def cmd_ehk(spec, params):
    ring = spec.ring_spec(params.get('dimension'))
    ideal = spec.ideal(params.get('ideal'))
    e_max = _e_max(params)
    doc = ReportDocument('ehk', {**_ring_inputs(spec, params), 'ideal': params.get('ideal'),
                                 'emax': e_max})
    samples = ehk_samples(ring, ideal, e_max, params.get('budget'), params.get('workers', 1))
    _samples_table(doc, 'samples', samples)
    if len(samples) >= 2:
        _add_estimate(doc, extrapolate(samples))
    else:
        doc.add_value('last_sample', samples.samples[-1].ratio)
    if params.get('oracle'):
        _oracle_check(doc, ring, ideal, samples)
    if ring.is_regular:
        doc.add_check('regular_ratios_one', all(r == 1 for r in samples.ratios()))
    return doc


def cmd_mhk(spec, params):
    ring = spec.ring_spec(params.get('dimension'))
    name = params.get('ideal') or 'J'
    J = spec.ideal(name)
    e_max = _e_max(params)
    doc = ReportDocument('mhk', {**_ring_inputs(spec, params), 'ideal': name, 'emax': e_max})
    estimate = mhk_gorenstein(ring, J, e_max, params.get('budget'), params.get('workers', 1))
    _samples_table(doc, 'samples', estimate.samples)
    _add_estimate(doc, estimate)
    doc.add_check('mhk_samples_in_unit_interval',
                  all(0 <= r <= 1 for r in estimate.samples.ratios()))
    if ring.is_regular:
        doc.add_check('regular_mhk_one', all(r == 1 for r in estimate.samples.ratios()))
    return doc


def cmd_relhk(spec, params):
    ring = spec.ring_spec(params.get('dimension'))
    name, name2 = params.get('ideal') or 'J', params.get('ideal2')
    I, Iprime = spec.ideal(name), spec.ideal(name2)
    e_max = _e_max(params)
    budget, workers = params.get('budget'), params.get('workers', 1)
    doc = ReportDocument('relhk', {**_ring_inputs(spec, params), 'ideal': name, 'ideal2': name2,
                                   'emax': e_max})
    estimate = relative_hk_sample(ring, I, Iprime, e_max, budget, workers)
    _samples_table(doc, 'samples', estimate.samples)
    _add_estimate(doc, estimate)
    maximal = ehk_samples(ring, spec.ideal(None), e_max, budget, workers)
    doc.add_check('relative_le_ehk', all(a.ratio <= b.ratio for a, b in zip(estimate.samples, maximal)))
    # lower side against m_HK samples of the ring file's ideal J, when it declares one
    status = NOT_APPLICABLE
    if 'J' in spec.ideals:
        try:
            mhk = mhk_gorenstein(ring, spec.ideal('J'), e_max, budget, workers)
        except NotGorensteinQuotient:
            log.info("J does not give a gorenstein quotient, skipping relative_ge_mhk")
        else:
            status = all(a.ratio >= b.ratio for a, b in zip(estimate.samples, mhk.samples))
    doc.add_check('relative_ge_mhk', status)
    return doc


def cmd_bounds(spec, params):
    try:
        e_mult, ehk, mhk = (Fraction(params[k]) for k in ('e_mult', 'ehk', 'mhk'))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameters(f"bounds need rationals like 3/2: {exc}") from exc
    d, hyper = params['dim'], params.get('hypersurface', False)
    doc = ReportDocument('bounds', {'e_mult': str(e_mult), 'ehk': str(ehk), 'mhk': str(mhk),
                                    'dim': d, 'hypersurface': hyper})
    for c in bounds_report(e_mult, ehk, mhk, d, hyper):
        doc.add_check(c.name, c.status)
        if c.bound is not None:
            doc.add_value(f'{c.name}_bound', c.bound)
    return doc


def cmd_probe(spec, params):
    p, d = params['char'], params['dim']
    e_max = _e_max(params)
    doc = ReportDocument('probe-q26', {'char': p, 'dim': d, 'emax': e_max})
    report = probe_diagonal_hypersurface(p, d, e_max, params.get('budget'), params.get('workers', 1))
    _samples_table(doc, 'samples', report.estimate.samples)
    _add_estimate(doc, report.estimate)
    doc.add_value('conjectural', report.conjectural)
    return doc


def cmd_bench(spec, params):
    names = params.get('scenarios') or QUICK_SCENARIOS
    unknown = [n for n in names if n not in SCENARIOS]
    if unknown:
        raise InvalidParameters(f"unknown scenarios {unknown}; known: {', '.join(SCENARIOS)}")
    doc = ReportDocument('bench', {'scenarios': list(names)})
    analyzer = PerformanceAnalyzer()
    for name in names:
        res = analyzer.run_scenario(name)
        doc.add_check(name, res['passed'])
        doc.timing[name] = {'runtime_ms': round(res['runtime_ms'], 3),
                            'memory_kb': round(res['memory_kb'], 3),
                            'within_limit': res['within_limit']}
    if params.get('out_results'):
        analyzer.save_results(params['out_results'])
    return doc


HANDLERS = {
    'stirling': cmd_stirling,
    'segre': cmd_segre,
    'rees': cmd_rees,
    'veronese': cmd_veronese,
    'quotient': cmd_quotient,
    'ehk': cmd_ehk,
    'mhk': cmd_mhk,
    'relhk': cmd_relhk,
    'bounds': cmd_bounds,
    'probe-q26': cmd_probe,
    'bench': cmd_bench,
}


def run_command(spec, command, params=None):
    """dispatch command; params default to spec.params"""
    if command not in HANDLERS:
        raise InvalidParameters(f"unknown command {command!r}")
    params = spec.params if params is None else params
    start = time.perf_counter()
    doc = HANDLERS[command](spec, params)
    doc.timing['elapsed_ms'] = round((time.perf_counter() - start) * 1000, 3)
    return doc


# ---- argument parsing ----

def _ladder(text):
    try:
        values = tuple(int(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q ladder {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"q ladder needs positive ints, got {text!r}")
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--spec', help='ring spec file (.hk)')
    common.add_argument('--emax', type=int, help='largest frobenius exponent e')
    common.add_argument('--q-ladder', type=_ladder, dest='q_ladder', help='comma separated q values')
    common.add_argument('--budget', type=int, help='reduction step budget per groebner run')
    common.add_argument('--workers', type=int, default=1, help='processes for per-q work')
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument('--json', dest='fmt', action='store_const', const='json')
    fmt.add_argument('--csv', dest='fmt', action='store_const', const='csv')
    common.add_argument('--out', help='write the report here instead of stdout')
    common.add_argument('--timing', action='store_true', help='include timing metadata')
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(prog='hk-lab',
                                     description='hilbert-kunz multiplicity toolkit')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('stirling', parents=[common], help='stirling number S(n,k)')
    p.add_argument('n', type=int)
    p.add_argument('k', type=int)

    p = sub.add_parser('segre', parents=[common], help='segre product k[x_1..x_r] # k[y_1..y_s]')
    p.add_argument('r', type=int)
    p.add_argument('s', type=int)

    p = sub.add_parser('rees', parents=[common], help='rees algebra of (y_1..y_s)')
    p.add_argument('s', type=int)

    p = sub.add_parser('veronese', parents=[common], help='e-th veronese of k[x,y]')
    p.add_argument('e', type=int)

    p = sub.add_parser('quotient', parents=[common], help='quotient singularity S^G')
    p.add_argument('--order', type=int, required=True, help='|G|')
    p.add_argument('--mu', type=int, required=True, help='generators of S as an S^G-module')
    p.add_argument('--char', type=int)
    p.add_argument('--subgroup', type=int, help='|H| for the canonical cover check')

    for name, helptext in (('ehk', 'e_HK samples of an ideal'),
                           ('mhk', 'm_HK of a gorenstein ring via J and J:m'),
                           ('relhk', 'relative samples of a colength-one pair')):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument('--ideal', help='named ideal from the .hk file')
        p.add_argument('--dimension', type=int, help='override dim A')
        if name == 'relhk':
            p.add_argument('--ideal2', required=True, help="the larger ideal I'")
        if name == 'ehk':
            p.add_argument('--oracle', action='store_true',
                           help='confirm lengths by linear algebra for q <= 25')

    p = sub.add_parser('bounds', parents=[common], help='inequality suite on given values')
    p.add_argument('--e-mult', dest='e_mult', required=True)
    p.add_argument('--ehk', required=True)
    p.add_argument('--mhk', required=True)
    p.add_argument('--dim', type=int, required=True)
    p.add_argument('--hypersurface', action='store_true')

    p = sub.add_parser('probe-q26', parents=[common], help='diagonal hypersurface m_HK probe')
    p.add_argument('--char', type=int, required=True)
    p.add_argument('--dim', type=int, required=True)

    p = sub.add_parser('bench', parents=[common], help='time the reference scenarios')
    p.add_argument('scenarios', nargs='*', help=f"any of: {', '.join(SCENARIOS)}")
    p.add_argument('--results', dest='out_results', help='also write raw benchmark json')
    return parser


def configure_logging(verbose):
    level = config.LOG_LEVEL
    if verbose == 1:
        level = 'INFO'
    elif verbose > 1:
        level = 'DEBUG'
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr)


def _report_error(info, exit_code):
    log.error("%s", info['message'])
    sys.stdout.write(json.dumps({'error': info}, indent=2) + '\n')
    return exit_code


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    params = {k: v for k, v in vars(args).items() if v is not None}
    fmt = args.fmt or ('text' if args.command == 'stirling' else 'json')
    try:
        spec = load_spec(args.spec) if args.spec else InputSpec()
        spec.params = params
        doc = run_command(spec, args.command)
        if fmt == 'text':
            output = ''.join(f"{v}\n" for v in doc.values.values())
        else:
            output = doc.render(fmt, include_timing=args.timing)
        if args.out:
            with open(args.out, 'w', encoding='utf-8') as f:
                f.write(output)
        else:
            sys.stdout.write(output)
    except HKLabError as exc:
        return _report_error(exc.to_dict(), exc.exit_code)
    except OSError as exc:
        return _report_error({'code': 'io_error', 'message': str(exc)}, EXIT_INPUT_ERROR)
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
