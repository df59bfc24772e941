"""
runtime analysis for hk-lab
times the reference scenarios and checks each against its runtime limit
"""
import json
import logging
import time
import tracemalloc
from fractions import Fraction

import config
from hk_estimator import (FAIL, RingSpec, bounds_report, estimate_ehk,
                          hypersurface_ehk_lower_coefficient, mhk_gorenstein)
from polynomial import PolynomialRing
from quotient import canonical_cover_check, quotient_mhk, veronese_convergence
from segre import (SegreParams, segre_convergence, segre_ehk_closed, segre_finite_q,
                   segre_mhk_closed, socle_annihilator_count, sum_identity)
from stirling import (bell_numbers, falling_factorial_identity_check, stirling2,
                      stirling2_bruteforce, stirling2_explicit)

log = logging.getLogger(__name__)


# runtime limits per scenario (desk-scale machine)
RUNTIME_LIMITS = {
    'segre_closed_forms': {'name': 'segre (2,2) closed forms', 'max_runtime_ms': 1000},
    'segre_sum_identity': {'name': 'segre sum identity, r <= s <= 8', 'max_runtime_ms': 1000},
    'socle_oracle': {'name': 'socle count vs convolution', 'max_runtime_ms': 10000},
    'segre_convergence': {'name': 'segre (2,2) q ladder to 64', 'max_runtime_ms': 30000},
    'stirling_suite': {'name': 'stirling recurrence / explicit / brute force', 'max_runtime_ms': 5000},
    'bounds_suite': {'name': 'bound checks on quadric data', 'max_runtime_ms': 1000},
    'veronese_ladder': {'name': 'veronese e=2 lattice ladder to 81', 'max_runtime_ms': 60000},
    'quadric_hypersurface': {'name': 'quadric over F_5, q up to 125', 'max_runtime_ms': 300000},
}

QUICK_SCENARIOS = ('segre_closed_forms', 'segre_sum_identity', 'socle_oracle',
                   'segre_convergence', 'stirling_suite', 'bounds_suite')


def scenario_segre_closed_forms():
    p = SegreParams(2, 2)
    ehk, mhk = segre_ehk_closed(p), segre_mhk_closed(p)
    return ehk == Fraction(4, 3) and mhk == Fraction(2, 3) and ehk + mhk == 2


def scenario_segre_sum_identity():
    pairs = [SegreParams(r, s) for s in range(2, 9) for r in range(2, s + 1)]
    return all(segre_ehk_closed(p) + segre_mhk_closed(p) == sum_identity(p) for p in pairs)


def scenario_socle_oracle():
    ok = True
    for r, s in ((2, 2), (2, 3), (3, 3)):
        p = SegreParams(r, s)
        for q in (2, 3, 4, 5):
            ok &= socle_annihilator_count(p, q) == segre_finite_q(p, q).mhk_numerator
    return ok


def scenario_segre_convergence():
    _, verdict = segre_convergence(SegreParams(2, 2), (2, 4, 8, 16, 32, 64))
    return all(v.passed for v in verdict.values())


def scenario_stirling_suite():
    ok = all(stirling2(n, k) == stirling2_explicit(n, k) for n in range(31) for k in range(n + 1))
    ok &= all(stirling2(n, k) == stirling2_bruteforce(n, k)
              for n in range(11) for k in range(n + 1))
    ok &= all(falling_factorial_identity_check(n, x) for n in range(16) for x in range(11))
    bells = bell_numbers(15)
    return ok and all(sum(stirling2(n, k) for k in range(n + 1)) == bells[n] for n in range(16))


def scenario_bounds_suite():
    checks = bounds_report(2, Fraction(3, 2), Fraction(1, 2), 2, hypersurface=True)
    return (hypersurface_ehk_lower_coefficient(3) == Fraction(2, 3)
            and all(c.status != FAIL for c in checks))


def scenario_veronese_ladder():
    rows, verdict = veronese_convergence(2, (3, 9, 27, 81))
    covers = all(canonical_cover_check(g, h).status == 'pass'
                 for g in range(1, 61) for h in range(1, g + 1) if g % h == 0)
    return verdict.passed and covers and quotient_mhk(2) == Fraction(1, 2)


def scenario_quadric_hypersurface():
    ring = PolynomialRing(5, ('x', 'y', 'z'))
    x, y, z = ring.gens()
    spec = RingSpec(5, ('x', 'y', 'z'), (x ** 2 + y ** 2 + z ** 2,))
    ehk = estimate_ehk(spec, spec.ideal((x, y, z)), 3)
    mhk = mhk_gorenstein(spec, spec.ideal((y, z)), 3)
    return abs(ehk.value - Fraction(3, 2)) < Fraction(1, 20) and abs(mhk.value - Fraction(1, 2)) < Fraction(1, 20)


SCENARIOS = {
    'segre_closed_forms': scenario_segre_closed_forms,
    'segre_sum_identity': scenario_segre_sum_identity,
    'socle_oracle': scenario_socle_oracle,
    'segre_convergence': scenario_segre_convergence,
    'stirling_suite': scenario_stirling_suite,
    'bounds_suite': scenario_bounds_suite,
    'veronese_ladder': scenario_veronese_ladder,
    'quadric_hypersurface': scenario_quadric_hypersurface,
}


def measure_performance(fn):
    """run fn once; wall time via perf_counter, peak memory via tracemalloc"""
    tracemalloc.start()
    start = time.perf_counter()
    result = fn()
    elapsed = (time.perf_counter() - start) * 1000
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    return result, {'runtime_ms': elapsed, 'memory_kb': peak / 1024}


class PerformanceAnalyzer:
    """run scenarios and compare against runtime limits"""

    def __init__(self):
        self.results = {}

    def run_scenario(self, name):
        if name not in SCENARIOS:
            raise KeyError(f"unknown scenario {name!r}")
        log.info("running %s", name)
        passed, metrics = measure_performance(SCENARIOS[name])
        limit = RUNTIME_LIMITS[name]['max_runtime_ms']
        self.results[name] = {
            'passed': bool(passed),
            'runtime_ms': metrics['runtime_ms'],
            'memory_kb': metrics['memory_kb'],
            'runtime_limit_ms': limit,
            'within_limit': metrics['runtime_ms'] < limit,
        }
        return self.results[name]

    def analyze(self, names=QUICK_SCENARIOS):
        for name in names:
            self.run_scenario(name)
        return self.results

    def generate_comparison_report(self):
        print("=" * 80)
        print("hk-lab runtime report".upper().center(80))
        print("=" * 80)
        print(f"\n{'scenario':<45} {'ms':>10} {'limit':>10} {'kb':>8} {'result':>5}")
        print("-" * 80)
        for name, res in self.results.items():
            mark = "ok" if res['passed'] and res['within_limit'] else "FAIL"
            print(f"{RUNTIME_LIMITS[name]['name']:<45} {res['runtime_ms']:>10.1f} "
                  f"{res['runtime_limit_ms']:>10} {res['memory_kb']:>8.1f} {mark:>5}")
        print("=" * 80)

    def save_results(self, filename=None):
        filename = filename or config.RESULTS_FILE
        with open(filename, 'w') as f:
            json.dump(self.results, f, indent=2)
        log.info("results saved to %s", filename)
        return filename


def run_complete_analysis(names=None):
    analyzer = PerformanceAnalyzer()
    analyzer.analyze(tuple(SCENARIOS) if names is None else names)
    analyzer.generate_comparison_report()
    analyzer.save_results()
    return analyzer


if __name__ == "__main__":
    logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
    run_complete_analysis()
