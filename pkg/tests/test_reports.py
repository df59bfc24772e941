import json
from fractions import Fraction

import pytest

from errors import EXIT_CHECK_FAILED, EXIT_OK
from hk_estimator import FAIL, NOT_APPLICABLE, PASS
from reports import ReportDocument, render_decimal, render_exact


class TestRendering:
    @pytest.mark.parametrize('value,expected', [
        (Fraction(4, 3), '1.333333333333'),
        (Fraction(2, 3), '0.666666666667'),
        (Fraction(3, 2), '1.500000000000'),
        (Fraction(-1, 8), '-0.125000000000'),
        (5, '5.000000000000'),
        (Fraction(1, 10**15), '0.000000000000'),
    ])
    def test_decimal(self, value, expected):
        assert render_decimal(value) == expected

    def test_half_even(self):
        assert render_decimal(Fraction(5, 2), places=0) == '2'
        assert render_decimal(Fraction(7, 2), places=0) == '4'
        assert render_decimal(Fraction(1, 8), places=2) == '0.12'

    def test_exact(self):
        assert render_exact(Fraction(6, 8)) == '3/4'
        assert render_exact(2) == '2'


@pytest.fixture
def doc():
    d = ReportDocument('segre', {'r': 2, 's': 2})
    d.add_value('ehk', Fraction(4, 3))
    d.add_value('mhk', Fraction(2, 3))
    d.add_check('sum_identity', True)
    d.add_check('rees_formulas', NOT_APPLICABLE)
    d.add_note('dimension', 3)
    d.add_table('ladder', ['q', 'ratio'], [[2, Fraction(3, 4)], [4, Fraction(11, 16)]])
    d.timing['elapsed_ms'] = 1.5
    return d


class TestDocument:
    def test_json_layout(self, doc):
        out = json.loads(doc.to_json())
        assert out['command'] == 'segre'
        assert out['inputs'] == {'r': 2, 's': 2}
        assert out['ehk'] == '4/3'
        assert out['ehk_decimal'] == '1.333333333333'
        assert out['mhk'] == '2/3'
        assert out['checks'] == {'sum_identity': PASS, 'rees_formulas': NOT_APPLICABLE}
        assert out['notes'] == {'dimension': 3}
        assert out['status'] == PASS
        assert 'timing' not in out

    def test_table_gains_decimal_columns(self, doc):
        table = doc.to_dict()['tables']['ladder']
        assert table['columns'] == ['q', 'ratio', 'ratio_decimal']
        assert table['rows'][0] == [2, '3/4', '0.750000000000']

    def test_timing_only_on_request(self, doc):
        assert json.loads(doc.to_json(include_timing=True))['timing'] == {'elapsed_ms': 1.5}

    def test_output_is_deterministic(self, doc):
        assert doc.to_json() == doc.to_json()
        assert doc.to_json().endswith('}\n')
        # keys follow insertion order, not alphabetical order
        assert list(json.loads(doc.to_json())) == [
            'command', 'inputs', 'ehk', 'ehk_decimal', 'mhk', 'mhk_decimal',
            'notes', 'checks', 'tables', 'status']

    def test_failed_check_sets_exit_code(self, doc):
        assert doc.exit_code == EXIT_OK
        doc.add_check('socle_count_oracle', False)
        assert doc.failed == ['socle_count_oracle']
        assert doc.exit_code == EXIT_CHECK_FAILED
        assert doc.to_dict()['status'] == FAIL

    def test_bad_status(self, doc):
        with pytest.raises(ValueError):
            doc.add_check('x', 'maybe')

    def test_csv(self, doc):
        doc.add_table('other', ['a'], [[1]])
        assert doc.to_csv() == (
            "# ladder\n"
            "q,ratio,ratio_decimal\n"
            "2,3/4,0.750000000000\n"
            "4,11/16,0.687500000000\n"
            "\n"
            "# other\n"
            "a\n"
            "1\n"
        )

    def test_save(self, doc, tmp_path):
        path = tmp_path / 'out.json'
        doc.save_results(path)
        assert json.loads(path.read_text())['mhk_decimal'] == '0.666666666667'
