"""
report documents: exact values as "num/den" strings with 12-place decimals,
tri-state check flags, sample tables; rendered to json or csv
"""
import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from config import DECIMAL_PLACES
from errors import EXIT_CHECK_FAILED, EXIT_OK
from hk_estimator import FAIL, NOT_APPLICABLE, PASS

STATUSES = (PASS, FAIL, NOT_APPLICABLE)


def render_exact(value):
    return str(Fraction(value))


def render_decimal(value, places=DECIMAL_PLACES):
    """round-half-even to a fixed number of places, never in exponent form"""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = len(str(abs(value.numerator))) + len(str(value.denominator)) + places + 20
        ctx.rounding = ROUND_HALF_EVEN
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        return format(exact.quantize(Decimal(1).scaleb(-places)), 'f')


def _cell(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return render_exact(value)
    return value


class ReportDocument:
    """structured result of one command"""

    def __init__(self, command, inputs=None):
        self.command = command
        self.inputs = dict(inputs or {})
        self.values = {}
        self.checks = {}
        self.notes = {}
        self.tables = {}
        self.timing = {}

    def add_value(self, name, value):
        self.values[name] = Fraction(value)

    def add_check(self, name, status):
        if isinstance(status, bool):
            status = PASS if status else FAIL
        if status not in STATUSES:
            raise ValueError(f"check status must be one of {STATUSES}, got {status!r}")
        self.checks[name] = status

    def add_note(self, name, value):
        self.notes[name] = value

    def add_table(self, name, columns, rows):
        """rational columns gain a <name>_decimal companion"""
        rows = [list(r) for r in rows]
        rational = [any(isinstance(r[i], Fraction) for r in rows) for i in range(len(columns))]
        out_cols = []
        for col, is_rat in zip(columns, rational):
            out_cols.append(col)
            if is_rat:
                out_cols.append(f"{col}_decimal")
        out_rows = []
        for r in rows:
            cells = []
            for v, is_rat in zip(r, rational):
                cells.append(_cell(v))
                if is_rat:
                    cells.append(render_decimal(v) if v is not None else None)
            out_rows.append(cells)
        self.tables[name] = (out_cols, out_rows)

    @property
    def failed(self):
        return [name for name, status in self.checks.items() if status == FAIL]

    @property
    def exit_code(self):
        return EXIT_CHECK_FAILED if self.failed else EXIT_OK

    def to_dict(self, include_timing=False):
        out = {'command': self.command, 'inputs': self.inputs}
        for name, value in self.values.items():
            out[name] = render_exact(value)
            out[f"{name}_decimal"] = render_decimal(value)
        if self.notes:
            out['notes'] = self.notes
        if self.checks:
            out['checks'] = self.checks
        if self.tables:
            out['tables'] = {name: {'columns': cols, 'rows': rows}
                             for name, (cols, rows) in self.tables.items()}
        out['status'] = FAIL if self.failed else PASS
        if include_timing and self.timing:
            out['timing'] = self.timing
        return out

    def to_json(self, include_timing=False):
        return json.dumps(self.to_dict(include_timing), indent=2) + '\n'

    def to_csv(self):
        """one block per table: a '# name' line, the header, the rows"""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        for i, (name, (cols, rows)) in enumerate(self.tables.items()):
            if i:
                buf.write('\n')
            buf.write(f"# {name}\n")
            writer.writerow(cols)
            writer.writerows(rows)
        return buf.getvalue()

    def render(self, fmt='json', include_timing=False):
        if fmt == 'csv':
            return self.to_csv()
        return self.to_json(include_timing)

    def save_results(self, filename, fmt='json', include_timing=False):
        with open(filename, 'w', encoding='utf-8') as f:
            f.write(self.render(fmt, include_timing))
