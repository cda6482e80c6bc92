from app.formula import execute
from app.management.base import FormulaTuningCommand
from app.utils.dataset_util import load_table
from app.utils.grid_util import render_value
from app.utils.jsonl_util import write_json


class Command(FormulaTuningCommand):
    help = 'Execute one formula against a table and print the result.'

    def add_arguments(self, parser):
        parser.add_argument('--table', required=True, help='JSON file holding a list of rows or a linear encoding.')
        parser.add_argument('--formula', required=True)
        self.add_out_argument(parser)

    def run(self, table, formula, out=None, **options):
        outcome = execute(formula, load_table(table))
        if out:
            write_json(out, {
                'formula': formula,
                'executable': outcome.executable,
                'value': outcome.value if outcome.executable else None,
                'display': render_value(outcome.value) if outcome.executable else None,
                'reason': outcome.reason,
                'detail': outcome.detail,
            })
        self.stdout.write(str(outcome))
