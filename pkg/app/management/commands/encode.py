from app.management.base import FormulaTuningCommand
from app.utils.dataset_util import load_table, load_tasks
from app.utils.grid_util import encode_linear
from app.utils.jsonl_util import write_jsonl


class Command(FormulaTuningCommand):
    help = 'Linearize a table (or every dataset table) into the A1-address encoding.'

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--table', help='JSON file holding one table as a list of rows.')
        source.add_argument('--dataset', help='Dataset JSON-lines file.')
        self.add_out_argument(parser)

    def run(self, table=None, dataset=None, out=None, **options):
        if table:
            self.stdout.write(encode_linear(load_table(table)))
            return
        records = [{'id': key, 'encoding': encode_linear(task.table)} for key, task in load_tasks(dataset).items()]
        if out:
            write_jsonl(out, records)
        self.summary(f'Encoded {len(records)} tables.')
