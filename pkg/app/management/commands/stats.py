from dataclasses import asdict

from app.management.base import FormulaTuningCommand
from app.utils.constants import MODE
from app.utils.dataset_util import load_responses, load_tasks
from app.utils.evaluation_util import mean_layout, mean_stats, pair_records, safe_formula_stats
from app.utils.grid_util import table_layout
from app.utils.judge_util import parse_model_output
from app.utils.jsonl_util import write_json


class Command(FormulaTuningCommand):
    help = 'Formula statistics (length, operators, variables) and table layout statistics.'

    def add_arguments(self, parser):
        parser.add_argument('--dataset', required=True)
        parser.add_argument('--responses', help='Symbolic responses whose formulas are measured.')
        self.add_out_argument(parser)

    def run(self, dataset, responses=None, out=None, **options):
        tasks = load_tasks(dataset)
        report = {
            'tables': {key: asdict(table_layout(task.table)) for key, task in tasks.items()},
            'table_layout': mean_layout(list(tasks.values())),
        }
        formulas, skipped = {}, 0
        if responses:
            for record, _ in pair_records(load_responses(responses), tasks):
                if record['mode'] != MODE.SYMBOLIC:
                    continue
                parsed = parse_model_output(record['output'], MODE.SYMBOLIC)
                stats = safe_formula_stats(parsed.formula) if parsed.format_ok else None
                if stats is None:
                    skipped += 1
                    continue
                formulas[record['id']] = stats
            report['formulas'] = {key: {'formula_length': stats.length, 'n_operators': stats.n_operators,
                                        'n_variables': stats.n_variables} for key, stats in formulas.items()}
            report['formula_stats'] = mean_stats(list(formulas.values()))
            report['skipped'] = skipped
        if out:
            write_json(out, report)
        layout = report['table_layout']
        message = f'{len(tasks)} tables, mean area {layout["area"]:.2f}'
        if responses:
            message += f'; {len(formulas)} formulas measured, {skipped} skipped'
        self.summary(message)
