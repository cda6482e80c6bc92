from app.management.base import FormulaTuningCommand
from app.utils.dataset_util import load_responses, load_tasks
from app.utils.evaluation_util import evaluate_response, judge_report, pair_records
from app.utils.jsonl_util import write_json


class Command(FormulaTuningCommand):
    help = 'Score a responses file against the dataset with exact match.'

    def add_arguments(self, parser):
        parser.add_argument('--dataset', required=True)
        parser.add_argument('--responses', required=True)
        self.add_config_argument(parser)
        self.add_out_argument(parser)

    def run(self, dataset, responses, out=None, **options):
        config = self.config(options)
        pairs = pair_records(load_responses(responses), load_tasks(dataset))
        evaluations = [evaluate_response(record['id'], record['output'], record['mode'], task, config)
                       for record, task in pairs]
        report = judge_report(evaluations, [task for _, task in pairs], config.tolerance)
        if out:
            write_json(out, report)
        correct = sum(report['per_id'].values())
        self.summary(f'accuracy: {report["accuracy"]:.4f} ({correct}/{report["n"]})')
