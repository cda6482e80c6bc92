from app.management.base import FormulaTuningCommand
from app.utils.dataset_util import load_responses, load_tasks
from app.utils.evaluation_util import evaluate_response, evaluation_report, pair_records
from app.utils.jsonl_util import write_json


class Command(FormulaTuningCommand):
    help = 'Full evaluation report: accuracy, reward, format validity, executability and formula statistics.'

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
        report = evaluation_report(evaluations, [task for _, task in pairs])
        report['records'] = [item.to_dict() for item in evaluations]
        if out:
            write_json(out, report)
        executability = report['executability_rate']
        self.summary(
            f'n={report["n"]} accuracy={report["accuracy"]:.4f} mean_reward={report["mean_reward"]:.4f} '
            f'format_valid={report["format_valid_rate"]:.4f} '
            f'executable={"n/a" if executability is None else format(executability, ".4f")}')
