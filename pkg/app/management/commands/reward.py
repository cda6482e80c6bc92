from statistics import fmean

from app.management.base import FormulaTuningCommand
from app.utils.dataset_util import load_responses, load_tasks, task_for
from app.utils.jsonl_util import write_jsonl
from app.utils.reward_util import align, reward_batch


class Command(FormulaTuningCommand):
    help = 'Compute answer, format and final rewards for every response.'

    def add_arguments(self, parser):
        parser.add_argument('--dataset', required=True)
        parser.add_argument('--responses', required=True)
        self.add_mode_argument(parser)
        self.add_config_argument(parser)
        self.add_out_argument(parser)

    def run(self, dataset, responses, mode, out=None, **options):
        config = self.config(options)
        tasks = load_tasks(dataset)
        records = load_responses(responses)
        batch = align([record['output'] for record in records], [task_for(tasks, record['id']) for record in records])
        rewards = reward_batch(batch, mode, config.tolerance, config.textual_partial_credit, config.workers)
        lines = [reward.to_dict(id=record['id']) for record, reward in zip(records, rewards)]
        if out:
            write_jsonl(out, lines)
        mean = fmean(reward.final for reward in rewards) if rewards else 0.0
        self.summary(f'{len(rewards)} rewards, mean final {mean:.4f}')
