from app.management.base import FormulaTuningCommand
from app.theorysim import EXPERIMENTS
from app.utils.config_util import load_simulation_config
from app.utils.constants import EXPERIMENT
from app.utils.jsonl_util import write_json


class Command(FormulaTuningCommand):
    help = 'Run a toy-scale expected-reward experiment (dominance or sft-vs-rl).'

    def add_arguments(self, parser):
        parser.add_argument('experiment', choices=EXPERIMENT.values())
        self.add_config_argument(parser)
        parser.add_argument('--seed', type=int, default=0)
        self.add_out_argument(parser)

    def run(self, experiment, config=None, seed=0, out=None, **options):
        simulation = load_simulation_config(config, experiment)
        report = EXPERIMENTS[experiment](simulation, seed)
        if out:
            write_json(out, report)
        failed = [name for name, passed in report['checks'].items() if not passed]
        if failed:
            self.stdout.write(self.style.WARNING(f'{experiment}: failed checks: {", ".join(failed)}'))
        else:
            self.summary(f'{experiment}: all {len(report["checks"])} checks passed')
