from app.management.base import FormulaTuningCommand
from app.utils.dataset_util import load_candidates, load_tasks
from app.utils.evaluation_util import pair_records
from app.utils.judge_util import answer_to_json, exact_match
from app.utils.jsonl_util import write_jsonl
from app.utils.vote_util import build_candidates, hybrid_vote, truncate, upper_bound_hit, upper_bound_rate, \
    vote_accuracy


class Command(FormulaTuningCommand):
    help = 'Self-consistency vote over sampled textual and symbolic outputs.'

    def add_arguments(self, parser):
        parser.add_argument('--dataset', required=True)
        parser.add_argument('--candidates', required=True)
        self.add_config_argument(parser)
        self.add_out_argument(parser)

    def run(self, dataset, candidates, out=None, **options):
        config = self.config(options)
        tolerance = config.tolerance
        sets, lines = [], []
        for record, task in pair_records(load_candidates(candidates), load_tasks(dataset)):
            candidate_set = truncate(build_candidates(record['textual'], record['symbolic'], task.table),
                                     config.n_text, config.n_formula)
            result = hybrid_vote(candidate_set, tolerance)
            sets.append((candidate_set, task.gold))
            lines.append({
                'id': record['id'],
                'chosen': answer_to_json(result.chosen),
                'correct': result.chosen is not None and exact_match(result.chosen, task.gold, tolerance),
                'upper_bound_hit': upper_bound_hit(candidate_set, task.gold, tolerance),
                'n_valid': result.n_valid,
                'tally': result.tally,
            })
        accuracy, upper_bound = vote_accuracy(sets, tolerance), upper_bound_rate(sets, tolerance)
        if out:
            write_jsonl(out, lines)
        self.summary(f'voted accuracy {accuracy:.4f}, upper bound {upper_bound:.4f} over {len(sets)} tasks')
