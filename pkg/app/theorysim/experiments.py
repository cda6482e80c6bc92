"""Toy-scale experiments over enumerable formula spaces.

Both experiments return plain JSON-ready dicts; identical (config, seed)
pairs give identical reports.
"""
import dataclasses
import logging
from typing import Dict, List

import numpy as np

from app.exceptions import GenerationFailure
from app.models.config import SimulationConfig
from app.models.policy import CategoricalPolicy, TaskSpec, TeacherPolicy, ToyTask
from app.theorysim.tasks import MAX_ATTEMPTS, make_task
from app.theorysim.training import (cross_entropy, entropy, expected_answer_reward, expected_reward_symbolic,
                                    expected_reward_textual, kl_divergence, rl_train, sft_fit)
from app.utils.constants import EXPERIMENT, REWARD

logger = logging.getLogger(__name__)

EQUALITY_TOLERANCE = 1e-12
IDENTITY_TOLERANCE = 1e-10


def _fidelity_key(fidelity: float) -> str:
    return repr(float(fidelity))


def _config_dict(config: SimulationConfig) -> dict:
    return {key: list(value) if isinstance(value, tuple) else value
            for key, value in dataclasses.asdict(config).items()}


def run_dominance_experiment(config: SimulationConfig, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    fidelities = [float(f) for f in config.fidelities]
    rows = []
    differences: Dict[str, List[float]] = {_fidelity_key(f): [] for f in fidelities}
    symbolic_values, textual_values = [], {_fidelity_key(f): [] for f in fidelities}
    holds, strict_holds, strict_total, total = 0, 0, 0, 0
    for i in range(config.n_tasks):
        template = config.templates[i % len(config.templates)]
        task_seed = int(rng.integers(2 ** 31))
        spec = TaskSpec(template=template, n_rows=config.n_rows, n_actions=config.n_actions,
                        plan_prob=config.plan_prob)
        task = make_task(spec, task_seed)
        policy = CategoricalPolicy(rng.normal(size=task.n_actions))
        row = {'question_id': task.question_id, 'n_correct': int(sum(task.correct_mask)), 'textual': {}}
        for fidelity in fidelities:
            matched = task.with_fidelity(config.plan_prob, fidelity)
            symbolic = expected_reward_symbolic(policy, matched)
            textual = expected_reward_textual(policy, matched)
            key = _fidelity_key(fidelity)
            row['symbolic'] = symbolic
            row['textual'][key] = textual
            textual_values[key].append(textual)
            differences[key].append(symbolic - textual)
            total += 1
            holds += symbolic >= textual
            if fidelity < 1 and symbolic > 0:
                strict_total += 1
                strict_holds += symbolic > textual
        symbolic_values.append(row['symbolic'])
        rows.append(row)

    mean_symbolic = float(np.mean(symbolic_values)) if symbolic_values else 0.0
    summary = {}
    for fidelity in fidelities:
        key = _fidelity_key(fidelity)
        summary[key] = {
            'mean_symbolic': mean_symbolic,
            'mean_textual': float(np.mean(textual_values[key])) if textual_values[key] else 0.0,
            'min_difference': float(min(differences[key])) if differences[key] else 0.0,
            'max_abs_difference': float(max(map(abs, differences[key]))) if differences[key] else 0.0,
        }
    checks = {
        'dominance': holds == total,
        'strict_dominance_below_full_fidelity': strict_holds == strict_total,
    }
    if 1.0 in fidelities:
        checks['equality_at_full_fidelity'] = summary[_fidelity_key(1.0)]['max_abs_difference'] < EQUALITY_TOLERANCE
    logger.info('Dominance held in %s/%s computations', holds, total)
    return {
        'experiment': EXPERIMENT.DOMINANCE,
        'seed': seed,
        'config': _config_dict(config),
        'n_computations': total,
        'n_dominance_held': holds,
        'summary': summary,
        'tasks': rows,
        'checks': checks,
        'all_checks_passed': all(checks.values()),
    }


def _rich_task(config: SimulationConfig, seed: int) -> ToyTask:
    """A task with two correct actions and an executable wrong one."""
    spec = TaskSpec(template=config.template, n_rows=config.n_rows, n_actions=config.n_actions)
    for attempt in range(MAX_ATTEMPTS):
        task = make_task(spec, seed + attempt)
        if sum(task.correct_mask) >= 2 and REWARD.EXECUTABLE in task.answer_rewards:
            return task
    raise GenerationFailure(f'No {config.template} task with two correct actions near seed {seed}.')


def teacher_for(task: ToyTask, coverage: float) -> TeacherPolicy:
    """Mass `coverage` on the first correct action, the rest spread over executable wrong ones."""
    probs = np.zeros(task.n_actions)
    target = task.correct_mask.index(True)
    wrong = [i for i, reward in enumerate(task.answer_rewards) if reward == REWARD.EXECUTABLE]
    probs[target] = coverage
    if coverage < 1:
        probs[wrong] = (1 - coverage) / len(wrong)
    return TeacherPolicy(probs)


def _compare(task: ToyTask, coverage: float, config: SimulationConfig, seed: int) -> dict:
    rewards = task.rewards
    teacher = teacher_for(task, coverage)
    teacher_reward = expected_answer_reward(teacher.probs, rewards)
    sft = sft_fit(teacher, config.n_samples, config.sft_lr, config.sft_steps, seed, config.kl_threshold,
                  config.trace_every)
    sft_probs = sft.policy.probs
    rl_kwargs = dict(episodes=config.rl_steps, lr=config.rl_lr, seed=seed, mode=config.rl_mode,
                     batch_size=config.batch_size, reward_tolerance=config.reward_tolerance,
                     trace_every=config.trace_every)
    rl = rl_train(CategoricalPolicy.uniform(task.n_actions), task, **rl_kwargs)
    cold_start = rl_train(sft.policy, task, **rl_kwargs)
    outside = [i for i, correct in enumerate(task.correct_mask) if correct and teacher.probs[i] == 0]
    identity_error = abs(cross_entropy(teacher.probs, sft_probs) - entropy(teacher.probs)
                         - kl_divergence(teacher.probs, sft_probs))

    def summarize(result):
        probs = result.policy.probs
        return {
            'reward': expected_answer_reward(probs, rewards),
            'converged': result.converged,
            'steps': result.steps,
            'min_prob': float(probs.min()),
            'out_of_support_mass': float(probs[outside].sum()),
            'probs': [float(p) for p in probs],
            'reward_trace': [float(r) for r in result.reward_history],
        }

    return {
        'coverage': coverage,
        'teacher': {'probs': [float(p) for p in teacher.probs], 'covered_correct': list(teacher.coverage(task)),
                    'out_of_support_correct': outside},
        'teacher_reward': teacher_reward,
        'sft': {
            'reward': expected_answer_reward(sft_probs, rewards),
            'final_kl': sft.final_kl,
            'converged': sft.converged,
            'steps': sft.steps,
            'probs': [float(p) for p in sft_probs],
            'kl_trace': [float(kl) for kl in sft.kl_history],
            'mle_kl_identity_error': identity_error,
        },
        'rl': summarize(rl),
        'rl_from_sft': summarize(cold_start),
    }


def run_sft_vs_rl_experiment(config: SimulationConfig, seed: int) -> dict:
    task = _rich_task(config, seed)
    main = _compare(task, config.coverage, config, seed)
    control = _compare(task, 1.0, config, seed)
    checks = {
        'coverage_below_one': config.coverage < 1,
        'sft_converged': main['sft']['converged'],
        'sft_ceiling': main['sft']['reward'] <= main['teacher_reward'] + config.epsilon,
        'mle_kl_identity': main['sft']['mle_kl_identity_error'] < IDENTITY_TOLERANCE,
        'rl_superiority': main['rl']['reward'] >= 1 - config.delta,
        'rl_discovers_out_of_support': main['rl']['out_of_support_mass'] >= config.discovery_mass,
        'exploration_positive': main['rl']['min_prob'] > 0,
        'control_gap': control['rl']['reward'] - control['sft']['reward'] <= config.control_gap,
    }
    logger.info('Teacher %.4f, SFT %.4f, RL %.4f', main['teacher_reward'], main['sft']['reward'],
                main['rl']['reward'])
    return {
        'experiment': EXPERIMENT.SFT_VS_RL,
        'seed': seed,
        'config': _config_dict(config),
        'task': {
            'question_id': task.question_id,
            'question': task.question,
            'gold': task.gold,
            'action_space': list(task.action_space),
            'correct_mask': list(task.correct_mask),
            'answer_rewards': list(task.answer_rewards),
        },
        'main': main,
        'control': control,
        'checks': checks,
        'all_checks_passed': all(checks.values()),
    }


EXPERIMENTS = {
    EXPERIMENT.DOMINANCE: run_dominance_experiment,
    EXPERIMENT.SFT_VS_RL: run_sft_vs_rl_experiment,
}
