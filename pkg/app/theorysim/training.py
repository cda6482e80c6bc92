"""Exact expected rewards, divergences and the two training procedures
(maximum-likelihood SFT and policy-gradient RL) on categorical policies."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from app.exceptions import DimensionMismatch, SupportMismatch
from app.models.policy import CategoricalPolicy, TeacherPolicy, ToyTask
from app.utils.constants import RL_MODE

logger = logging.getLogger(__name__)

KL_THRESHOLD = 1e-4
REWARD_TOLERANCE = 1e-3
MAX_STEPS = 50000


def _check_dimension(policy: CategoricalPolicy, task: ToyTask):
    if policy.n_actions != task.n_actions:
        raise DimensionMismatch(f'Policy has {policy.n_actions} actions, task has {task.n_actions}.')


def expected_reward_symbolic(policy: CategoricalPolicy, task: ToyTask) -> float:
    _check_dimension(policy, task)
    return float(task.plan_prob * np.dot(policy.probs, task.mask))


def expected_reward_textual(policy: CategoricalPolicy, task: ToyTask) -> float:
    """The same plan distribution, additionally surviving every intermediate step."""
    return task.step_fidelity * expected_reward_symbolic(policy, task)


def expected_answer_reward(probs: np.ndarray, rewards: np.ndarray) -> float:
    if len(probs) != len(rewards):
        raise DimensionMismatch(f'{len(probs)} probabilities for {len(rewards)} rewards.')
    return float(np.dot(probs, rewards))


def reward_gradient(policy: CategoricalPolicy, rewards: np.ndarray) -> np.ndarray:
    """d/dlogits of sum(pi * r) under softmax: pi * (r - pi.r)."""
    probs = policy.probs
    return probs * (rewards - np.dot(probs, rewards))


def finite_difference_gradient(policy: CategoricalPolicy, rewards: np.ndarray, epsilon: float = 1e-5) -> np.ndarray:
    gradient = np.zeros(policy.n_actions)
    for i in range(policy.n_actions):
        step = np.zeros(policy.n_actions)
        step[i] = epsilon
        upper = expected_answer_reward(policy.updated(step).probs, rewards)
        lower = expected_answer_reward(policy.updated(-step).probs, rewards)
        gradient[i] = (upper - lower) / (2 * epsilon)
    return gradient


def _distributions(p, q):
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1:
        raise SupportMismatch(f'Shapes {p.shape} and {q.shape} differ.')
    if np.any(p < 0) or np.any(q < 0):
        raise SupportMismatch('Probabilities must be non-negative.')
    return p, q


def kl_divergence(p, q) -> float:
    p, q = _distributions(p, q)
    support = p > 0
    if np.any(q[support] <= 0):
        raise SupportMismatch('q has zero mass where p is positive.')
    return float(np.sum(p[support] * np.log(p[support] / q[support])))


def cross_entropy(p, q) -> float:
    p, q = _distributions(p, q)
    support = p > 0
    if np.any(q[support] <= 0):
        raise SupportMismatch('q has zero mass where p is positive.')
    return float(-np.sum(p[support] * np.log(q[support])))


def entropy(p) -> float:
    p, _ = _distributions(p, p)
    support = p > 0
    return float(-np.sum(p[support] * np.log(p[support])))


@dataclass(frozen=True)
class SFTResult:
    policy: CategoricalPolicy
    kl_history: List[float] = field(repr=False)
    converged: bool
    final_kl: float
    steps: int


@dataclass(frozen=True)
class RLResult:
    policy: CategoricalPolicy
    reward_history: List[float] = field(repr=False)
    converged: bool
    steps: int

    @property
    def final_reward(self) -> float:
        return self.reward_history[-1]


def sft_fit(teacher: TeacherPolicy, n_samples: int, lr: float = 3.0, steps: int = MAX_STEPS, seed: int = 0,
            kl_threshold: float = KL_THRESHOLD, trace_every: int = 1) -> SFTResult:
    """Gradient ascent on the mean log-likelihood of teacher samples.

    The gradient of the mean log-likelihood with respect to the logits is the
    empirical frequency minus the current policy, so the loop never revisits
    the samples once they are counted.
    """
    if n_samples < 1:
        raise ValueError('n_samples must be at least 1.')
    rng = np.random.default_rng(seed)
    n_actions = len(teacher.probs)
    frequencies = np.bincount(teacher.sample(rng, n_samples), minlength=n_actions) / n_samples
    policy = CategoricalPolicy.uniform(n_actions)
    kl = kl_divergence(teacher.probs, policy.probs)
    history = [kl]
    step = 0
    while kl >= kl_threshold and step < steps:
        policy = policy.updated(lr * (frequencies - policy.probs))
        step += 1
        kl = kl_divergence(teacher.probs, policy.probs)
        if step % trace_every == 0 or kl < kl_threshold:
            history.append(kl)
    final_kl = kl
    if history[-1] != final_kl:
        history.append(final_kl)
    converged = final_kl < kl_threshold
    if not converged:
        logger.info('SFT stopped after %s steps with KL %.3g', step, final_kl)
    return SFTResult(policy=policy, kl_history=history, converged=converged, final_kl=final_kl, steps=step)


def rl_train(policy: CategoricalPolicy, task: ToyTask, episodes: int = MAX_STEPS, lr: float = 0.4, seed: int = 0,
             mode: str = RL_MODE.EXACT, batch_size: int = 64, reward_tolerance: Optional[float] = REWARD_TOLERANCE,
             trace_every: int = 1) -> RLResult:
    """Policy-gradient ascent on the expected answer reward of a toy task.

    Exact mode follows the analytic gradient; sampled mode uses the
    score-function estimator over a batch of actions with the batch-mean
    reward as baseline.
    """
    if episodes < 1:
        raise ValueError('episodes must be at least 1.')
    _check_dimension(policy, task)
    rewards = task.rewards
    optimum = float(rewards.max())
    rng = np.random.default_rng(seed)
    history = [expected_answer_reward(policy.probs, rewards)]
    episode = 0
    for episode in range(1, episodes + 1):
        if mode == RL_MODE.EXACT:
            gradient = reward_gradient(policy, rewards)
        else:
            actions = policy.sample(rng, batch_size)
            advantages = rewards[actions] - rewards[actions].mean()
            scores = np.eye(policy.n_actions)[actions] - policy.probs
            gradient = (advantages[:, None] * scores).mean(axis=0)
        policy = policy.updated(lr * gradient)
        reward = expected_answer_reward(policy.probs, rewards)
        done = reward_tolerance is not None and optimum - reward < reward_tolerance
        if episode % trace_every == 0 or done:
            history.append(reward)
        if done:
            break
    if history[-1] != reward:
        history.append(reward)
    converged = reward_tolerance is not None and optimum - reward < reward_tolerance
    return RLResult(policy=policy, reward_history=history, converged=converged, steps=episode)
