from app.theorysim.experiments import EXPERIMENTS, run_dominance_experiment, run_sft_vs_rl_experiment
from app.theorysim.tasks import make_task
from app.theorysim.training import (cross_entropy, entropy, expected_answer_reward, expected_reward_symbolic,
                                    expected_reward_textual, finite_difference_gradient, kl_divergence,
                                    reward_gradient, rl_train, sft_fit)
