from dataclasses import dataclass


@dataclass(frozen=True)
class RewardBreakdown:
    answer_reward: float
    format_reward: float
    final: float

    def to_dict(self, **extra):
        return {**extra, 'answer_reward': self.answer_reward, 'format_reward': self.format_reward,
                'final': self.final}
