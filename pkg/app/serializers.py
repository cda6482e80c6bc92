from django.conf import settings
from rest_framework import serializers

from app.exceptions import ClientException, ConfigError
from app.models.config import RunConfig, SimulationConfig
from app.models.grid import TaskInstance
from app.utils.constants import ERROR_MESSAGE, EXPERIMENT, MODE, RL_MODE, TEMPLATE
from app.utils.grid_util import decode_linear, grid_from_rows, grids_from_tables
from app.utils.judge_util import answer_to_json, to_answer_value


class AnswerField(serializers.Field):
    default_error_messages = {
        'invalid': 'Answer must be a finite number, string, boolean or a non-empty flat list of them.',
    }

    def to_internal_value(self, data):
        value = to_answer_value(data)
        if value is None:
            self.fail('invalid')
        return value

    def to_representation(self, value):
        return answer_to_json(value)


class TablesField(serializers.Field):
    """A list of tables, each a list of rows of JSON scalars or null."""

    def to_internal_value(self, data):
        if not isinstance(data, list) or not data:
            raise serializers.ValidationError(ERROR_MESSAGE.EMPTY_GRID_LIST)
        for table in data:
            if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
                raise serializers.ValidationError('Each table must be a list of rows.')
        try:
            return tuple(grids_from_tables(data))
        except ClientException as e:
            raise serializers.ValidationError(e.message)


class TableField(serializers.Field):
    """One table given as rows or as its linear encoding."""

    def to_internal_value(self, data):
        try:
            if isinstance(data, str):
                return decode_linear(data)
            if isinstance(data, list) and all(isinstance(row, list) for row in data):
                return grid_from_rows(data)
        except ClientException as e:
            raise serializers.ValidationError(e.message)
        raise serializers.ValidationError('Table must be a list of rows or a linear encoding.')


class StrictKeysMixin:
    """Reject keys the serializer does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                key = unknown[0]
                raise ConfigError(ERROR_MESSAGE.UNKNOWN_CONFIG_KEY.format(key=key), key=key)
        return super().to_internal_value(data)


class TaskRecordSerializer(serializers.Serializer):
    id = serializers.CharField()
    tables = TablesField()
    question = serializers.CharField(allow_blank=True, trim_whitespace=False)
    answer = AnswerField()
    pre_text = serializers.CharField(required=False, allow_null=True, allow_blank=True, trim_whitespace=False)
    post_text = serializers.CharField(required=False, allow_null=True, allow_blank=True, trim_whitespace=False)

    def create(self, validated_data):
        return TaskInstance(
            id=validated_data['id'],
            grids=validated_data['tables'],
            question=validated_data['question'],
            gold=validated_data['answer'],
            pre_text=validated_data.get('pre_text'),
            post_text=validated_data.get('post_text'),
        )


class ResponseRecordSerializer(serializers.Serializer):
    id = serializers.CharField()
    mode = serializers.ChoiceField(choices=MODE.choices())
    output = serializers.CharField(allow_blank=True, trim_whitespace=False)


class OutputListField(serializers.ListField):
    child = serializers.CharField(allow_blank=True, trim_whitespace=False)


class CandidateRecordSerializer(serializers.Serializer):
    id = serializers.CharField()
    textual = OutputListField(default=list)
    symbolic = OutputListField(default=list)

    def validate(self, attrs):
        if not attrs['textual'] and not attrs['symbolic']:
            raise serializers.ValidationError('A candidate record needs at least one output.')
        return attrs


class RunConfigSerializer(StrictKeysMixin, serializers.Serializer):
    rel_tol = serializers.FloatField(min_value=0, required=False)
    abs_tol = serializers.FloatField(min_value=0, required=False)
    percentage_equivalence = serializers.BooleanField(required=False)
    label_mode = serializers.BooleanField(required=False)
    vote_sizes = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=2, max_length=2,
                                       required=False)
    seed = serializers.IntegerField(required=False)
    textual_partial_credit = serializers.BooleanField(required=False)
    workers = serializers.IntegerField(min_value=1, required=False)

    def validate_vote_sizes(self, value):
        if sum(value) < 1:
            raise serializers.ValidationError('Vote sizes must allow at least one candidate.')
        return value

    def create(self, validated_data):
        data = {**settings.FORMULA_TUNING, **validated_data}
        data['vote_sizes'] = tuple(data['vote_sizes'])
        return RunConfig(**data)


class SimulationConfigSerializer(StrictKeysMixin, serializers.Serializer):
    n_tasks = serializers.IntegerField(min_value=1, required=False)
    templates = serializers.ListField(child=serializers.ChoiceField(choices=TEMPLATE.choices()), min_length=1,
                                      required=False)
    n_rows = serializers.IntegerField(min_value=2, required=False)
    n_actions = serializers.IntegerField(min_value=3, required=False)
    fidelities = serializers.ListField(child=serializers.FloatField(min_value=0, max_value=1), min_length=1,
                                       required=False)
    plan_prob = serializers.FloatField(min_value=0, max_value=1, required=False)
    template = serializers.ChoiceField(choices=TEMPLATE.choices(), required=False)
    coverage = serializers.FloatField(min_value=0, max_value=1, required=False)
    n_samples = serializers.IntegerField(min_value=1, required=False)
    sft_lr = serializers.FloatField(min_value=0, required=False)
    sft_steps = serializers.IntegerField(min_value=0, required=False)
    kl_threshold = serializers.FloatField(min_value=0, required=False)
    rl_mode = serializers.ChoiceField(choices=RL_MODE.choices(), required=False)
    rl_lr = serializers.FloatField(min_value=0, required=False)
    rl_steps = serializers.IntegerField(min_value=1, required=False)
    batch_size = serializers.IntegerField(min_value=1, required=False)
    reward_tolerance = serializers.FloatField(min_value=0, required=False)
    epsilon = serializers.FloatField(min_value=0, required=False)
    delta = serializers.FloatField(min_value=0, max_value=1, required=False)
    control_gap = serializers.FloatField(min_value=0, required=False)
    discovery_mass = serializers.FloatField(min_value=0, max_value=1, required=False)
    trace_every = serializers.IntegerField(min_value=1, required=False)

    def validate_coverage(self, value):
        if value <= 0:
            raise serializers.ValidationError('Teacher coverage must be positive.')
        return value

    def validate(self, attrs):
        experiment = self.context.get('experiment')
        fidelities = attrs.get('fidelities', SimulationConfig.fidelities)
        if experiment == EXPERIMENT.DOMINANCE and 1.0 not in fidelities:
            raise serializers.ValidationError({'fidelities': 'The fidelity sweep must include 1.0.'})
        if experiment == EXPERIMENT.SFT_VS_RL and attrs.get('coverage', SimulationConfig.coverage) >= 1:
            raise serializers.ValidationError({'coverage': 'Teacher coverage must be below 1.'})
        return attrs

    def create(self, validated_data):
        data = {key: tuple(value) if isinstance(value, list) else value for key, value in validated_data.items()}
        return SimulationConfig(**data)


class ExecuteRequestSerializer(serializers.Serializer):
    formula = serializers.CharField(trim_whitespace=False)
    table = TableField()


class RewardRequestSerializer(serializers.Serializer):
    output = serializers.CharField(allow_blank=True, trim_whitespace=False)
    mode = serializers.ChoiceField(choices=MODE.choices())
    tables = TablesField()
    answer = AnswerField()
    config = serializers.DictField(required=False)


class VoteRequestSerializer(serializers.Serializer):
    textual = OutputListField(default=list)
    symbolic = OutputListField(default=list)
    tables = TablesField()
    answer = AnswerField(required=False)
    n_text = serializers.IntegerField(min_value=0, required=False)
    n_formula = serializers.IntegerField(min_value=0, required=False)
    config = serializers.DictField(required=False)

    def validate(self, attrs):
        if not attrs['textual'] and not attrs['symbolic']:
            raise serializers.ValidationError('At least one sampled output is required.')
        return attrs
