from rest_framework import generics, status
from rest_framework.response import Response

from app.formula import execute
from app.serializers import ExecuteRequestSerializer, RewardRequestSerializer, VoteRequestSerializer
from app.utils.config_util import build_config
from app.utils.grid_util import concat_vertical, render_value
from app.utils.judge_util import answer_to_json, exact_match
from app.utils.reward_util import final_reward
from app.utils.vote_util import build_candidates, hybrid_vote, truncate, upper_bound_hit


class ExecuteAPI(generics.GenericAPIView):
    serializer_class = ExecuteRequestSerializer

    def post(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        outcome = execute(serializer.validated_data['formula'], serializer.validated_data['table'])
        return Response({
            'executable': outcome.executable,
            'value': outcome.value if outcome.executable else None,
            'display': render_value(outcome.value) if outcome.executable else None,
            'reason': outcome.reason,
            'detail': outcome.detail,
        })


class RewardAPI(generics.GenericAPIView):
    serializer_class = RewardRequestSerializer

    def post(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        config = build_config(data.get('config'))
        reward = final_reward(data['output'], concat_vertical(data['tables']), data['answer'], data['mode'],
                              config.tolerance, config.textual_partial_credit)
        return Response(reward.to_dict())


class VoteAPI(generics.GenericAPIView):
    serializer_class = VoteRequestSerializer

    def post(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        config = build_config(data.get('config'))
        candidates = build_candidates(data['textual'], data['symbolic'], concat_vertical(data['tables']))
        candidates = truncate(candidates, data.get('n_text', config.n_text), data.get('n_formula', config.n_formula))
        result = hybrid_vote(candidates, config.tolerance)
        body = {'chosen': answer_to_json(result.chosen), 'tally': result.tally, 'n_valid': result.n_valid}
        if 'answer' in data:
            gold = data['answer']
            body['correct'] = result.chosen is not None and exact_match(result.chosen, gold, config.tolerance)
            body['upper_bound_hit'] = upper_bound_hit(candidates, gold, config.tolerance)
        return Response(body)
