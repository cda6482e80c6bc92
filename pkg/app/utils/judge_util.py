import logging
import math
import re
from typing import Iterable, List, Optional, Sequence, Tuple

from rest_framework.utils import json

from app.exceptions import EmptyRun
from app.models.answer import AnswerValue, ModelOutput, Tolerance
from app.models.formula import ExecutionOutcome
from app.models.grid import EMPTY, is_boolean, is_number
from app.utils.constants import ANSWER_KEYS, ERROR_MESSAGE, FORMULA_KEYS, MODE

logger = logging.getLogger(__name__)

OUTPUT_PATTERN = re.compile(r'<think>(.*?)</think>\s*<answer>(.*?)</answer>', re.DOTALL)
DECIMAL_PATTERN = re.compile(r'[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:e[+-]?[0-9]+)?')
THOUSANDS_PATTERN = re.compile(r'[+-]?[0-9]{1,3}(?:,[0-9]{3})+(?:\.[0-9]*)?')

LABELS = {'true': True, 'yes': True, 'false': False, 'no': False}


def _scalar_answer(value) -> Optional[AnswerValue]:
    if isinstance(value, bool) or isinstance(value, str):
        return value
    if isinstance(value, (int, float)):
        try:
            number = float(value)
        except OverflowError:
            return None
        return number if math.isfinite(number) else None
    return None


def to_answer_value(value) -> Optional[AnswerValue]:
    """JSON payload value to AnswerValue; None when it has no answer shape."""
    if isinstance(value, list):
        items = tuple(_scalar_answer(item) for item in value)
        if not items or any(item is None for item in items):
            return None
        return items
    return _scalar_answer(value)


def answer_to_json(value):
    if isinstance(value, tuple):
        return [answer_to_json(item) for item in value]
    return value


def answer_key(value) -> str:
    return json.dumps(answer_to_json(value))


def _failed(raw, mode, reason, think=None, payload=None) -> ModelOutput:
    return ModelOutput(raw=raw, mode=mode, think=think, payload=payload, format_ok=False, reason=reason)


def _formula_in(payload: dict) -> Optional[str]:
    for key in FORMULA_KEYS:
        value = payload.get(key)
        if isinstance(value, str) and value.lstrip().startswith('='):
            return value
    return None


def parse_model_output(raw: str, mode: str) -> ModelOutput:
    match = OUTPUT_PATTERN.search(raw)
    if match is None:
        return _failed(raw, mode, 'missing <think>/<answer> blocks')
    think, body = match.group(1), match.group(2)
    try:
        payload = json.loads(body.strip())
    except ValueError:
        return _failed(raw, mode, 'answer block is not valid JSON', think)
    if not isinstance(payload, dict):
        return _failed(raw, mode, 'answer block is not a JSON object', think)
    if mode == MODE.SYMBOLIC:
        formula = _formula_in(payload)
        if formula is None:
            return _failed(raw, mode, 'no formula starting with "=" in answer block', think, payload)
        return ModelOutput(raw=raw, mode=mode, think=think, payload=payload, format_ok=True, formula=formula)
    for key in ANSWER_KEYS:
        if key in payload:
            answer = to_answer_value(payload[key])
            if answer is not None:
                return ModelOutput(raw=raw, mode=mode, think=think, payload=payload, format_ok=True, answer=answer)
    return _failed(raw, mode, 'no usable "answer" key in answer block', think, payload)


def _normalize_text(text: str, label_mode: bool) -> AnswerValue:
    previous = None
    while previous != text:
        previous = text
        text = ' '.join(text.split()).casefold()
        text = text.lstrip('$').rstrip('%')
    if THOUSANDS_PATTERN.fullmatch(text):
        text = text.replace(',', '')
    if DECIMAL_PATTERN.fullmatch(text):
        number = float(text)
        if math.isfinite(number):
            return number
    if label_mode and text in LABELS:
        return LABELS[text]
    return text


def normalize_answer(value: AnswerValue, label_mode: bool = False) -> AnswerValue:
    if isinstance(value, tuple):
        return tuple(normalize_answer(item, label_mode) for item in value)
    if isinstance(value, str):
        return _normalize_text(value, label_mode)
    if isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def _close(pred: float, gold: float, tolerance: Tolerance) -> bool:
    return abs(pred - gold) <= max(tolerance.abs_tol, tolerance.rel_tol * abs(gold))


def _numbers_match(pred: float, gold: float, tolerance: Tolerance) -> bool:
    if pred == gold or _close(pred, gold, tolerance):
        return True
    if tolerance.percentage_equivalence:
        return _close(pred * 100, gold, tolerance) or _close(pred, gold * 100, tolerance)
    return False


def _scalars_match(pred, gold, tolerance: Tolerance) -> bool:
    if is_boolean(pred) or is_boolean(gold):
        return is_boolean(pred) and is_boolean(gold) and pred == gold
    if is_number(pred) and is_number(gold):
        return _numbers_match(pred, gold, tolerance)
    if isinstance(pred, str) and isinstance(gold, str):
        return pred == gold
    return False


def _unwrap(value):
    if isinstance(value, tuple) and len(value) == 1:
        return value[0]
    return value


def exact_match(pred: AnswerValue, gold: AnswerValue, tolerance: Tolerance = Tolerance()) -> bool:
    pred = _unwrap(normalize_answer(pred, tolerance.label_mode))
    gold = _unwrap(normalize_answer(gold, tolerance.label_mode))
    if isinstance(pred, tuple) or isinstance(gold, tuple):
        if not (isinstance(pred, tuple) and isinstance(gold, tuple)) or len(pred) != len(gold):
            return False
        unmatched = list(gold)
        for item in pred:
            for position, candidate in enumerate(unmatched):
                if _scalars_match(item, candidate, tolerance):
                    del unmatched[position]
                    break
            else:
                return False
        return True
    return _scalars_match(pred, gold, tolerance)


def outcome_answer(outcome: ExecutionOutcome) -> Optional[AnswerValue]:
    """Executed cell value as an answer; None when nothing was produced."""
    if not outcome.executable or outcome.value is EMPTY:
        return None
    return outcome.value


def prediction_of(pred) -> Optional[AnswerValue]:
    if isinstance(pred, ExecutionOutcome):
        return outcome_answer(pred)
    return pred


def judge_records(records: Iterable[Tuple[object, AnswerValue]], tolerance: Tolerance = Tolerance()) -> List[bool]:
    verdicts = []
    for pred, gold in records:
        answer = prediction_of(pred)
        verdicts.append(answer is not None and exact_match(answer, gold, tolerance))
    return verdicts


def score_run(records: Sequence[Tuple[object, AnswerValue]], tolerance: Tolerance = Tolerance()) -> float:
    if not records:
        raise EmptyRun(ERROR_MESSAGE.EMPTY_RUN)
    verdicts = judge_records(records, tolerance)
    return sum(verdicts) / len(verdicts)
