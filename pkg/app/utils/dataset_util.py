from typing import Dict, List

from rest_framework.exceptions import ValidationError

from app.models.grid import Grid, TaskInstance
from app.serializers import CandidateRecordSerializer, ResponseRecordSerializer, TableField, TaskRecordSerializer
from app.utils.jsonl_util import read_json, read_jsonl


def _validated_lines(path: str, serializer_class) -> List:
    items = []
    seen = set()
    for line_number, record in enumerate(read_jsonl(path), start=1):
        serializer = serializer_class(data=record)
        if not serializer.is_valid():
            raise ValidationError({'file': f'{path} record {line_number}', 'errors': serializer.errors})
        key = serializer.validated_data['id']
        if key in seen:
            raise ValidationError({'file': f'{path} record {line_number}', 'errors': f'Duplicate id {key!r}.'})
        seen.add(key)
        items.append(serializer)
    return items


def load_tasks(path: str) -> Dict[str, TaskInstance]:
    return {serializer.validated_data['id']: serializer.save()
            for serializer in _validated_lines(path, TaskRecordSerializer)}


def load_responses(path: str) -> List[dict]:
    return [serializer.validated_data for serializer in _validated_lines(path, ResponseRecordSerializer)]


def load_candidates(path: str) -> List[dict]:
    return [serializer.validated_data for serializer in _validated_lines(path, CandidateRecordSerializer)]


def task_for(tasks: Dict[str, TaskInstance], record_id: str) -> TaskInstance:
    try:
        return tasks[record_id]
    except KeyError:
        raise ValidationError({'id': f'No dataset record with id {record_id!r}.'})


def load_table(path: str) -> Grid:
    """A table file holds a JSON list of rows or a linear encoding string."""
    return TableField().to_internal_value(read_json(path))
