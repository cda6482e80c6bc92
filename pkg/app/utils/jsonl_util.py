import os
import tempfile
from typing import Iterable, List

from rest_framework.exceptions import ValidationError
from rest_framework.utils import json


def read_json(path: str):
    with open(path, 'r', encoding='utf-8') as file:
        try:
            return json.loads(file.read())
        except ValueError as e:
            raise ValidationError({'file': f'{path}: invalid JSON ({e}).'})


def read_jsonl(path: str) -> List[dict]:
    """One JSON object per non-blank line."""
    records = []
    with open(path, 'r', encoding='utf-8') as file:
        for line_number, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except ValueError as e:
                raise ValidationError({'file': f'{path}:{line_number}: invalid JSON ({e}).'})
            if not isinstance(record, dict):
                raise ValidationError({'file': f'{path}:{line_number}: expected a JSON object.'})
            records.append(record)
    return records


def dumps(value) -> str:
    return json.dumps(value, ensure_ascii=False, sort_keys=True)


def write_atomic(path: str, text: str):
    """Write through a sibling temp file so a failed run leaves no partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
    try:
        with os.fdopen(handle, 'w', encoding='utf-8') as file:
            file.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise


def write_jsonl(path: str, records: Iterable[dict]):
    write_atomic(path, ''.join(dumps(record) + '\n' for record in records))


def write_json(path: str, value):
    write_atomic(path, json.dumps(value, ensure_ascii=False, sort_keys=True, indent=2) + '\n')
