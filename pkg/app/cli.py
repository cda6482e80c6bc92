"""Programmatic entry point: run_command(argv) -> exit code."""
import sys
from typing import List, Optional, TextIO

from django.core.management import call_command
from django.core.management.base import CommandError

from app.management.base import VALIDATION_ERROR

COMMANDS = ('encode', 'exec', 'judge', 'reward', 'evaluate', 'vote', 'stats', 'simulate')


def run_command(argv: List[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in COMMANDS:
        stderr.write(f'usage: <command> [options]; command is one of {", ".join(COMMANDS)}\n')
        return VALIDATION_ERROR
    name, *args = argv
    try:
        call_command(name, *args, stdout=stdout, stderr=stderr)
    except CommandError as e:
        stderr.write(f'{name}: {e}\n')
        return e.returncode
    return 0
