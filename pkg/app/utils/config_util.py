import logging
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from rest_framework.exceptions import ValidationError

from app.exceptions import ConfigError
from app.models.config import RunConfig, SimulationConfig
from app.serializers import RunConfigSerializer, SimulationConfigSerializer

logger = logging.getLogger(__name__)


def read_flat_toml(path: str) -> dict:
    """Top-level key/value pairs only; tables are rejected."""
    with open(path, 'rb') as file:
        try:
            data = tomllib.load(file)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f'{path}: {e}')
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f'Configuration must be flat; {key!r} is a table.', key=key)
    return data


def _first_key(errors) -> Optional[str]:
    if isinstance(errors, dict) and errors:
        return sorted(errors, key=str)[0]
    return None


def _first_message(errors) -> str:
    while isinstance(errors, (dict, list)) and errors:
        errors = errors[_first_key(errors)] if isinstance(errors, dict) else errors[0]
    return str(errors)


def validated(serializer):
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as e:
        key = _first_key(e.detail)
        message = _first_message(e.detail)
        if key:
            message = f'{key}: {message}'
        raise ConfigError(message, key=key)
    return serializer.save()


def build_config(data: Optional[dict] = None) -> RunConfig:
    return validated(RunConfigSerializer(data=data or {}))


def load_config(path: Optional[str] = None) -> RunConfig:
    """RunConfig from a flat TOML file; missing keys take the project defaults."""
    data = read_flat_toml(path) if path else {}
    config = build_config(data)
    logger.debug('Loaded run config %s', config)
    return config


def load_simulation_config(path: Optional[str], experiment: str) -> SimulationConfig:
    data = read_flat_toml(path) if path else {}
    return validated(SimulationConfigSerializer(data=data, context={'experiment': experiment}))
