from rest_framework import exceptions, status
from django.utils.translation import gettext_lazy as _


class ClientException(exceptions.APIException):
    status_code = status.HTTP_400_BAD_REQUEST
    default_detail = _('Invalid input.')
    default_code = 'default'

    def __init__(self, detail=None, code=None):
        if detail is None:
            detail = self.default_detail
        if code is None:
            code = self.default_code

        self.detail = {
            'detail': detail,
            'code': code
        }

    @property
    def message(self):
        return str(self.detail['detail'])

    @property
    def code(self):
        return self.detail['code']

    def __str__(self):
        return self.message


class MalformedAddress(ClientException):
    default_detail = _('Malformed cell address.')
    default_code = 'malformed_address'


class NonFiniteNumber(ClientException):
    default_detail = _('Cell numbers must be finite.')
    default_code = 'non_finite_number'


class InvalidCell(ClientException):
    default_detail = _('Cell values must be JSON scalars or null.')
    default_code = 'invalid_cell'


class MalformedEncoding(ClientException):
    default_detail = _('Malformed linear table encoding.')
    default_code = 'malformed_encoding'


class FormulaParseError(ClientException):
    default_detail = _('Formula could not be parsed.')
    default_code = 'parse_error'

    def __init__(self, detail=None, position=None, code=None):
        super().__init__(detail, code)
        self.position = position
        self.detail['position'] = position


class EmptyRun(ClientException):
    default_detail = _('Nothing to score.')
    default_code = 'empty_run'


class LengthMismatch(ClientException):
    default_detail = _('Inputs are not aligned.')
    default_code = 'length_mismatch'


class DimensionMismatch(ClientException):
    default_detail = _('Policy size does not match the action space.')
    default_code = 'dimension_mismatch'


class SupportMismatch(ClientException):
    default_detail = _('Distributions are not defined over a compatible support.')
    default_code = 'support_mismatch'


class GenerationFailure(ClientException):
    default_detail = _('Could not generate a task with a correct action.')
    default_code = 'generation_failure'


class ConfigError(ClientException):
    default_detail = _('Invalid configuration.')
    default_code = 'config_error'

    def __init__(self, detail=None, key=None, code=None):
        super().__init__(detail, code)
        self.key = key
        self.detail['key'] = key
