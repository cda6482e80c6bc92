class BaseConstant:
    @classmethod
    def choices(cls):
        return [(value, value) for name, value in vars(cls).items() if name.isupper()]

    @classmethod
    def values(cls):
        return [value for name, value in vars(cls).items() if name.isupper()]


class MODE(BaseConstant):
    TEXTUAL = 'textual'
    SYMBOLIC = 'symbolic'


class CELL_ERROR(BaseConstant):
    DIV0 = 'DIV0'
    VALUE = 'VALUE'
    NA = 'NA'
    NAME = 'NAME'
    REF = 'REF'


CELL_ERROR_DISPLAY = {
    CELL_ERROR.DIV0: '#DIV/0!',
    CELL_ERROR.VALUE: '#VALUE!',
    CELL_ERROR.NA: '#N/A',
    CELL_ERROR.NAME: '#NAME?',
    CELL_ERROR.REF: '#REF!',
}


class NOT_EXECUTABLE(BaseConstant):
    PARSE_ERROR = 'ParseError'
    UNKNOWN_FUNCTION = 'UnknownFunction'
    RUNTIME_ERROR = 'RuntimeError'
    ARRAY_RESULT = 'ArrayResult'
    INVALID_FORMAT = 'InvalidFormat'


class COMPARATOR(BaseConstant):
    EQ = '='
    NE = '<>'
    GT = '>'
    LT = '<'
    GE = '>='
    LE = '<='


class TEMPLATE(BaseConstant):
    SUM = 'sum'
    COUNT = 'count'
    MAX = 'max'
    LOOKUP = 'lookup'


class EXPERIMENT(BaseConstant):
    DOMINANCE = 'dominance'
    SFT_VS_RL = 'sft-vs-rl'


class RL_MODE(BaseConstant):
    EXACT = 'exact'
    SAMPLED = 'sampled'


class REWARD(BaseConstant):
    CORRECT = 1.0
    EXECUTABLE = 0.2
    NOT_EXECUTABLE = 0.0
    FORMAT_OK = 0.1
    FORMAT_PENALTY = -2.0


ANSWER_KEYS = ('answer',)
FORMULA_KEYS = ('formula', 'answer')

DEFAULT_REL_TOL = 1e-4
DEFAULT_ABS_TOL = 1e-6

# (n_text, n_formula) presets for self-consistency voting.
FORMULA_VOTE_SIZES = (0, 10)
HYBRID_VOTE_SIZES = (5, 5)
TEXT_VOTE_SIZES = (10, 0)


class ERROR_MESSAGE(BaseConstant):
    EMPTY_GRID_LIST = 'At least one grid is required.'
    EMPTY_RUN = 'At least one record is required.'
    NOT_A_FORMULA = 'Formula must start with "=".'
    UNKNOWN_CONFIG_KEY = 'Unknown configuration key: {key}.'
