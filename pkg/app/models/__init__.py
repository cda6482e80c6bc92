from app.models.grid import *
from app.models.formula import *
from app.models.answer import *
from app.models.reward import *
from app.models.vote import *
from app.models.policy import *
from app.models.config import *
