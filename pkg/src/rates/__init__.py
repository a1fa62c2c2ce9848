from .abstract import AbstractRates
from .base import BaseRates
from .exponential import ExponentialRates
from .metropolis import MetropolisRates
from .heat_bath import HeatBathRates
from .factory import RATE_KINDS, make_rates, flip_rate  # To import last as factory.py imports every family
