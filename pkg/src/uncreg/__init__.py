"""Regression on uncertain (distribution-valued) observations."""

from .infer import ErrorMoments, ForecastResult, error_moments, forecast, prediction_interval
from .models import ModelSpec, by_name, gompertz, linear, michaelis_menten
from .optim import OptimOptions, ParamEstimate, minimize
from .pipeline import FitResult, fit
from .quad import QuadratureRule
from .regress import Dataset, Observation, objective
from .udist import Linear, Normal, Point

__version__ = "0.1.0"
