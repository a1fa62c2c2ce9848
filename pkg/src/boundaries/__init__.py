from .abstract import AbstractBoundary
from .base import BaseBoundary
from .constant import ConstantBoundary, PlusBoundary, MinusBoundary, FreeBoundary
from .slab import SlabBoundary
from .iid import IIDBoundary
from .alternating import AlternatingBoundary
from .corners import CornersBoundary
from .custom import CustomBoundary
from .factory import BOUNDARY_KINDS, make_boundary, parse_boundary_descriptor  # To import last as factory.py imports every kind
