#!/usr/bin/env python3
"""
Construction of boundary conditions by kind name or descriptor string.

Descriptor grammar (CLI flag --boundary and plan key boundary):
    plus | minus | free | alternating
    slab:<delta> | iid:<mean>:<seed> | corners:<eps> | file:<path> | neg:<descriptor>

Usage:
    make_boundary("slab", box, delta=0.5)
    parse_boundary_descriptor("iid:0:7", box)
"""

from boundaries import (AlternatingBoundary, BaseBoundary, CornersBoundary, CustomBoundary, FreeBoundary,
                        IIDBoundary, MinusBoundary, PlusBoundary, SlabBoundary)
import logging
from typing import Any

from config import get_log_level
from exceptions import PlanError
from lattice import Box

# Set up logging
logging.basicConfig(format='%(asctime)s - %(name)s - %(levelname)s - %(message)s', level=get_log_level())
_logger = logging.getLogger(__name__)

BOUNDARY_KINDS = ("plus", "minus", "free", "slab", "iid", "alternating", "corners", "custom")


def make_boundary(kind: str, box: Box, **params: Any) -> BaseBoundary:
    """Builds a boundary condition of a named kind.

    :param kind: One of BOUNDARY_KINDS.
    :param box: The box.
    :param params: delta for slab, mean and seed for iid, eps for corners, values for custom.
    :return: The boundary condition.
    """

    try:
        if kind == "plus":
            return PlusBoundary(box)
        if kind == "minus":
            return MinusBoundary(box)
        if kind == "free":
            return FreeBoundary(box)
        if kind == "alternating":
            return AlternatingBoundary(box)
        if kind == "slab":
            return SlabBoundary(box, float(params["delta"]))
        if kind == "iid":
            return IIDBoundary(box, float(params["mean"]), int(params["seed"]))
        if kind == "corners":
            return CornersBoundary(box, float(params["eps"]))
        if kind == "custom":
            return CustomBoundary(box, params["values"])
    except KeyError as e:
        raise ValueError("Boundary kind '{}' needs parameter {}".format(kind, e))
    raise ValueError("Unknown boundary kind '{}', expected one of {}".format(kind, ", ".join(BOUNDARY_KINDS)))


def parse_boundary_descriptor(descriptor: str, box: Box) -> BaseBoundary:
    """Builds a boundary condition from its descriptor string.

    :param descriptor: The descriptor, e.g. "slab:0.5".
    :param box: The box.
    :return: The boundary condition.
    """

    descriptor = descriptor.strip()
    if descriptor.startswith("neg:"):
        return parse_boundary_descriptor(descriptor[4:], box).negated()
    if descriptor.startswith("file:"):
        return CustomBoundary.from_file(box, descriptor[5:])

    kind, *args = descriptor.split(":")
    arities = {"plus": 0, "minus": 0, "free": 0, "alternating": 0, "slab": 1, "iid": 2, "corners": 1}
    if kind not in arities:
        _logger.error("Unknown boundary descriptor '%s'", descriptor)
        raise PlanError("Unknown boundary descriptor '{}'".format(descriptor))
    if len(args) != arities[kind]:
        raise PlanError("Boundary descriptor '{}' needs {} parameter(s)".format(descriptor, arities[kind]))

    try:
        if kind == "slab":
            return make_boundary(kind, box, delta=float(args[0]))
        if kind == "iid":
            return make_boundary(kind, box, mean=float(args[0]), seed=int(args[1]))
        if kind == "corners":
            return make_boundary(kind, box, eps=float(args[0]))
    except ValueError as e:
        raise PlanError("Invalid boundary descriptor '{}': {}".format(descriptor, e))
    return make_boundary(kind, box)


if __name__ == '__main__':
    pass
