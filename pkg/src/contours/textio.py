#!/usr/bin/env python3
"""
Line-oriented text format for contours, used for test fixtures.

    # contour sign=+ length=4
    0 0 1 0
    0 0 0 1
    ...

Each data line is one regular bond "a1 a2 b1 b2" standing for its dual bond, in sorted order.
The sign line is optional ("sign=none" when absent).

Usage:
    text = contour_to_text(gamma)
    gamma = contour_from_text(text)
"""

import re
from typing import Optional

from contours.geometry import Contour, contour_from_bonds
from exceptions import PlanError
from lattice import Bond, Site
from utils import sign_symbol

_HEADER = re.compile(r"^#\s*contour\s+sign=(?P<sign>[+-]|none)")


def contour_to_text(gamma: Contour) -> str:
    sign = "none" if gamma.get_sign() is None else sign_symbol(gamma.get_sign())
    lines = ["# contour sign={} length={}".format(sign, len(gamma))]
    lines.extend("{} {} {} {}".format(b.a.x1, b.a.x2, b.b.x1, b.b.x2) for b in gamma.get_bonds())
    return "\n".join(lines) + "\n"


def contour_from_text(text: str) -> Contour:
    """Parses a contour written by contour_to_text().

    :param text: The text.
    :return: The contour, with its enclosed set rebuilt from the bonds.
    """

    sign: Optional[int] = None
    bonds = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER.match(line)
            if match and match.group("sign") != "none":
                sign = 1 if match.group("sign") == "+" else -1
            continue
        try:
            a1, a2, b1, b2 = (int(token) for token in line.split())
            bonds.append(Bond.between(Site(a1, a2), Site(b1, b2)))
        except ValueError:
            raise PlanError("Line {} is not a bond 'a1 a2 b1 b2': '{}'".format(number, line))
    try:
        return contour_from_bonds(bonds, sign)
    except ValueError as e:
        raise PlanError("Contour text does not describe a contour: {}".format(e))


if __name__ == '__main__':
    pass
