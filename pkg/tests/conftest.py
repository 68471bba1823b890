import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from parabolic_ops import grading, parse_crossing, parse_dynkin  # noqa: E402

SUPPORTED = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "C3", "C4", "C5",
             "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"]


def report_for(algebra, crossed, form=None):
    datum = parse_dynkin(algebra)
    return grading(parse_crossing(crossed, datum), form)


@pytest.fixture
def g2_borel():
    return report_for("G2", "1,2")
