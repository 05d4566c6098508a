"""
Shared fixtures for the total semi-stability test suite
"""
import json
from fractions import Fraction

import pytest

from app.charge import TSD
from app.quiver_core import coxeter_for, parse_type_tag, section_quiver


def document(tsd: TSD) -> dict:
    """Wire form of a datum"""
    from app.models import TsdDocument
    return TsdDocument.from_tsd(tsd).model_dump()


@pytest.fixture
def d4():
    return parse_type_tag("D4")


@pytest.fixture
def e6():
    return parse_type_tag("E6")


@pytest.fixture
def uniform_e6(e6):
    return TSD.uniform(e6)


@pytest.fixture
def violating_d4(d4):
    """|a1 - b1| = 4/5 exceeds c1 = 1/2"""
    return TSD.create(
        d4,
        [
            [Fraction(9, 10), Fraction(1, 10)],
            [Fraction(1, 10), Fraction(9, 10)],
            [Fraction(1, 2), Fraction(1, 2)],
        ],
        0,
        1,
    )


@pytest.fixture
def real_d4(d4):
    """Uniform D4 datum on the negative real axis, away from every zero"""
    return TSD.uniform(d4, z_re=Fraction(-37, 7), z_im=0)


@pytest.fixture
def cox():
    """Coxeter data by type tag"""
    return lambda tag: coxeter_for(parse_type_tag(tag))


@pytest.fixture
def section():
    return lambda tag: section_quiver(parse_type_tag(tag))


@pytest.fixture
def write_document(tmp_path):
    """Write a datum (TSD or dict) to a JSON file and return its path"""
    def _write(data, name="datum.json"):
        if isinstance(data, TSD):
            data = document(data)
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write
