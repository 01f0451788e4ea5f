import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from heightbounds.algebraic import AlgebraicNumber, _isolated  # noqa: E402
from heightbounds.polys import parse_polynomial  # noqa: E402

# oracle digits (mpmath at 50 dps)
PHI = Fraction("1.61803398874989484820458683436563811772")
LN_PHI = Fraction("0.4812118250596034474977589134243684231352")
HALF_LN_PHI = Fraction("0.2406059125298017237488794567121842115676")
LN_2 = Fraction("0.6931471805599453094172321214581765680755")
M_LEHMER = Fraction("1.176280818259917506544070338474035050693")
SMYTH = Fraction("1.324717957244746025960908854478097340734")

LEHMER_TEXT = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"


def alg(text: str, index: int) -> AlgebraicNumber:
    """Algebraic number from an irreducible polynomial and canonical root index."""
    f = parse_polynomial(text)
    return AlgebraicNumber(f, _isolated(f)[index])


@pytest.fixture
def golden():
    return alg("x^2-x-1", 1)


@pytest.fixture
def sqrt2():
    return alg("x^2-2", 1)


@pytest.fixture
def sqrt3():
    return alg("x^2-3", 1)


@pytest.fixture
def lehmer_poly():
    return parse_polynomial(LEHMER_TEXT)
