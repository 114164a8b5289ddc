import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

DATA = ROOT / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fermat_surface():
    from cubiconics.cayley import T4
    from cubiconics.cubic_conics import CubicSurface
    from cubiconics.multipoly import MultiPoly
    return CubicSurface.make(MultiPoly.parse("T0^3 + T1^3 + T2^3 + T3^3", T4))


@pytest.fixture(scope="session")
def fermat_line(fermat_surface):
    from cubiconics.cubic_conics import find_lines
    lines = find_lines(fermat_surface, 1)
    return next(l for l in lines if str(l.line.u) == "1 * T0 + 1 * T1")


@pytest.fixture(scope="session")
def fermat_pencil(fermat_surface, fermat_line):
    from cubiconics.cubic_conics import conic_family
    return conic_family(fermat_surface, fermat_line)


@pytest.fixture(scope="session")
def corpus_forms():
    from cubiconics.cayley import T4
    from cubiconics.multipoly import MultiPoly
    lines = []
    for raw in (DATA / "cubics_corpus.txt").read_text().splitlines():
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append(MultiPoly.parse(s, T4))
    return lines
