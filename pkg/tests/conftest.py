import pytest

from twalex.laurent import from_coeffs
from twalex.presentations import builtin
from twalex.representations import (
    RationalMatrix,
    abelian_rep,
    cyclic_rep,
    direct_sum,
    trefoil_gl2,
    trefoil_sl2,
    trivial_rep,
)

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(key, passed, detail)``."""

    def record(key: str, passed: bool, detail: str = ""):
        _CRITERIA[key] = (passed, detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[0])):
        passed, detail = _CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {key}  {detail}".rstrip())


F_QUAD = from_coeffs([-1, -1, 1])       # t^2 - t - 1
F_CUBIC = from_coeffs([-1, -1, 0, 1])   # t^3 - t - 1
F_RECIP = from_coeffs([1, -3, 1])       # t^2 - 3t + 1


@pytest.fixture(scope="session")
def trefoil():
    return builtin("trefoil")


@pytest.fixture(scope="session")
def figure8():
    return builtin("figure8")


def suite_reps():
    """(label, presentation, rep) for every representation used in suite-wide properties."""
    tre = builtin("trefoil")
    fig = builtin("figure8")
    out = [
        ("trefoil trivial", tre, trivial_rep(tre)),
        ("trefoil trivial2", tre, trivial_rep(tre, 2)),
        ("trefoil sl2 s=2", tre, trefoil_sl2(tre, 2)),
        ("trefoil sl2 s=-3/2", tre, trefoil_sl2(tre, "-3/2")),
        ("trefoil sl2 s=1", tre, trefoil_sl2(tre, 1)),
        ("trefoil gl2 a=3", tre, trefoil_gl2(tre, 3)),
        ("trefoil abelian sl2", tre, abelian_rep(tre, RationalMatrix([[2, 0], [0, "1/2"]]))),
        ("trefoil sp4", tre, direct_sum(trefoil_sl2(tre, 2), trefoil_sl2(tre, 3), interleave=True)),
        ("figure8 trivial", fig, trivial_rep(fig)),
        ("figure8 abelian sl2", fig, abelian_rep(fig, RationalMatrix([[1, 1], [0, 1]]))),
    ]
    for label, f in (("quad", F_QUAD), ("cubic", F_CUBIC), ("recip", F_RECIP)):
        out.append((f"trefoil cyclic {label}", tre, cyclic_rep(tre, f)))
        out.append((f"figure8 cyclic {label}", fig, cyclic_rep(fig, f)))
    return out
