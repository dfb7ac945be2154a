import pytest

from bettilab.ringfile import parse_ring_spec


def ring(vars, ideal="", p=32003, name="R"):
    return parse_ring_spec(f"ring {name} {{ prime = {p}; vars = {vars}; ideal = {ideal}; }}")


def as_dicts(gens):
    """Generators in the plain-dict form the oracles take."""
    return [dict(g.terms) for g in gens]


_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(n: int, ok: bool, text: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
