"""Shared parameter sets and the acceptance summary printed at the end of a run."""
import pytest

from openxyz.lattice import ModelParams

# boundary parameters of the four reference regimes (canonical region)
REAL_LARGE = dict(tau=0.6j, eta=0.7, beta_minus=(0.02, 0.02, 0.03j), beta_plus=(0.04, 0.04, 0.04j))
REAL_SMALL = dict(tau=0.6j, eta=0.4, beta_minus=(0.02, 0.02, 0.03j), beta_plus=(0.04, 0.04, 0.04j))
IMAG_LARGE = dict(tau=1.6j, eta=1j, beta_minus=(0.04j, 0.04, 0.04j), beta_plus=(0.08j, 0.1, 0.08j))
IMAG_SMALL = dict(tau=1.6j, eta=0.7j, beta_minus=(0.04j, 0.04, 0.03j), beta_plus=(0.08j, 0.1, 0.05j))

REGIMES = {"real_large": REAL_LARGE, "real_small": REAL_SMALL,
           "imag_large": IMAG_LARGE, "imag_small": IMAG_SMALL}


def make_params(regime, n_sites, **changes) -> ModelParams:
    kwargs = dict(REGIMES[regime] if isinstance(regime, str) else regime)
    kwargs.update(changes)
    return ModelParams(n_sites=n_sites, **kwargs)


@pytest.fixture(params=sorted(REGIMES))
def regime(request):
    return request.param


ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    line = f"ACCEPTANCE {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
