from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from layered_koszul import graph as G

settings.register_profile(
    "default", deadline=None, max_examples=60, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# uniform graphs used throughout; each is small enough for k <= 4 work
UNIFORM = {
    "hypercube2": lambda: G.hypercube(2),
    "hypercube3": lambda: G.hypercube(3),
    "chain4": lambda: G.chain(4),
    "complete122": lambda: G.complete_layered([1, 2, 2]),
    "complete132": lambda: G.complete_layered([1, 3, 2]),
}


@pytest.fixture(params=sorted(UNIFORM))
def uniform_graph(request):
    return UNIFORM[request.param]()


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in __import__("sys").modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
