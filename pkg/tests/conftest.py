import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def tuples(G):
    """Element image tuples of a library group, for the oracles."""
    return [p.images for p in G.elements]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
