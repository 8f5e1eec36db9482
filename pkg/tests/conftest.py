import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def _criterion_order(label):
    digits = "".join(c for c in label if c.isdigit())
    return int(digits), label


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(mod.RESULTS, key=_criterion_order):
        terminalreporter.write_line(mod.RESULTS[label])
