import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE: dict = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    """Remember the worst outcome per criterion for the closing summary."""
    prev = ACCEPTANCE.get(criterion)
    if prev is None or prev[0]:
        ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0][1:])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
