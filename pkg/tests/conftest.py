import json
import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

FIXTURES = (pathlib.Path(__file__).resolve().parents[1]
            / "src" / "eiquiver" / "fixtures")


def fixture_path(name: str) -> pathlib.Path:
    return FIXTURES / f"{name}.json"


def fixture_doc(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    import re
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)",
                          getattr(rep, "nodeid", ""))
            if m:
                n = int(m.group(1))
                if outcome != "passed":
                    results[n] = "FAIL"
                else:
                    results.setdefault(n, "PASS")
    if results:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for n in sorted(results):
            terminalreporter.write_line(f"  criterion {n}: {results[n]}")


@pytest.fixture(scope="session")
def categories():
    """All bundled category fixtures, loaded once."""
    from eiquiver.eicat import load_category
    names = ("line_quiver_free", "line_subcategory_nonfree",
             "fork_merge_free", "fork_merge_nonfree", "one_object_c2",
             "four_object_mixed", "two_object_c2_s3",
             "two_object_trivial_s3")
    return {n: load_category(fixture_doc(n)) for n in names}
