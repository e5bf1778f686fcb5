"""Shared pytest configuration: hypothesis profiles and the acceptance summary.

Every randomized suite is derandomized so runs are reproducible; the
acceptance tests opt into 1000 examples via an explicit @settings.
"""

from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=100,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def _acceptance_rows(terminalreporter):
    rows: dict[str, tuple[str, str]] = {}
    for outcome, status in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL"), ("skipped", "SKIP")):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            detail = ""
            if status == "SKIP" and isinstance(rep.longrepr, tuple):
                detail = rep.longrepr[2]
                if detail.startswith("Skipped: "):
                    detail = detail[len("Skipped: "):]
            # a FAIL in any phase overrides the PASS recorded for another
            if rows.get(name, ("", ""))[0] != "FAIL":
                rows[name] = (status, detail)
    return rows


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = _acceptance_rows(terminalreporter)
    if not rows:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    width = max(len(name) for name in rows) + 2
    for name in sorted(rows):
        status, detail = rows[name]
        line = f"{name:<{width}}{status}"
        if detail:
            line += f"  ({detail})"
        tr.write_line(line)
