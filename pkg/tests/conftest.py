"""Shared pytest wiring.

Emits one visible verdict line per acceptance criterion through the
terminal reporter, so the lines show up in plain `pytest -v` runs (test
prints would be swallowed by output capture).
"""

ACCEPTANCE_LABELS = {
    "test_connective_inventory": "connective inventory",
    "test_spectral_identities": "spectral identities",
    "test_trivalued_projector_algebra": "tri-valued projectors",
    "test_min_max_connectives": "min/max connectives",
    "test_fuzzy_closed_forms": "fuzzy closed forms",
    "test_actuator_table": "actuator table",
    "test_behavior_love_approaches_and_stops": "behavior: love approach",
    "test_behavior_fear_turns_away": "behavior: fear retreat",
    "test_behavior_aggress_mirrors_fear": "behavior: aggress turn sign",
    "test_behavior_mirror_symmetry": "behavior: mirror symmetry",
    "test_behavior_crisp_fuzzy_agree_at_extremes": "behavior: crisp/fuzzy extremes",
    "test_formula_compiler_corpus": "formula compiler corpus",
    "test_protocol_contract": "session protocol",
}

_config = None


def pytest_configure(config):
    global _config
    _config = config


def pytest_runtest_logreport(report):
    if report.when != "call" or _config is None:
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    label = ACCEPTANCE_LABELS.get(report.nodeid.rsplit("::", 1)[-1])
    if label is None:
        return
    reporter = _config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None:
        return
    verdict = "PASS" if report.passed else "FAIL"
    reporter.write_line(f"[{verdict}] {label} ({report.duration:.2f}s)")
