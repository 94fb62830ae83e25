import orgboot.learner as learner

from helpers import ACCEPTANCE, BOOTSTRAP_RUNS, mr_non_decreasing

_bootstrap = learner.bootstrap


def _recording_bootstrap(*args, **kwargs):
    result = _bootstrap(*args, **kwargs)
    BOOTSTRAP_RUNS.append([r.MR for r in result.trace])
    return result


# learn() and the CLI resolve bootstrap through the module, so this sees every run
learner.bootstrap = _recording_bootstrap


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    bad = sum(not mr_non_decreasing(run) for run in BOOTSTRAP_RUNS)
    detail = f"{len(BOOTSTRAP_RUNS)} bootstrap runs in the session, {bad} with decreasing MR"
    own = ACCEPTANCE.get(3, (True, ""))
    ACCEPTANCE[3] = (own[0] and bad == 0, f"{own[1]}; {detail}".lstrip("; "))
    terminalreporter.section("acceptance criteria")
    for number in range(1, 9):
        if number not in ACCEPTANCE:
            terminalreporter.write_line(f"criterion {number}: NOT RUN")
            continue
        passed, text = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {text}")
