import pytest

_CRITERIA: dict[str, str] = {}


class CriterionRecorder:
    def __call__(self, number: int, ok: bool, detail: str) -> bool:
        _CRITERIA[f"{number}"] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(_CRITERIA[f"{number}"])
        return ok


@pytest.fixture(scope="session")
def criterion():
    return CriterionRecorder()


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for key in sorted(_CRITERIA, key=int):
            terminalreporter.write_line(_CRITERIA[key])
