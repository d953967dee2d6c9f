"""Collects one pass/fail line per acceptance criterion for the run summary."""

RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def lines() -> list[str]:
    return [RESULTS[k] for k in sorted(RESULTS)]
