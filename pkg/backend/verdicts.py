"""
Verdicts
The single result type printed by the CLI and returned by the HTTP API
"""

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from errors import BudgetExceeded
from variety_oracles import VerdictStatus

PayloadValue = Union[str, int, bool, List[str]]

EXIT_CODES = {
    VerdictStatus.HOLDS: 0,
    VerdictStatus.STABLE_UPTO: 0,
    VerdictStatus.DERIVABLE: 0,
    VerdictStatus.FAILS: 1,
    VerdictStatus.COUNTEREXAMPLE: 1,
    VerdictStatus.INCONCLUSIVE: 2,
}
EXIT_BUDGET = 2
EXIT_USAGE = 3


class Verdict(BaseModel):
    status: VerdictStatus
    subject: str = ""
    payload: Dict[str, PayloadValue] = Field(default_factory=dict)
    bounds: Dict[str, int] = Field(default_factory=dict)
    error: Optional[str] = None
    budget_exceeded: bool = False

    @classmethod
    def from_error(cls, error: Exception, subject: str = "") -> "Verdict":
        return cls(
            status=VerdictStatus.ERROR,
            subject=subject,
            error=str(error),
            budget_exceeded=isinstance(error, BudgetExceeded),
        )

    @property
    def exit_code(self) -> int:
        if self.status == VerdictStatus.ERROR:
            return EXIT_BUDGET if self.budget_exceeded else EXIT_USAGE
        return EXIT_CODES[self.status]

    def render(self, fmt: str = "text") -> str:
        if fmt == "machine":
            return self._render_machine()
        return self._render_text()

    def _render_text(self) -> str:
        head = self.status.value
        if self.subject:
            head += f"  {self.subject}"
        lines = [head]
        if self.error:
            lines.append(f"error: {self.error}")
        for key, value in self.payload.items():
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {item}" for item in value)
            else:
                lines.append(f"{key}: {_plain(value)}")
        if self.bounds:
            lines.append(
                "bounds: " + ", ".join(f"{key}={value}" for key, value in self.bounds.items())
            )
        return "\n".join(lines)

    def _render_machine(self) -> str:
        """One key: value line per field; list items get numbered keys"""
        lines = [f"status: {self.status.value}"]
        if self.subject:
            lines.append(f"subject: {self.subject}")
        if self.error:
            lines.append(f"error: {self.error}")
        for key, value in self.payload.items():
            if isinstance(value, list):
                lines.append(f"{key}.count: {len(value)}")
                lines.extend(f"{key}.{i}: {item}" for i, item in enumerate(value, start=1))
            else:
                lines.append(f"{key}: {_plain(value)}")
        lines.extend(f"bound.{key}: {value}" for key, value in self.bounds.items())
        return "\n".join(lines)


def _plain(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
