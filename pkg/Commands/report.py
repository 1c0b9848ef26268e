import json
from dataclasses import dataclass, field
from typing import Dict, Optional

from Core.Enums.command import ExitCode, OutputFormat
from Core.Enums.kernel import ConfluenceVerdict, ReportVerdict, Verdict
from Core.Utils.helper import Helper


@dataclass
class Report:
    command: str
    verdict: ReportVerdict
    details: Dict = field(default_factory=dict)
    bounds: Dict = field(default_factory=dict)
    timing_ms: Optional[float] = None

    @property
    def exit_code(self) -> ExitCode:
        match self.verdict:
            case ReportVerdict.OK | ReportVerdict.INCONCLUSIVE:
                return ExitCode.OK
            case ReportVerdict.REFUTED:
                return ExitCode.REFUTED
        return ExitCode.ERROR

    def to_dict(self, include_timing: bool = False) -> Dict:
        out = {
            "schema": Helper.get_settings().schema,
            "command": self.command,
            "verdict": self.verdict.value,
            "details": self.details,
            "bounds": self.bounds,
        }
        if include_timing and self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def from_verdict(v: Verdict) -> ReportVerdict:
    match v:
        case Verdict.CERTIFIED:
            return ReportVerdict.OK
        case Verdict.REFUTED:
            return ReportVerdict.REFUTED
    return ReportVerdict.INCONCLUSIVE


def from_confluence(v: ConfluenceVerdict) -> ReportVerdict:
    match v:
        case ConfluenceVerdict.CERTIFIED_AT_BOUND:
            return ReportVerdict.OK
        case ConfluenceVerdict.COUNTEREXAMPLE:
            return ReportVerdict.REFUTED
    return ReportVerdict.INCONCLUSIVE


def _text_lines(value, indent: int = 0):
    pad = "  " * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                yield f"{pad}{key}:"
                yield from _text_lines(item, indent + 1)
            else:
                yield f"{pad}{key}: {item}"
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(item, indent + 1)
            else:
                yield f"{pad}- {item}"
    else:
        yield f"{pad}{value}"


def emit_report(r: Report, fmt: OutputFormat = OutputFormat.JSON, include_timing: Optional[bool] = None) -> bytes:
    """JSON is sorted and byte-stable; text is for people."""
    if include_timing is None:
        include_timing = Helper.get_settings().include_timing
    data = r.to_dict(include_timing)
    if fmt is OutputFormat.JSON:
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    text = data["details"].get("text") if isinstance(data["details"], dict) else None
    if text is not None:
        return text.encode("utf-8")
    lines = [f"{r.command}: {r.verdict.value}"]
    lines += list(_text_lines({"details": data["details"], "bounds": data["bounds"]}))
    if "timing_ms" in data:
        lines.append(f"timing: {data['timing_ms']} ms")
    return ("\n".join(lines) + "\n").encode("utf-8")
