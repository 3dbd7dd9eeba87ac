"""Run an external SMT-LIB2 solver on a script and classify its answer."""

from __future__ import annotations

import enum
import os
import resource
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .smt import SmtScript, check_script


class Status(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    TIMEOUT = "timeout"
    OUT_OF_MEMORY = "out-of-memory"
    TOOL_ERROR = "tool-error"


@dataclass(frozen=True)
class SolverResult:
    status: Status
    elapsed: float
    message: str = ""
    output: str = ""        # raw stdout, models included, never interpreted

    @property
    def definite(self) -> bool:
        return self.status in (Status.SAT, Status.UNSAT)

    def __str__(self):
        if self.status is Status.TOOL_ERROR:
            return f"tool-error: {self.message}"
        return self.status.value


@dataclass(frozen=True)
class SolverConfig:
    command: str = "z3"
    flags: tuple = ()
    timeout_s: float = 60.0
    memory_mb: Optional[int] = None

    @classmethod
    def from_text(cls, text: str) -> SolverConfig:
        """Read ``key = value`` lines; ``#`` starts a comment."""
        kw: dict = {}
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"line {n}: expected key=value")
            key, value = key.strip(), value.strip()
            if key == "solver.command":
                kw["command"] = value
            elif key == "solver.flags":
                kw["flags"] = tuple(shlex.split(value))
            elif key == "solver.timeout_s":
                kw["timeout_s"] = float(value)
            elif key == "solver.memory_mb":
                kw["memory_mb"] = int(value) if value else None
            else:
                raise ValueError(f"line {n}: unknown key {key!r}")
        return cls(**kw)

    @classmethod
    def from_file(cls, path) -> SolverConfig:
        return cls.from_text(Path(path).read_text())


_RESULT_TOKENS = {"sat": Status.SAT, "unsat": Status.UNSAT,
                  "unknown": Status.UNKNOWN, "timeout": Status.TIMEOUT}


def classify_output(stdout: str, stderr: str = "", returncode: int = 0) -> tuple[Status, str]:
    text = f"{stdout}\n{stderr}".lower()
    if "out of memory" in text or "bad_alloc" in text:
        return Status.OUT_OF_MEMORY, "solver ran out of memory"
    if returncode != 0:
        detail = (stderr.strip() or stdout.strip()).splitlines()
        return Status.TOOL_ERROR, f"exit status {returncode}" + (f": {detail[0]}" if detail else "")
    for line in stdout.splitlines():
        tok = line.strip()
        if tok in _RESULT_TOKENS:
            return _RESULT_TOKENS[tok], ""
    return Status.TOOL_ERROR, "no sat/unsat/unknown in solver output"


def _limit_memory(mb: int):
    def apply():
        cap = mb * 1024 * 1024
        resource.setrlimit(resource.RLIMIT_AS, (cap, cap))
    return apply


def run_solver(script: SmtScript | str, cfg: SolverConfig | None = None) -> SolverResult:
    """Write ``script`` to a temp file and run ``<command> <flags...> <file>``."""
    cfg = cfg or SolverConfig()
    text = script.text if isinstance(script, SmtScript) else script
    check_script(text)
    fd, path = tempfile.mkstemp(suffix=".smt2", prefix="llsequent-")
    start = time.monotonic()
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        argv = [*shlex.split(cfg.command), *cfg.flags, path]
        try:
            proc = subprocess.run(
                argv, capture_output=True, text=True, timeout=cfg.timeout_s,
                preexec_fn=_limit_memory(cfg.memory_mb) if cfg.memory_mb else None,
            )
        except FileNotFoundError:
            return SolverResult(Status.TOOL_ERROR, time.monotonic() - start, "solver not found")
        except PermissionError as e:
            return SolverResult(Status.TOOL_ERROR, time.monotonic() - start, str(e))
        except subprocess.TimeoutExpired as e:
            out = e.stdout.decode() if isinstance(e.stdout, bytes) else (e.stdout or "")
            return SolverResult(Status.TIMEOUT, time.monotonic() - start,
                                f"no answer within {cfg.timeout_s} s", out)
        status, msg = classify_output(proc.stdout, proc.stderr, proc.returncode)
        return SolverResult(status, time.monotonic() - start, msg, proc.stdout)
    finally:
        os.unlink(path)


__all__ = ["SolverConfig", "SolverResult", "Status", "classify_output", "run_solver"]
