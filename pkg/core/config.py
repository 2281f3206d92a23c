"""
Solver configuration for aspine.
Defaults come from the environment (a .env file is honoured); CLI flags and
request payloads override them.
"""

import os
from dataclasses import dataclass, field, replace
from typing import Tuple

from dotenv import load_dotenv

from .assignment import DEFAULT_DEPS_WORDS
from .decide import HEURISTIC_KINDS, HeuristicConfig
from .learn import MODES
from .nogood_store import DEFAULT_MAX_LEARNED


@dataclass(frozen=True)
class RestartPolicy:
    kind: str = "off"
    base: int = 100
    factor: float = 1.5

    @classmethod
    def parse(cls, text: str) -> "RestartPolicy":
        """Parse ``off`` or ``geometric:BASE:FACTOR``."""
        text = (text or "off").strip().lower()
        if text == "off":
            return cls()
        parts = text.split(":")
        if parts[0] != "geometric" or len(parts) not in (1, 3):
            raise ValueError(f"bad restart policy '{text}'")
        if len(parts) == 1:
            return cls(kind="geometric")
        try:
            return cls(kind="geometric", base=int(parts[1]), factor=float(parts[2]))
        except ValueError:
            raise ValueError(f"bad restart policy '{text}'")

    @property
    def enabled(self) -> bool:
        return self.kind == "geometric"

    def threshold(self, restarts_done: int) -> int:
        """Conflicts since the previous restart that trigger the next one."""
        return max(1, int(self.base * self.factor ** restarts_done))

    def __str__(self) -> str:
        return "off" if not self.enabled else f"geometric:{self.base}:{self.factor:g}"


@dataclass
class SolverConfig:
    mode: str = "fwd"
    heuristic: HeuristicConfig = field(default_factory=HeuristicConfig)
    workers: int = 1
    restart_policy: RestartPolicy = field(default_factory=RestartPolicy)
    max_models: int = 1
    deps_words: int = DEFAULT_DEPS_WORDS
    conflict_fanout: int = 1
    seed: int = 0
    verify: bool = False
    trace: bool = False
    max_learned: int = DEFAULT_MAX_LEARNED

    @classmethod
    def from_env(cls) -> "SolverConfig":
        load_dotenv()
        return cls(
            mode=os.getenv("ASPINE_MODE", "fwd"),
            heuristic=HeuristicConfig.from_flag(os.getenv("ASPINE_HEURISTIC", "occ")),
            workers=int(os.getenv("ASPINE_WORKERS", "1")),
            restart_policy=RestartPolicy.parse(os.getenv("ASPINE_RESTARTS", "off")),
            max_models=int(os.getenv("ASPINE_MAX_MODELS", "1")),
            deps_words=int(os.getenv("ASPINE_DEPS_WORDS", str(DEFAULT_DEPS_WORDS))),
            conflict_fanout=int(os.getenv("ASPINE_FANOUT", "1")),
            verify=os.getenv("ASPINE_VERIFY", "0").lower() in ("1", "true", "yes", "on"),
            max_learned=int(os.getenv("ASPINE_MAX_LEARNED", str(DEFAULT_MAX_LEARNED))),
        )

    def with_overrides(self, **overrides) -> "SolverConfig":
        """Copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def validate(self) -> Tuple[bool, str]:
        if self.mode not in MODES:
            return False, f"mode must be one of {', '.join(MODES)}"
        if self.heuristic.kind not in HEURISTIC_KINDS:
            return False, f"unknown heuristic '{self.heuristic.kind}'"
        if not 0 < self.heuristic.activity_decay < 1:
            return False, "activity decay must lie in (0, 1)"
        if self.workers < 1:
            return False, "workers must be at least 1"
        if self.deps_words < 1:
            return False, "deps words must be at least 1"
        if self.conflict_fanout < 1:
            return False, "conflict fanout must be at least 1"
        if self.max_models < 0:
            return False, "max models must be 0 (all) or positive"
        if self.max_learned < 1:
            return False, "max learned must be positive"
        if self.restart_policy.enabled:
            if self.restart_policy.base < 1:
                return False, "restart base must be at least 1"
            if self.restart_policy.factor <= 1:
                return False, "restart factor must exceed 1"
        return True, ""

    def describe(self) -> dict:
        return {
            "mode": self.mode,
            "heuristic": self.heuristic.flag,
            "workers": self.workers,
            "restarts": str(self.restart_policy),
            "max_models": self.max_models,
            "deps_words": self.deps_words,
            "fanout": self.conflict_fanout,
            "seed": self.seed,
            "verify": self.verify,
        }
