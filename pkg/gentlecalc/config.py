"""
Runtime settings for gentle-calculus.

Settings come from defaults, then ``GENTLECALC_*`` environment variables, then
explicit overrides (the CLI flags).
"""

import os
from dataclasses import dataclass, fields, replace
from typing import Any, Mapping, Optional

OUTPUT_MODES = ("human", "structured")

DEFAULT_PRIME = 32003
DEFAULT_M_MAX = 3

_ENV_KEYS = {
    "prime": "GENTLECALC_PRIME",
    "m_max": "GENTLECALC_M_MAX",
    "depth": "GENTLECALC_DEPTH",
    "output_mode": "GENTLECALC_OUTPUT",
}


def is_prime(n: int) -> bool:
    """Trial-division primality test for the small moduli used by the oracle."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Settings:
    """
    Computation and output settings.

    Attributes:
        prime: Field characteristic for the linear-algebra oracle
        m_max: Number of puncture wraps listed in Ext tables
        depth: Materialization depth for periodic resolutions (None = preperiod + 2*period)
        output_mode: "human" or "structured" (key=value lines)
        max_workers: Thread pool size for batch oracle checks
        log_dir: Directory for log files (None disables file logging)
        verbose: Emit DEBUG logs
    """

    prime: int = DEFAULT_PRIME
    m_max: int = DEFAULT_M_MAX
    depth: Optional[int] = None
    output_mode: str = "human"
    max_workers: int = 4
    log_dir: Optional[str] = None
    verbose: bool = False

    def __post_init__(self):
        if not is_prime(self.prime) or self.prime == 2:
            raise ValueError(f"prime must be an odd prime: {self.prime}")
        if self.m_max < 0:
            raise ValueError(f"m_max cannot be negative: {self.m_max}")
        if self.depth is not None and self.depth < 0:
            raise ValueError(f"depth cannot be negative: {self.depth}")
        if self.output_mode not in OUTPUT_MODES:
            raise ValueError(f"output_mode must be one of {OUTPUT_MODES}: {self.output_mode}")
        if self.max_workers < 1:
            raise ValueError(f"max_workers must be positive: {self.max_workers}")

    @property
    def structured(self) -> bool:
        return self.output_mode == "structured"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from ``GENTLECALC_*`` environment variables.

        Args:
            environ: Mapping to read (default: os.environ)
        """
        env = os.environ if environ is None else environ
        values: dict = {}
        for name, key in _ENV_KEYS.items():
            raw = env.get(key)
            if raw is None or raw.strip() == "":
                continue
            values[name] = raw.strip() if name == "output_mode" else int(raw)
        return cls(**values)

    def merged(self, **overrides: Any) -> "Settings":
        """Return a copy with every non-None override applied."""
        known = {f.name for f in fields(self)}
        changes = {k: v for k, v in overrides.items() if k in known and v is not None}
        return replace(self, **changes)
