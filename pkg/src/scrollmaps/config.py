"""Run configuration shared by the pipelines and the command line."""

from __future__ import annotations

import os
import random
from dataclasses import asdict, dataclass, field

from .algebra.field import GF, QQ, Field, is_prime, random_prime

DEFAULT_PRIME = 32003
CACHE_ENV = "SCROLLMAPS_CACHE_DIR"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """``prime`` is ``None`` for the rationals."""

    pipeline: str = "prop11"
    prime: int | None = DEFAULT_PRIME
    seed: int = 1
    mode: str = ""
    variety: str = ""
    special: bool = False
    retries: int = 20
    cache_dir: str | None = None
    out: str | None = None
    verbosity: int = 0
    second_prime: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ConfigError(f"{self.prime} is not prime")
        if self.prime is not None and self.prime >= 2 ** 31:
            raise ConfigError("primes must be below 2^31")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned value")
        if self.retries < 1:
            raise ConfigError("retry budget must be at least 1")
        if self.cache_dir is None:
            self.cache_dir = os.environ.get(CACHE_ENV) or None

    @property
    def field(self) -> Field:
        return QQ if self.prime is None else GF(self.prime)

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random((self.seed << 8) ^ salt)

    def with_prime(self, p: int | None) -> "RunConfig":
        d = asdict(self)
        d["prime"] = p
        return RunConfig(**d)

    def other_prime(self) -> int:
        return random_prime(random.Random(self.seed ^ 0xBADC0DE), avoid=(self.prime,))

    def echo(self) -> dict:
        d = asdict(self)
        d["field"] = "Q" if self.prime is None else f"GF({self.prime})"
        return d
