"""Centralized configuration management.

Type-safe, validated solver configuration. Every value can be overridden from
the environment with the ``DEGLOCI_`` prefix and ``__`` as the nested
delimiter, e.g. ``DEGLOCI_ARITHMETIC__CROSS_CHECK=false``.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ArithmeticSettings(BaseModel):
    """Modular arithmetic and reconstruction."""

    prime_bits: int = Field(
        default=62,
        description="Bit size of the random working primes",
        ge=24,
        le=62,
    )

    min_prime: int = Field(
        default=2**20,
        description="User supplied primes below this bound are rejected as bad primes",
        ge=2,
    )

    cross_check: bool = Field(
        default=True,
        description="Recompute the answer modulo a second prime and compare",
    )

    reconstruction: Literal["padic", "multiprime"] = Field(
        default="padic",
        description="padic: Newton-Hensel lift one prime; multiprime: CRT over fresh primes",
    )

    max_lifting_steps: int = Field(
        default=14,
        description="Maximum number of precision doublings during p-adic lifting",
        ge=1,
        le=24,
    )

    max_primes: int = Field(
        default=64,
        description="Maximum number of primes combined in multiprime mode",
        ge=2,
    )


class RandomnessSettings(BaseModel):
    """Seeds, ranges of random choices and retry budgets."""

    default_seed: int = Field(
        default=2024,
        description="Seed used when none is given; runs are reproducible by default",
    )

    max_retries: int = Field(
        default=6,
        description="Attempts with fresh randomness before giving up",
        ge=1,
        le=100,
    )

    coordinate_range: int = Field(
        default=2**16,
        description="Entries of the Noether coordinate matrix lie in [-range, range]",
        ge=1,
    )

    lifting_range: int = Field(
        default=2**10,
        description="Coordinates of random lifting points lie in [-range, range]",
        ge=1,
    )

    matrix_range: int = Field(
        default=2**20,
        description="Entries of a random matrix a lie in [-range, range]",
        ge=1,
    )

    hitting_range: int = Field(
        default=8,
        description="Entries of random hitting matrices lie in [-range, range]",
        ge=1,
    )

    hitting_retries: int = Field(
        default=6,
        description="Random hitting sequences tried before CoverageFailure",
        ge=1,
    )

    primitive_range: int = Field(
        default=2**10,
        description="Coefficients of the common primitive element lie in [-range, range]",
        ge=1,
    )

    primitive_candidates: int = Field(
        default=8,
        description="Candidate primitive elements drawn per attempt",
        ge=1,
    )


class MembershipSettings(BaseModel):
    """Probabilistic membership test."""

    repetitions: int = Field(
        default=2,
        description="Independent draws of the structured matrix U per query",
        ge=1,
        le=64,
    )

    entry_range: int = Field(
        default=2**20,
        description="Entries U_2..U_s lie in [-range, range]",
        ge=1,
    )


class VerificationSettings(BaseModel):
    """Run-time checks on emitted data."""

    check_fibers: bool = Field(
        default=True,
        description="Run the invariant suite on every fibre the engine emits",
    )

    post_verify: bool = Field(
        default=True,
        description="Re-check every output point with the membership test",
    )


class OutputSettings(BaseModel):
    """CLI output."""

    precision: int = Field(
        default=10,
        description="Decimal digits printed for real sample points",
        ge=1,
        le=200,
    )

    format: Literal["text", "json"] = Field(
        default="text",
        description="Output format of the command line front end",
    )


class SolverSettings(BaseSettings):
    """Main solver settings with all configuration groups."""

    arithmetic: ArithmeticSettings = Field(default_factory=ArithmeticSettings)
    randomness: RandomnessSettings = Field(default_factory=RandomnessSettings)
    membership: MembershipSettings = Field(default_factory=MembershipSettings)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="DEGLOCI_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = SolverSettings()


def get_settings() -> SolverSettings:
    """Get the global settings instance."""
    return settings


def reload_settings() -> SolverSettings:
    """Reload settings from the environment (and ``.env``)."""
    global settings
    settings = SolverSettings()
    return settings
