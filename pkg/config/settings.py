"""
Application settings and configuration.

Environment variables only tune resource caps and log verbosity; they never
change what the toolkit prints on standard output.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).resolve().parent.parent


class Config:
    """Application configuration class."""

    def __init__(self):
        self.group_config = GroupConfig()
        self.character_config = CharacterConfig()
        self.cohomology_config = CohomologyConfig()
        self.enumeration_config = EnumerationConfig()
        self.logging_config = LoggingConfig()

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return os.getenv("ENVIRONMENT", "development").lower() == "development"


class GroupConfig:
    """Finite group engine configuration."""

    def __init__(self):
        self.size_cap = int(os.getenv("GROUP_SIZE_CAP", "10000"))
        self.closure_log_interval = int(os.getenv("GROUP_CLOSURE_LOG_INTERVAL", "500"))


class CharacterConfig:
    """Character table computation configuration."""

    def __init__(self):
        self.max_prime_attempts = int(os.getenv("DIXON_MAX_PRIME_ATTEMPTS", "8"))


class CohomologyConfig:
    """Lattice cohomology configuration."""

    def __init__(self):
        # box radius for the brute-force torsion search
        self.oracle_bound = int(os.getenv("ORACLE_SEARCH_BOUND", "3"))


class EnumerationConfig:
    """Candidate enumeration configuration."""

    def __init__(self):
        self.h_max = int(os.getenv("ENUM_H_MAX", "14"))
        self.h_max_limit = 14
        self.facts_path = os.getenv(
            "FACTS_PATH", str(PROJECT_ROOT / "data" / "default_facts.txt")
        )


class LoggingConfig:
    """Logging configuration."""

    def __init__(self):
        self.level = os.getenv("LOG_LEVEL", "WARNING").upper()
        self.format = os.getenv(
            "LOG_FORMAT", "%(asctime)s %(levelname)s %(name)s: %(message)s"
        )


# Global configuration instance
config = Config()
