"""
Config entity holding the numeric tolerances and runtime knobs.
Values come from defaults, then environment variables, then CLI flags.
"""

import os
from typing import Optional, Tuple

from .errors import ConfigError

OUTPUT_FORMATS = ("text", "json", "csv")


class Config:
    """Runtime configuration.

    Attributes:
        __tol (float): Power-iteration residual tolerance
        __tie_gap (float): Spectral radii closer than this are treated as tied
        __workers (int): Worker processes for enumeration and search
        __output_format (str): One of text, json, csv
        __spill_dir (Optional[str]): Directory of the sqlite class store, None for in-memory only
        __max_iterations (int): Power-iteration cap
        __smith_tol (float): Tolerance for comparisons against the constant 2
        __accel_period (int): Iterations between Rayleigh-quotient steps
        __show_progress (bool): Draw tqdm progress bars on stderr
    """

    ENV_PREFIX = "DISS_SPECTRA_"

    def __init__(self, tol: float = 1e-10, tie_gap: float = 1e-8, workers: Optional[int] = None,
                 output_format: str = "text", spill_dir: Optional[str] = None,
                 max_iterations: int = 10 ** 6, smith_tol: float = 1e-12,
                 accel_period: int = 50, show_progress: bool = False):
        self.__tol = float(tol)
        self.__tie_gap = float(tie_gap)
        self.__workers = int(workers) if workers is not None else (os.cpu_count() or 1)
        self.__output_format = output_format
        self.__spill_dir = spill_dir
        self.__max_iterations = int(max_iterations)
        self.__smith_tol = float(smith_tol)
        self.__accel_period = int(accel_period)
        self.__show_progress = bool(show_progress)

    @classmethod
    def from_env(cls, environ=None) -> "Config":
        """Build a Config from DISS_SPECTRA_* environment variables.

        Raises:
            ConfigError: If a variable does not parse
        """
        env = os.environ if environ is None else environ
        kwargs = {}
        try:
            if env.get("DISS_SPECTRA_TOL"):
                kwargs["tol"] = float(env["DISS_SPECTRA_TOL"])
            if env.get("DISS_SPECTRA_TIE_GAP"):
                kwargs["tie_gap"] = float(env["DISS_SPECTRA_TIE_GAP"])
            if env.get("DISS_SPECTRA_WORKERS"):
                kwargs["workers"] = int(env["DISS_SPECTRA_WORKERS"])
        except ValueError as exc:
            raise ConfigError(f"bad environment value: {exc}") from exc
        if env.get("DISS_SPECTRA_FORMAT"):
            kwargs["output_format"] = env["DISS_SPECTRA_FORMAT"].lower()
        if env.get("DISS_SPECTRA_SPILL_DIR"):
            kwargs["spill_dir"] = env["DISS_SPECTRA_SPILL_DIR"]
        return cls(**kwargs)

    def with_overrides(self, **overrides) -> "Config":
        """Return a copy with every non-None override applied."""
        values = self.to_dict()
        for key, value in overrides.items():
            if key not in values:
                raise ConfigError(f"unknown config field: {key}")
            if value is not None:
                values[key] = value
        return Config(**values)

    def validate(self) -> Tuple[bool, str]:
        """Check the configuration.

        Returns:
            Tuple[bool, str]: (is_valid, error_message)
        """
        if not self.__tol > 0:
            return False, f"tol must be positive, got {self.__tol}"
        if self.__tie_gap < self.__tol:
            return False, f"tie_gap ({self.__tie_gap}) must be at least tol ({self.__tol})"
        if self.__workers < 1:
            return False, f"workers must be at least 1, got {self.__workers}"
        if self.__output_format not in OUTPUT_FORMATS:
            return False, f"output format must be one of {', '.join(OUTPUT_FORMATS)}"
        if self.__max_iterations < 1:
            return False, "max_iterations must be at least 1"
        if self.__accel_period < 1:
            return False, "accel_period must be at least 1"
        return True, ""

    def ensure_valid(self) -> "Config":
        ok, message = self.validate()
        if not ok:
            raise ConfigError(message)
        return self

    # Getter methods
    def get_tol(self) -> float:
        return self.__tol

    def get_tie_gap(self) -> float:
        return self.__tie_gap

    def get_workers(self) -> int:
        return self.__workers

    def get_output_format(self) -> str:
        return self.__output_format

    def get_spill_dir(self) -> Optional[str]:
        return self.__spill_dir

    def get_max_iterations(self) -> int:
        return self.__max_iterations

    def get_smith_tol(self) -> float:
        return self.__smith_tol

    def get_accel_period(self) -> int:
        return self.__accel_period

    def is_progress_shown(self) -> bool:
        return self.__show_progress

    def to_dict(self) -> dict:
        return {
            "tol": self.__tol,
            "tie_gap": self.__tie_gap,
            "workers": self.__workers,
            "output_format": self.__output_format,
            "spill_dir": self.__spill_dir,
            "max_iterations": self.__max_iterations,
            "smith_tol": self.__smith_tol,
            "accel_period": self.__accel_period,
            "show_progress": self.__show_progress,
        }

    def __str__(self) -> str:
        return f"Config(tol={self.__tol}, tie_gap={self.__tie_gap}, workers={self.__workers})"

    def __repr__(self) -> str:
        return f"Config({self.to_dict()})"
