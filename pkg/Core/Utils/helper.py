import os
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List

import yaml
from dotenv import load_dotenv

from Core.Utils.logger import Logger

logger = Logger.get_logger()

ROOT_DIR = Path(__file__).resolve().parents[2]
CONFIG_PATH = ROOT_DIR / "config.yaml"
STDLIB_DIR = ROOT_DIR / "Stdlib" / "theories"
STDLIB_PREFIX = "stdlib/"


@dataclass(frozen=True)
class Settings:
    max_level: int = 4
    substitution_levels: int = 1
    depth: int = 3
    fuel: int = 50
    width: int = 200
    slack: int = 2
    samples: int = 200
    sub_depth: int = 2
    schema: int = 1
    include_timing: bool = False


class Helper:
    @staticmethod
    def load_config(path: Path) -> Dict[str, Any]:
        with open(path, "r", encoding="utf-8") as file:
            return yaml.safe_load(file) or {}

    @staticmethod
    @lru_cache(maxsize=1)
    def get_settings() -> Settings:
        """Settings from config.yaml, overridden by TTK_* environment variables."""
        load_dotenv()
        path = Path(os.getenv("TTK_CONFIG", CONFIG_PATH))
        config = Helper.load_config(path) if path.exists() else {}
        if not config:
            logger.debug("📂 No config at %s, using defaults", path)

        kernel = config.get("kernel", {})
        bounds = config.get("bounds", {})
        report = config.get("report", {})
        settings = Settings(
            max_level=int(kernel.get("max_level", Settings.max_level)),
            substitution_levels=int(kernel.get("substitution_levels", Settings.substitution_levels)),
            depth=int(bounds.get("depth", Settings.depth)),
            fuel=int(bounds.get("fuel", Settings.fuel)),
            width=int(bounds.get("width", Settings.width)),
            slack=int(bounds.get("slack", Settings.slack)),
            samples=int(bounds.get("samples", Settings.samples)),
            sub_depth=int(bounds.get("sub_depth", Settings.sub_depth)),
            schema=int(report.get("schema", Settings.schema)),
            include_timing=bool(report.get("include_timing", Settings.include_timing)),
        )

        if os.getenv("TTK_DEFAULT_FUEL"):
            settings = replace(settings, fuel=int(os.environ["TTK_DEFAULT_FUEL"]))
            logger.debug("🔑 Fuel overridden from environment: %s", settings.fuel)
        if os.getenv("TTK_MAX_LEVEL"):
            settings = replace(settings, max_level=int(os.environ["TTK_MAX_LEVEL"]))
            logger.debug("🔑 Max level overridden from environment: %s", settings.max_level)
        return settings

    @staticmethod
    def resolve_theory_path(path: str) -> Path:
        """`stdlib/NAME.th` points into the packaged theory directory."""
        if path.startswith(STDLIB_PREFIX):
            return STDLIB_DIR / path[len(STDLIB_PREFIX):]
        return Path(path)

    @staticmethod
    def read_text(path: str) -> str:
        with open(Helper.resolve_theory_path(path), "r", encoding="utf-8") as file:
            return file.read()

    @staticmethod
    def save_theory_file(path: Path, file: Any) -> None:
        with open(path, "wb") as f:
            f.write(file.getbuffer())

    @staticmethod
    def stdlib_files() -> List[str]:
        return sorted(f"{STDLIB_PREFIX}{p.name}" for p in STDLIB_DIR.glob("*.th"))
