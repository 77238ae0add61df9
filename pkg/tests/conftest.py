"""
Общие фикстуры: разобранные поверхности из fixtures/, построители и оракул для polygon(8).
"""

import json
import random
from pathlib import Path
from typing import List, Optional

import pytest

from combinatorics.oracle import FlipOracle
from combinatorics.strings import CurveCrossing, derive_curve
from combinatorics.surface import Triangulation, polygon
from services import SurfaceDocument, load_surface

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def random_curve(triangulation: Triangulation, rng: random.Random, max_d: int = 8) -> CurveCrossing:
    """
    Случайная кривая без возвратов: блуждание по треугольникам, которое не пересекает
    только что пересечённую дугу повторно.
    """
    while True:
        start = rng.randrange(len(triangulation.triangles))
        length = rng.randint(1, max_d)
        crossings: List[str] = []
        current = start
        previous: Optional[str] = None
        while len(crossings) < length:
            options = [
                label for label in triangulation.triangles[current].labels
                if triangulation.arc(label).is_internal and label != previous
            ]
            if not options:
                break
            label = rng.choice(options)
            current, _ = triangulation.other_side(label, current)
            crossings.append(label)
            previous = label
        if crossings:
            return derive_curve(triangulation, start, crossings)


@pytest.fixture(scope="session")
def octagon_doc() -> SurfaceDocument:
    return load_surface(FIXTURES_DIR / "octagon.srf")


@pytest.fixture(scope="session")
def annulus_doc() -> SurfaceDocument:
    return load_surface(FIXTURES_DIR / "annulus.srf")


@pytest.fixture
def octagon(octagon_doc) -> Triangulation:
    return octagon_doc.triangulation


@pytest.fixture
def annulus(annulus_doc) -> Triangulation:
    return annulus_doc.triangulation


@pytest.fixture(scope="session")
def fan8() -> Triangulation:
    return polygon(8)


@pytest.fixture(scope="session")
def fan8_oracle(fan8) -> FlipOracle:
    """Полностью обойдённый граф обменов диска с 8 точками."""
    oracle = FlipOracle(fan8)
    oracle.explore()
    return oracle


@pytest.fixture
def cli_config(tmp_path) -> Path:
    """Конфигурация с логами и кэшем во временной директории."""
    config = {
        "logging": {"log_dir": str(tmp_path / "logs"), "console_level": "WARNING"},
        "oracle_settings": {"default_max_depth": None, "max_states": 100000},
        "cache_settings": {"enabled": True, "cache_dir": str(tmp_path / "cache")},
        "output_settings": {"format": "text"},
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    for name in ("EXPANSION_CONFIG", "EXPANSION_CACHE_DIR", "EXPANSION_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
