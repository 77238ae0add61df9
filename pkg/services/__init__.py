"""
Слой инфраструктуры (Infrastructure Layer).

Технические компоненты для работы с файловой системой. Модули этого слоя не содержат
математики - они читают и пишут документы поверхностей и кэш результатов оракула.

Компоненты:
    - surface_io: Разбор и канонический вывод файлов поверхностей (.srf)
    - CacheManager: JSON-кэш результатов поиска по флипам на диске
"""

from services.cache_manager import CacheManager
from services.surface_io import (
    CurveSpec,
    SurfaceDocument,
    document_from_triangulation,
    load_surface,
    parse_surface,
    render_document,
)

# Публичный API пакета
__all__ = [
    # Основные классы
    "CacheManager",
    "SurfaceDocument",
    "CurveSpec",

    # Документы поверхностей
    "parse_surface",
    "render_document",
    "load_surface",
    "document_from_triangulation",
]

__version__ = "1.0.0"
