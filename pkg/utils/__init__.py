"""
Слой утилит (Utility Layer).

Вспомогательные Pure Functions и иерархия ошибок, которые используются по всему проекту.

Модули:
    - errors: Доменные ошибки с кодами вида <модуль>.<вид>
    - hashing: SHA-256 ключи для кэша оракула
    - text_cleaner: Удаление комментариев и разбиение строк файла поверхности на токены
"""

from utils.errors import (
    ClusterError,
    DocumentError,
    DomainError,
    ExpansionError,
    LaurentError,
    OracleNotFound,
    PathError,
    QuiverError,
    StringError,
    SurfaceError,
)
from utils.hashing import compute_hash, hash_dict, oracle_cache_key
from utils.text_cleaner import (
    remove_comments,
    significant_lines,
    tokenize_line,
    truncate_text,
)

# Публичный API пакета
__all__ = [
    # Ошибки
    "DomainError",
    "SurfaceError",
    "QuiverError",
    "StringError",
    "PathError",
    "LaurentError",
    "ClusterError",
    "OracleNotFound",
    "ExpansionError",
    "DocumentError",

    # Функции хеширования
    "compute_hash",
    "hash_dict",
    "oracle_cache_key",

    # Разбор текста
    "remove_comments",
    "tokenize_line",
    "significant_lines",
    "truncate_text",
]

__version__ = "1.0.0"
