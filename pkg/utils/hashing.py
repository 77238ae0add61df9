"""
Утилиты для хеширования данных (Pure Functions).

Основное назначение:
    - Детерминированные ключи для кэша результатов оракула (data/cache/)
    - Стабильные идентификаторы поверхностей по их каноническому тексту

Используется SHA-256: одинаковый канонический документ, одинаковая кривая и
одинаковые пределы поиска всегда дают одно и то же имя файла в кэше.
"""

import hashlib
import json
from typing import Any, Dict


def compute_hash(text: str) -> str:
    """
    Вычисление SHA-256 хеша текста.

    Args:
        text: Текст для хеширования (обычно канонический документ поверхности)

    Returns:
        str: Шестнадцатеричное представление хеша
    """
    if not text:
        text = ""

    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def hash_dict(data: Dict[str, Any]) -> str:
    """
    Хеширование словаря. Ключи сортируются для детерминированности.

    Args:
        data: Словарь из JSON-совместимых значений

    Returns:
        str: SHA-256 хеш словаря
    """
    json_str = json.dumps(data, sort_keys=True, ensure_ascii=False)
    return compute_hash(json_str)


def oracle_cache_key(document_text: str, curve_key: Any, max_depth: int, max_states: int) -> str:
    """
    Ключ кэша для результата оракула по флипам.

    Args:
        document_text: Канонический текст поверхности (render_document)
        curve_key: Канонический ключ кривой относительно исходной триангуляции
        max_depth: Глубина поиска
        max_states: Предел числа состояний поиска

    Returns:
        str: Имя записи в кэше вида 'oracle_<sha256>'
    """
    payload = {
        "surface": compute_hash(document_text),
        "curve": json.dumps(curve_key, ensure_ascii=False),
        "max_depth": max_depth,
        "max_states": max_states,
    }
    return f"oracle_{hash_dict(payload)}"
