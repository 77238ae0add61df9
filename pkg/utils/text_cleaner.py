# utils/text_cleaner.py

"""
Набор чистых функций (Pure Functions) для предобработки текстовых файлов поверхностей.

Основные задачи:
    - Удаление комментариев (от '#' до конца строки)
    - Разбиение строки на токены с сохранением номеров колонок для диагностики
    - Обрезка длинных строк для логирования

Примечание:
    Все функции являются pure functions - не имеют побочных эффектов,
    всегда возвращают одинаковый результат для одинаковых входных данных.
"""

import re
from typing import List, Tuple

Token = Tuple[str, int]

_TOKEN_RE = re.compile(r'\S+')


def remove_comments(line: str) -> str:
    """
    Удаляет комментарий из строки.

    Args:
        line: Строка файла поверхности

    Returns:
        str: Строка без комментария

    Examples:
        >>> remove_comments('arc t1 internal  # диагональ')
        'arc t1 internal  '
    """
    position = line.find('#')
    if position < 0:
        return line
    return line[:position]


def tokenize_line(line: str) -> List[Token]:
    """
    Разбивает строку на токены, запоминая колонку начала каждого (с единицы).

    Args:
        line: Строка без комментария

    Returns:
        List[Token]: Пары (токен, колонка)

    Examples:
        >>> tokenize_line('arc t1  internal')
        [('arc', 1), ('t1', 5), ('internal', 9)]
    """
    return [(match.group(0), match.start() + 1) for match in _TOKEN_RE.finditer(line)]


def significant_lines(text: str) -> List[Tuple[int, List[Token]]]:
    """
    Возвращает непустые строки документа в виде токенов.

    Args:
        text: Полный текст документа

    Returns:
        List: Пары (номер строки с единицы, токены); пустые строки и строки
              из одних комментариев пропускаются
    """
    result = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        tokens = tokenize_line(remove_comments(raw_line))
        if tokens:
            result.append((line_number, tokens))
    return result


def truncate_text(text: str, max_length: int = 200, suffix: str = "...") -> str:
    """
    Обрезает текст до указанной длины с добавлением суффикса.

    Полезно для логирования длинных многочленов.
    """
    if len(text) <= max_length:
        return text
    return text[:max_length - len(suffix)] + suffix
