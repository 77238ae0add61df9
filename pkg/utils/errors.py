"""
Иерархия доменных ошибок.

Каждая ошибка несёт код вида ``<модуль>.<вид>`` (например ``surface.duplicate-arc``),
по которому CLI печатает диагностику и выбирает код возврата. Все классы наследуются
от ValueError, поэтому вызывающий код может ловить их как обычные ошибки значений.
"""

from typing import Optional


class DomainError(ValueError):
    """
    Базовая ошибка предметной области.

    Args:
        kind: Вид ошибки внутри модуля (например 'duplicate-arc')
        message: Человекочитаемое описание
    """

    module = "core"

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
        self.message = message

    @property
    def code(self) -> str:
        """Код ошибки с указанием модуля."""
        return f"{self.module}.{self.kind}"

    @property
    def details(self) -> str:
        """Сообщение для диагностики (у ошибок документа - с позицией)."""
        return self.message

    def __str__(self) -> str:
        return f"{self.code}: {self.details}"


class SurfaceError(DomainError):
    module = "surface"


class QuiverError(DomainError):
    module = "quiver"


class StringError(DomainError):
    module = "strings"


class PathError(DomainError):
    module = "paths"


class LaurentError(DomainError):
    module = "laurent"


class ClusterError(DomainError):
    module = "cluster"


class OracleNotFound(ClusterError):
    """Поиск в ширину исчерпал глубину, так и не встретив искомую дугу."""

    def __init__(self, depth: int, message: Optional[str] = None):
        super().__init__("not-found", message or f"arc not reached within depth {depth}")
        self.depth = depth


class ExpansionError(DomainError):
    module = "expansion"


class DocumentError(DomainError):
    """Ошибка разбора файла поверхности с точной позицией."""

    module = "cli"

    def __init__(self, kind: str, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(kind, message)
        self.line = line
        self.column = column

    @property
    def details(self) -> str:
        if self.line is None:
            return self.message
        position = f"line {self.line}" if self.column is None else f"line {self.line}, column {self.column}"
        return f"{position}: {self.message}"
