"""
Чтение и запись файлов поверхностей (.srf).

Построчный формат (комментарии от '#' до конца строки):

    arc <имя> internal|boundary
    triangle <±имя> <±имя> <±имя>          # против часовой стрелки
    curve <имя> from <номер треугольника> crosses <имя> ...
    curve <имя> arc <имя>

Внутренние дуги нумеруются 1..n в порядке объявления, треугольники - с единицы в порядке файла.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from combinatorics.strings import CurveCrossing, arc_curve, derive_curve
from combinatorics.surface import BOUNDARY, INTERNAL, Arc, Slot, Triangle, Triangulation, validate
from utils.errors import DocumentError, DomainError
from utils.text_cleaner import Token, significant_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveSpec:
    """Описание кривой в том виде, в каком оно записано в файле."""

    name: str
    start: Optional[int] = None
    crossings: Tuple[str, ...] = ()
    arc: Optional[str] = None

    def render(self) -> str:
        if self.arc is not None:
            return f"curve {self.name} arc {self.arc}"
        return f"curve {self.name} from {self.start + 1} crosses {' '.join(self.crossings)}"


@dataclass(frozen=True)
class SurfaceDocument:
    triangulation: Triangulation
    specs: Tuple[CurveSpec, ...] = ()
    curves: Dict[str, CurveCrossing] = field(default_factory=dict, compare=False)

    def curve(self, name: str) -> CurveCrossing:
        """
        Raises:
            DocumentError: Кривой с таким именем нет
        """
        try:
            return self.curves[name]
        except KeyError:
            known = ", ".join(spec.name for spec in self.specs) or "none"
            raise DocumentError("unknown-curve", f"unknown curve '{name}' (known: {known})") from None


def _fail(kind: str, message: str, line: int, token: Optional[Token] = None) -> DocumentError:
    return DocumentError(kind, message, line, token[1] if token else None)


def _parse_slot(token: Token, line: int) -> Slot:
    text, _ = token
    if len(text) < 2 or text[0] not in "+-":
        raise _fail("syntax", f"expected a signed arc like +t1, got '{text}'", line, token)
    return Slot(text[1:], 1 if text[0] == "+" else -1)


def parse_surface(text: str) -> SurfaceDocument:
    """
    Разбор документа поверхности.

    Raises:
        DocumentError: Синтаксическая ошибка (с номером строки и колонки)
        SurfaceError, StringError: Семантическая ошибка триангуляции или кривой
    """
    arcs: List[Arc] = []
    declared: Dict[str, int] = {}
    triangles: List[Tuple[int, Triangle]] = []
    curve_lines: List[Tuple[int, CurveSpec]] = []

    for line, tokens in significant_lines(text):
        keyword = tokens[0][0]

        if keyword == "arc":
            if len(tokens) != 3:
                raise _fail("syntax", "expected 'arc <name> internal|boundary'", line, tokens[0])
            (name, _), (kind, _) = tokens[1], tokens[2]
            if kind not in (INTERNAL, BOUNDARY):
                raise _fail("syntax", f"arc kind must be internal or boundary, got '{kind}'", line, tokens[2])
            if name in declared:
                raise _fail("duplicate-arc-declaration", f"arc {name} already declared on line {declared[name]}", line, tokens[1])
            declared[name] = line
            index = sum(1 for arc in arcs if arc.is_internal) + 1 if kind == INTERNAL else None
            arcs.append(Arc(name, kind, index))

        elif keyword == "triangle":
            if len(tokens) != 4:
                raise _fail("syntax", "a triangle needs exactly three signed arcs", line, tokens[0])
            slots = []
            for token in tokens[1:]:
                slot = _parse_slot(token, line)
                if slot.label not in declared:
                    raise _fail("unknown-arc", f"arc {slot.label} is not declared", line, token)
                if any(previous.label == slot.label for previous in slots):
                    raise _fail("duplicate-arc", f"triangle lists arc {slot.label} twice", line, token)
                slots.append(slot)
            triangles.append((line, Triangle(tuple(slots))))

        elif keyword == "curve":
            curve_lines.append((line, _parse_curve(tokens, line)))

        else:
            raise _fail("syntax", f"unknown keyword '{keyword}'", line, tokens[0])

    triangulation = Triangulation(tuple(arcs), tuple(triangle for _, triangle in triangles))
    validate(triangulation).raise_for_errors()

    specs: List[CurveSpec] = []
    curves: Dict[str, CurveCrossing] = {}
    for line, spec in curve_lines:
        if spec.name in curves:
            raise _fail("duplicate-curve", f"curve {spec.name} defined twice", line)
        try:
            if spec.arc is not None:
                curve = arc_curve(triangulation, spec.arc)
            else:
                curve = derive_curve(triangulation, spec.start, spec.crossings)
        except DomainError as e:
            raise type(e)(e.kind, f"line {line}: {e.message}") from e
        specs.append(spec)
        curves[spec.name] = curve

    logger.info(
        f"Surface parsed: {len(arcs)} arcs, {len(triangles)} triangles, {len(curves)} curves"
    )
    return SurfaceDocument(triangulation, tuple(specs), curves)


def _parse_curve(tokens: List[Token], line: int) -> CurveSpec:
    if len(tokens) < 4:
        raise _fail("syntax", "expected 'curve <name> from <k> crosses ...' or 'curve <name> arc <arc>'", line, tokens[0])
    name = tokens[1][0]
    form = tokens[2][0]
    if form == "arc":
        if len(tokens) != 4:
            raise _fail("syntax", "arc form takes exactly one arc", line, tokens[3] if len(tokens) > 4 else tokens[0])
        return CurveSpec(name, arc=tokens[3][0])
    if form != "from":
        raise _fail("syntax", f"expected 'from' or 'arc', got '{form}'", line, tokens[2])
    start_text = tokens[3][0]
    if not start_text.isdigit() or int(start_text) < 1:
        raise _fail("syntax", f"triangle number must be a positive integer, got '{start_text}'", line, tokens[3])
    if len(tokens) < 6 or tokens[4][0] != "crosses":
        raise _fail("syntax", "expected 'crosses' followed by at least one arc", line, tokens[min(4, len(tokens) - 1)])
    return CurveSpec(name, start=int(start_text) - 1, crossings=tuple(token[0] for token in tokens[5:]))


def render_document(document: SurfaceDocument) -> str:
    """Канонический текст документа: дуги, треугольники, кривые в порядке хранения."""
    triangulation = document.triangulation
    lines = [f"arc {arc.label} {arc.kind}" for arc in triangulation.arcs]
    lines += [f"triangle {triangle}" for triangle in triangulation.triangles]
    lines += [spec.render() for spec in document.specs]
    return "\n".join(lines) + "\n"


def load_surface(path: Union[str, Path]) -> SurfaceDocument:
    """
    Чтение файла поверхности.

    Raises:
        FileNotFoundError: Файла нет
    """
    path = Path(path)
    logger.debug(f"Loading surface file {path}")
    return parse_surface(path.read_text(encoding="utf-8"))


def document_from_triangulation(triangulation: Triangulation) -> SurfaceDocument:
    """Документ без кривых (для построителей polygon/annulus)."""
    validate(triangulation).raise_for_errors()
    return SurfaceDocument(triangulation)
