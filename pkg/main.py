# main.py

"""
CLI точка входа: разложение Шифлера для кривых на непроколотых поверхностях.

Запуск:
    python main.py COMMAND --surface FILE [--curve NAME] [OPTIONS]

Команды:
    stats       Род, число компонент края, отмеченных точек и внутренних дуг
    bmatrix     Знаковая матрица смежности B
    qp          Колчан с потенциалом
    string      Строка w(Γ,γ) кривой
    subsets     Замкнутые подмножества позиций S_Γ(γ)
    mu          Таблица μ_e по векторам размерности
    paths       Полные (Γ,γ)-пути с флагами и весами
    expand      Разложение E^Γ_γ (--method paths|modules|both)
    index       Индекс кривой
    gvector     g-вектор
    fpoly       F-многочлен
    mutate      Мутация начального сида (--seq k1,k2,...)
    oracle      Кластерная переменная поиском по флипам (--max-depth N)
    verify      Перекрёстная проверка (--oracle)
    render      Канонический текст файла поверхности
    cache       Статистика и очистка кэша оракула (--stats | --clear)

Системные опции:
    --config FILE           Файл конфигурации [default: config.json рядом с main.py]
    --debug                 Подробное логирование в stderr
    -h, --help              Справка

Коды возврата: 0 - успех, 1 - ошибка предметной области или проверка не прошла, 2 - ошибка использования.

Примеры:
    python main.py stats --surface fixtures/octagon.srf
    python main.py expand --surface fixtures/annulus.srf --curve gamma2 --method both
    python main.py verify --surface fixtures/octagon.srf --curve gamma --oracle
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from algebra.cluster import initial_seed, mutate_sequence, render_seed
from algebra.laurent import parse, render
from combinatorics.expansion import (
    curve_f_polynomial,
    curve_g_vector,
    exchange_matrix,
    expansion_modules,
    expansion_paths,
    index_of_curve,
    verify_curve,
)
from combinatorics.oracle import FlipOracle
from combinatorics.paths import enumerate_paths, path_weight
from combinatorics.quiver import build_qp, render_qp
from combinatorics.strings import (
    closed_subsets,
    curve_key,
    format_subset,
    mu_counts,
    string_of_curve,
)
from combinatorics.surface import surface_stats
from services import CacheManager, SurfaceDocument, load_surface, render_document
from utils.errors import DocumentError, DomainError, OracleNotFound
from utils.hashing import oracle_cache_key

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "config.json"

CURVE_COMMANDS = {"string", "subsets", "mu", "paths", "expand", "index", "gvector", "fpoly", "oracle", "verify"}

logger = logging.getLogger(__name__)


# ============================================================================
# НАСТРОЙКА ЛОГИРОВАНИЯ
# ============================================================================

def setup_logging(debug_mode: bool = False, log_dir: str = "data/logs", console_level: str = "WARNING"):
    """
    Настройка логирования: файл data/logs/app.log и stderr.

    stdout занят только результатами команд.

    Args:
        debug_mode: DEBUG в файл и в консоль
        log_dir: Директория лог-файла
        console_level: Уровень консольного вывода без --debug
    """
    level = logging.DEBUG if debug_mode else logging.INFO
    format_str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    Path(log_dir).mkdir(parents=True, exist_ok=True)

    file_handler = logging.FileHandler(Path(log_dir) / "app.log", encoding='utf-8')
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if debug_mode else getattr(logging, console_level.upper(), logging.WARNING))

    logging.basicConfig(
        level=level,
        format=format_str,
        handlers=[file_handler, console_handler],
        force=True,
    )


# ============================================================================
# ЗАГРУЗКА КОНФИГУРАЦИИ
# ============================================================================

def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Загрузка конфигурации из JSON с переопределениями из окружения (.env).

    Порядок: --config, затем EXPANSION_CONFIG, затем config.json рядом с main.py.

    Raises:
        FileNotFoundError: Файл конфигурации не найден
    """
    load_dotenv()
    path = config_path or os.getenv("EXPANSION_CONFIG") or str(DEFAULT_CONFIG_PATH)
    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file '{path}' not found")
    with open(path, 'r', encoding='utf-8') as f:
        config = json.load(f)

    config.setdefault("logging", {})
    config.setdefault("oracle_settings", {})
    config.setdefault("cache_settings", {})
    config.setdefault("output_settings", {})

    if os.getenv("EXPANSION_CACHE_DIR"):
        config["cache_settings"]["cache_dir"] = os.getenv("EXPANSION_CACHE_DIR")
    if os.getenv("EXPANSION_LOG_LEVEL"):
        config["logging"]["console_level"] = os.getenv("EXPANSION_LOG_LEVEL")
    return config


# ============================================================================
# ПАРСИНГ АРГУМЕНТОВ КОМАНДНОЙ СТРОКИ
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", help="Файл поверхности (.srf)")
    common.add_argument("--curve", help="Имя кривой из файла поверхности")
    common.add_argument("--format", choices=["text"], default=None, help="Формат вывода [default: output_settings.format]")
    common.add_argument("--config", default=None, help="Файл конфигурации")
    common.add_argument("--debug", action="store_true", help="Подробное логирование в stderr")

    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Разложение Шифлера: пути, строковые модули и оракул по флипам",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры использования:
  python main.py stats --surface fixtures/octagon.srf
  python main.py paths --surface fixtures/octagon.srf --curve gamma
  python main.py expand --surface fixtures/annulus.srf --curve gamma2 --method both
        """
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    for name, help_text in [
        ("stats", "топологические характеристики поверхности"),
        ("bmatrix", "знаковая матрица смежности"),
        ("qp", "колчан с потенциалом"),
        ("string", "строка кривой"),
        ("subsets", "замкнутые подмножества позиций"),
        ("mu", "таблица μ"),
        ("paths", "полные пути"),
        ("index", "индекс кривой"),
        ("gvector", "g-вектор"),
        ("fpoly", "F-многочлен"),
        ("render", "канонический текст поверхности"),
    ]:
        commands.add_parser(name, parents=[common], help=help_text)

    expand = commands.add_parser("expand", parents=[common], help="разложение E^Γ_γ")
    expand.add_argument("--method", choices=["paths", "modules", "both"], default="paths")

    mutate = commands.add_parser("mutate", parents=[common], help="мутация начального сида")
    mutate.add_argument("--seq", default="", help="Направления через запятую, например 1,2,1")

    oracle = commands.add_parser("oracle", parents=[common], help="кластерная переменная по флипам")
    oracle.add_argument("--max-depth", type=int, default=None)
    oracle.add_argument("--no-cache", action="store_true", help="Не читать и не писать кэш")

    verify = commands.add_parser("verify", parents=[common], help="перекрёстная проверка")
    verify.add_argument("--oracle", action="store_true", help="Сравнить с оракулом по флипам")
    verify.add_argument("--max-depth", type=int, default=None)

    cache = commands.add_parser("cache", parents=[common], help="кэш оракула")
    action = cache.add_mutually_exclusive_group(required=True)
    action.add_argument("--stats", action="store_true")
    action.add_argument("--clear", action="store_true")
    cache.add_argument("--max-age-days", type=int, default=None)

    return parser


# ============================================================================
# КОМАНДЫ
# ============================================================================

def format_vector(vector: Sequence[int]) -> str:
    return "(" + ",".join(str(int(v)) for v in vector) + ")"


class CommandContext:
    """Общие данные команды: аргументы, конфигурация и лениво загруженный документ."""

    def __init__(self, args: argparse.Namespace, config: Dict[str, Any]):
        self.args = args
        self.config = config
        self._document: Optional[SurfaceDocument] = None

    @property
    def document(self) -> SurfaceDocument:
        if self._document is None:
            self._document = load_surface(self.args.surface)
        return self._document

    @property
    def triangulation(self):
        return self.document.triangulation

    @property
    def curve(self):
        return self.document.curve(self.args.curve)

    def max_depth(self) -> Optional[int]:
        if self.args.max_depth is not None:
            return self.args.max_depth
        return self.config["oracle_settings"].get("default_max_depth")

    def max_states(self) -> Optional[int]:
        return self.config["oracle_settings"].get("max_states")


CommandResult = Tuple[int, List[str]]


def cmd_stats(ctx: CommandContext) -> CommandResult:
    return 0, [str(surface_stats(ctx.triangulation))]


def cmd_bmatrix(ctx: CommandContext) -> CommandResult:
    matrix = exchange_matrix(ctx.triangulation)
    return 0, [" ".join(str(int(v)) for v in row) for row in matrix]


def cmd_qp(ctx: CommandContext) -> CommandResult:
    return 0, render_qp(build_qp(ctx.triangulation))


def cmd_string(ctx: CommandContext) -> CommandResult:
    return 0, [str(string_of_curve(ctx.triangulation, ctx.curve))]


def cmd_subsets(ctx: CommandContext) -> CommandResult:
    word = string_of_curve(ctx.triangulation, ctx.curve)
    return 0, [format_subset(subset) for subset in closed_subsets(word)]


def cmd_mu(ctx: CommandContext) -> CommandResult:
    word = string_of_curve(ctx.triangulation, ctx.curve)
    return 0, [f"{format_vector(vector)} {count}" for vector, count in mu_counts(word).items()]


def cmd_paths(ctx: CommandContext) -> CommandResult:
    triangulation, curve = ctx.triangulation, ctx.curve
    lines = []
    for path in enumerate_paths(triangulation, curve):
        weight = render(path_weight(triangulation, curve, path))
        lines.append(f"{path} | {format_subset(path.oriented)} | {weight}")
    return 0, lines


def cmd_expand(ctx: CommandContext) -> CommandResult:
    triangulation, curve = ctx.triangulation, ctx.curve
    method = ctx.args.method
    if method == "paths":
        return 0, [render(expansion_paths(triangulation, curve).polynomial)]
    if method == "modules":
        return 0, [render(expansion_modules(triangulation, curve).polynomial)]

    by_paths = expansion_paths(triangulation, curve).polynomial
    by_modules = expansion_modules(triangulation, curve).polynomial
    match = by_paths == by_modules
    if not match:
        logger.error("Expansion routes disagree")
    return (0 if match else 1), [render(by_paths), render(by_modules), "MATCH" if match else "MISMATCH"]


def cmd_index(ctx: CommandContext) -> CommandResult:
    return 0, [format_vector(index_of_curve(ctx.triangulation, ctx.curve))]


def cmd_gvector(ctx: CommandContext) -> CommandResult:
    return 0, [format_vector(curve_g_vector(ctx.triangulation, ctx.curve))]


def cmd_fpoly(ctx: CommandContext) -> CommandResult:
    return 0, [render(curve_f_polynomial(ctx.triangulation, ctx.curve))]


def cmd_mutate(ctx: CommandContext) -> CommandResult:
    triangulation = ctx.triangulation
    text = ctx.args.seq.strip()
    try:
        directions = [int(part) for part in text.split(",") if part.strip()] if text else []
    except ValueError:
        raise DocumentError("bad-sequence", f"mutation sequence must be comma-separated integers, got '{text}'") from None
    seed = initial_seed(exchange_matrix(triangulation), triangulation.internal_labels)
    return 0, render_seed(mutate_sequence(seed, directions))


def _cache_manager(ctx: CommandContext) -> Optional[CacheManager]:
    settings = ctx.config["cache_settings"]
    if not settings.get("enabled", True) or getattr(ctx.args, "no_cache", False):
        return None
    return CacheManager(cache_dir=settings.get("cache_dir", "data/cache"))


def cmd_oracle(ctx: CommandContext) -> CommandResult:
    triangulation, curve = ctx.triangulation, ctx.curve
    oracle = FlipOracle(triangulation, ctx.max_depth(), ctx.max_states())
    key = curve_key(curve)
    cache = _cache_manager(ctx)
    cache_key = oracle_cache_key(render_document(ctx.document), key, oracle.max_depth, oracle.max_states)

    cached = cache.load_oracle_result(cache_key) if cache else None
    if cached is not None:
        logger.info(f"Oracle result taken from cache: {cache_key}")
        if cached["status"] == "found":
            return 0, [render(parse(cached["polynomial"], triangulation.n))]
        return 1, [f"NOT-FOUND depth={cached['depth']}"]

    try:
        variable = oracle.variable_for(curve)
        payload = {"status": "found", "polynomial": render(variable)}
        code, lines = 0, [render(variable)]
    except OracleNotFound as e:
        payload = {"status": "not-found", "depth": e.depth}
        code, lines = 1, [f"NOT-FOUND depth={e.depth}"]

    if cache and oracle.truncated:
        logger.info("Oracle search hit the state limit; result is not cached")
    elif cache:
        payload.update({
            "curve_key": json.loads(json.dumps(key)),
            "max_depth": oracle.max_depth,
            "max_states": oracle.max_states,
        })
        cache.save(cache_key, payload)
    return code, lines


def cmd_verify(ctx: CommandContext) -> CommandResult:
    oracle = None
    if ctx.args.oracle:
        oracle = FlipOracle(ctx.triangulation, ctx.max_depth(), ctx.max_states())
    report = verify_curve(ctx.triangulation, ctx.curve, ctx.args.oracle, ctx.max_depth(), oracle)
    return (0 if report.ok else 1), report.lines()


def cmd_render(ctx: CommandContext) -> CommandResult:
    return 0, render_document(ctx.document).rstrip("\n").split("\n")


def cmd_cache(ctx: CommandContext) -> CommandResult:
    cache = CacheManager(cache_dir=ctx.config["cache_settings"].get("cache_dir", "data/cache"))
    if ctx.args.clear:
        deleted = cache.clear(ctx.args.max_age_days)
        return 0, [f"deleted {deleted}"]
    stats = cache.get_stats()
    return 0, [f"{name} {stats[name]}" for name in sorted(stats)]


COMMANDS: Dict[str, Callable[[CommandContext], CommandResult]] = {
    "stats": cmd_stats,
    "bmatrix": cmd_bmatrix,
    "qp": cmd_qp,
    "string": cmd_string,
    "subsets": cmd_subsets,
    "mu": cmd_mu,
    "paths": cmd_paths,
    "expand": cmd_expand,
    "index": cmd_index,
    "gvector": cmd_gvector,
    "fpoly": cmd_fpoly,
    "mutate": cmd_mutate,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "render": cmd_render,
    "cache": cmd_cache,
}


# ============================================================================
# ГЛАВНАЯ ФУНКЦИЯ
# ============================================================================

def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, str]:
    """
    Выполнение одной команды.

    Args:
        argv: Аргументы командной строки без имени программы

    Returns:
        Tuple: (код возврата, текст для stdout)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command != "cache" and not args.surface:
            parser.error(f"{args.command} requires --surface")
        if args.command in CURVE_COMMANDS and not args.curve:
            parser.error(f"{args.command} requires --curve")
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else 2), ""

    try:
        config = load_config(args.config)
        setup_logging(
            args.debug,
            config["logging"].get("log_dir", "data/logs"),
            config["logging"].get("console_level", "WARNING"),
        )

        logger.info("=" * 70)
        logger.info(f"COMMAND {args.command}")
        logger.info("=" * 70)

        output_format = args.format or config["output_settings"].get("format", "text")
        if output_format != "text":
            raise DocumentError("unsupported-format", f"output format '{output_format}' is not supported (only 'text')")

        code, lines = COMMANDS[args.command](CommandContext(args, config))
        logger.info(f"Command {args.command} finished with exit code {code}")
        return code, "".join(f"{line}\n" for line in lines)

    except DomainError as e:
        logger.info(f"Domain error: {e}")
        print(f"error[{e.code}]: {e.details}", file=sys.stderr)
        return 1, ""
    except FileNotFoundError as e:
        print(f"error[cli.file-not-found]: {e}", file=sys.stderr)
        return 1, ""
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130, ""
    except Exception as e:
        logging.error(f"Critical Error: {e}", exc_info=True)
        print(f"error[internal]: {e}", file=sys.stderr)
        return 1, ""


def main():
    code, output = run(sys.argv[1:])
    sys.stdout.write(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
