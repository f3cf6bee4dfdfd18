import argparse
import importlib
import importlib.util
import logging
import pkgutil
import traceback
from dataclasses import dataclass
from os import environ, path
from types import ModuleType
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import QuadraticQuiverAlgebra
from .complex import SimplicialComplex, parse_complex
from .documents import load_algebra, load_perversity
from .errors import DocumentError, ValidationError, VerificationError
from .models import ReportStore, RunReport, Settings, Verdict
from .perversity import Perversity, parse_perversity
from .utils import digest

T_Handler = Callable[[argparse.Namespace], RunReport]
T_Dispatcher = Callable[[RunReport, argparse.Namespace], None]

OPTIONS: Dict[str, Tuple[Tuple[str, ...], Dict[str, Any]]] = {
    "perversity": (("--perversity", "-p"), {"default": "top",
                                         "help": "top, bottom, values such as 0,-1,1, or a JSON document"}),
    "which": (("--which",), {"choices": ["A", "B"], "default": "A", "help": "which algebra"}),
    "seed": (("--seed",), {"type": int, "default": 0, "help": "seed of every random choice"}),
    "max_degree": (("--max-degree",), {"type": int, "default": None, "help": "last graded degree to report"}),
    "max_steps": (("--max-steps",), {"type": int, "default": None, "help": "resolution step limit"}),
    "samples": (("--samples",), {"type": int, "default": None, "help": "number of random samples"}),
    "clamp": (("--clamp",), {"action": "store_true", "help": "clamp skeleton levels to the perversity range"}),
    "complex": (("--complex",), {"default": None, "help": "complex document for sheaf documents without one"}),
    "algebra": (("--algebra",), {"default": None, "help": "algebra document: built-in relations plus extra blocks"}),
    "sheaf": (("--sheaf",), {"default": None, "help": "R-object to round-trip instead of random ones"}),
}

DOCUMENT_OPTIONS = ("complex", "algebra", "sheaf")


def is_document(value: str) -> bool:
    return value.strip().lower().endswith(".json")


@dataclass
class Command:
    __slots__ = ["name", "handler", "help", "inputs", "options"]
    name: str
    handler: T_Handler
    help: str
    inputs: Tuple[str, ...]
    options: Tuple[str, ...]


class App:
    def __init__(self):
        # hook containers
        self._commands: Dict[str, Command] = {}
        self._dispatchers: List[T_Dispatcher] = []

        # settings and storage
        self.settings_file: str = environ.get("PYPERVERSE_SETTINGS", "data/settings.json")
        self._settings: Optional[Settings] = None
        self._store: Optional[ReportStore] = None

        # command modules
        self._modules: Dict[str, ModuleType] = {}

    @property
    def settings(self) -> Settings:
        if self._settings is None:
            self._settings = Settings(self.settings_file)
        return self._settings

    @property
    def store(self) -> Optional[ReportStore]:
        if self._store is None and (url := self.settings.get("report_storage")):
            self._store = ReportStore(url, "reports")
        return self._store

    @property
    def commands(self) -> Dict[str, Command]:
        return self._commands

    @property
    def modules(self) -> Dict[str, ModuleType]:
        return self._modules

    # Command decorators
    def command(self, name: str, help: str, inputs: Sequence[str] = ("complex",), options: Sequence[str] = ()):
        def wrapper(func: T_Handler):
            if name in self._commands:
                logging.warning(f"Command {name} registered twice, keeping the latest.")
            for option in options:
                if option not in OPTIONS:
                    raise KeyError(f"Unknown option {option} for command {name}")
            self._commands[name] = Command(name, func, help, tuple(inputs), tuple(options))
            return func

        return wrapper

    def dispatcher(self, func: T_Dispatcher):
        self._dispatchers.append(func)
        return func

    def load_commands(self, builtin: bool = True, blacklist: Iterable[str] = (), extra_dir: Optional[str] = None):
        blacklist = set(blacklist)
        if builtin:
            builtin_dir = path.join(path.dirname(path.abspath(__file__)), "commands")
            for _, module_name, _ in pkgutil.iter_modules([builtin_dir]):
                if module_name not in blacklist and module_name not in self._modules:
                    self._modules[module_name] = importlib.import_module(f"pyperverse.commands.{module_name}")
        if extra_dir:
            for finder, module_name, _ in pkgutil.iter_modules([extra_dir]):
                if module_name in blacklist or module_name in self._modules:
                    continue
                spec = finder.find_spec(module_name)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                self._modules[module_name] = module
        logging.debug(f"Loaded command modules: {list(self._modules.keys())}")

    # Input helpers shared by the commands
    def setting(self, args: argparse.Namespace, name: str):
        value = getattr(args, name, None)
        return self.settings.get(name) if value is None else value

    @staticmethod
    def read(filename: str) -> bytes:
        try:
            with open(filename, mode="rb") as f:
                return f.read()
        except OSError as e:
            raise DocumentError(f"Cannot read {filename}: {e.strerror}") from e

    def load_complex(self, filename: str) -> SimplicialComplex:
        return parse_complex(self.read(filename), self.settings.get("strict_maximal"))

    def perversity(self, args: argparse.Namespace, complex_: SimplicialComplex) -> Perversity:
        if is_document(args.perversity):
            return load_perversity(self.read(args.perversity), complex_.dimension)
        return parse_perversity(args.perversity, complex_.dimension)

    def load_algebra(self, args: argparse.Namespace, complex_: SimplicialComplex,
                     delta: Perversity) -> Optional[QuadraticQuiverAlgebra]:
        if not args.algebra:
            return None
        return load_algebra(self.read(args.algebra), complex_, delta)

    def report(self, args: argparse.Namespace, results: Dict[str, Any], verdicts: Dict[str, Verdict]) -> RunReport:
        """Documents, given as inputs or as options, enter the report by digest only."""
        command = self._commands[args.command]
        inputs = {name: digest(self.read(getattr(args, name))) for name in command.inputs}
        documents = [name for name in DOCUMENT_OPTIONS if name in command.options and getattr(args, name)]
        if "perversity" in command.options and is_document(args.perversity):
            documents.append("perversity")
        inputs.update({name: digest(self.read(getattr(args, name))) for name in documents})
        options = {name: getattr(args, name) for name in command.options
                   if name not in DOCUMENT_OPTIONS and name not in documents}
        return RunReport(__version__, command.name, inputs, options, results, verdicts)

    # Running
    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog="pyperverse", description="Perverse triangulations and their algebras.")
        parser.add_argument("--format", choices=["json", "text"], default="json", help="report format on stdout")
        parser.add_argument("--output", "-o", default=None, help="also write the JSON report to this file")
        subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
        for name, command in sorted(self._commands.items()):
            sub = subparsers.add_parser(name, help=command.help, description=command.help)
            for option in command.options:
                flags, kwargs = OPTIONS[option]
                sub.add_argument(*flags, dest=option, **kwargs)
            for name_ in command.inputs:
                sub.add_argument(name_, help=f"{name_} document")
        return parser

    def emit(self, report: RunReport, args: argparse.Namespace):
        for _dispatcher in self._dispatchers:
            # noinspection PyBroadException
            try:
                _dispatcher(report, args)
            except Exception:
                traceback.print_exc()

    def run(self, argv: Sequence[str]) -> int:
        """Exit code 0 when every verdict holds, 1 when one fails, 2 on bad input."""
        try:
            args = self.build_parser().parse_args(list(argv))
        except SystemExit as e:
            return 0 if not e.code else 2

        command = self._commands[args.command]
        try:
            report = command.handler(args)
        except ValidationError as e:
            logging.error(f"{args.command}: {e}")
            return 2
        except VerificationError as e:
            logging.error(f"{args.command}: {type(e).__name__}: {e}")
            report = self.report(args, {}, {"error": Verdict(False, {"error": type(e).__name__, "message": str(e)})})
        except Exception:
            logging.exception(f"{args.command} crashed")
            return 2

        self.emit(report, args)
        return 0 if report.ok else 1


app: App = App()
