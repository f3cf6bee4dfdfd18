import importlib
import json
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Tuple
from urllib.parse import urlparse

import fastjsonschema

from .errors import DocumentError
from .utils import compare_dict


@dataclass
class Verdict:
    __slots__ = ["ok", "witness"]
    ok: bool
    witness: Optional[Dict[str, Any]]

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "ok": self.ok,
            "witness": self.witness,
        }


@dataclass
class RunReport:
    __slots__ = ["version", "command", "inputs", "options", "results", "verdicts"]
    version: str
    command: str
    inputs: Dict[str, str]
    options: Dict[str, Any]
    results: Dict[str, Any]
    verdicts: Dict[str, Verdict]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    @property
    def key(self) -> str:
        return ":".join([self.command, *(self.inputs[k] for k in sorted(self.inputs))])

    def to_json(self):
        return {
            "version": self.version,
            "command": self.command,
            "inputs": self.inputs,
            "options": self.options,
            "results": self.results,
            "verdicts": {name: v.to_json() for name, v in self.verdicts.items()},
            "ok": self.ok,
        }


@dataclass
class StoredReport:
    __slots__ = ["key", "report"]
    key: str
    report: Dict[str, Any]

    @classmethod
    def of(cls, report: RunReport) -> "StoredReport":
        return cls(report.key, report.to_json())

    @property
    def verdicts(self) -> Dict[str, Any]:
        return self.report.get("verdicts", {})

    @classmethod
    def load(cls, doc: dict):
        return cls(doc["key"], doc["report"])

    def dump(self):
        return {"key": self.key, "report": self.report}


class AbstractReportContainer(ABC):
    @abstractmethod
    def get(self, key: str) -> Optional[StoredReport]:
        return NotImplemented

    @abstractmethod
    def put(self, obj: StoredReport) -> Tuple[Optional[StoredReport], StoredReport]:
        return NotImplemented

    @abstractmethod
    def iter(self) -> Iterator[StoredReport]:
        return NotImplemented

    @abstractmethod
    def delete(self, obj: StoredReport) -> StoredReport:
        return NotImplemented


class Settings:
    defaults = {
        "strict_maximal": False,
        "max_steps": 16,
        "roundtrip_samples": 50,
        "module_budget": 2,
        "tea_samples": 1000,
        "report_storage": None,
    }

    def __init__(self, fn: Optional[str] = None):
        self._values = {}
        if fn and os.path.exists(fn):
            with open(fn, mode="r") as f:
                try:
                    self._values = json.load(f)
                except json.JSONDecodeError as e:
                    raise DocumentError(f"Settings file {fn} is not JSON: {e}") from e
        from .schemas import settings_schema
        try:
            settings_schema(self._values)
        except fastjsonschema.JsonSchemaException as e:
            raise DocumentError(f"Malformed settings file {fn}: {e.message}") from e

    def get(self, key: str, default: Any = None) -> Any:
        if key in self._values:
            return self._values[key]
        return self.defaults.get(key, default)

    def put(self, key: str, obj):
        self._values[key] = obj


storages = {}


class ReportStore:
    @staticmethod
    def _get_report_container(url: str) -> AbstractReportContainer:
        parsed_url = urlparse(url)
        scheme = parsed_url.scheme
        if storage := storages.get(scheme):
            return storage(url)
        else:
            module = importlib.import_module(f"pyperverse.storages.{scheme}")
            container = module.get_container()
            storages[scheme] = container
            return container(url)

    def __init__(self, url: str, container_name: str = "reports"):
        self.name = container_name
        self.container = self._get_report_container(url)

    def get(self, key: str) -> StoredReport:
        if (rtn := self.container.get(key)) is None:
            raise KeyError(key)
        return rtn

    def put(self, obj: StoredReport) -> Tuple[Optional[StoredReport], StoredReport]:
        old_obj, new_obj = self.container.put(obj)
        if old_obj:
            added, removed, updated = compare_dict(old_obj.verdicts, new_obj.verdicts)
            if added or removed or updated:
                logging.warning(f"{self.name}: verdicts of {new_obj.key} changed: "
                                f"added {sorted(added)}, removed {sorted(removed)}, updated {sorted(updated)}")
            else:
                logging.info(f"{self.name}: {new_obj.key} reproduced")
        else:
            logging.info(f"{self.name}: stored {new_obj.key}")
        return old_obj, new_obj

    def iter(self) -> Iterator[StoredReport]:
        return self.container.iter()

    def delete(self, obj: StoredReport) -> StoredReport:
        obj = self.container.delete(obj)
        logging.info(f"{self.name}: deleted {obj.key}")
        return obj
