import hashlib
import json
from typing import Any, Optional, Tuple

_TRUE = {"y", "yes", "t", "true", "on", "1"}
_FALSE = {"n", "no", "f", "false", "off", "0"}


def compare_dict(d1, d2) -> Tuple[dict, dict, dict]:
    set_1 = set(d1)
    set_2 = set(d2)
    added = {k: d2[k] for k in set_2 - set_1}
    removed = {k: d1[k] for k in set_1 - set_2}
    updated = {k: (d1[k], d2[k]) for k in set_1 & set_2 if d1[k] != d2[k]}
    return added, removed, updated


def strtobool(val: Optional[str], default: bool = False) -> bool:
    try:
        val = val.strip().lower()
    except AttributeError:
        return default
    if val in _TRUE:
        return True
    if val in _FALSE:
        return False
    return default


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()
