import os
from typing import Iterator, Optional, Tuple
from urllib.parse import urlparse

from tinydb import TinyDB, where

from pyperverse.models import AbstractReportContainer, StoredReport


class FileReportContainer(AbstractReportContainer):
    def delete(self, obj: StoredReport) -> StoredReport:
        doc = self.table.get(where("key") == obj.key)
        if doc is None:
            raise KeyError(obj.key)
        self.table.remove(doc_ids=[doc.doc_id])
        return StoredReport.load(doc)

    def iter(self) -> Iterator[StoredReport]:
        for doc in self.table.all():
            yield StoredReport.load(doc)

    def __init__(self, url: str):
        super().__init__()
        parsed_url = urlparse(url)
        db = "/".join([
            parsed_url.netloc,
            *parsed_url.path[1:].split("/")[:-1]
        ])
        table = parsed_url.path.split("/")[-1]

        if folder := os.path.dirname(db):
            os.makedirs(folder, exist_ok=True)
        self.db = TinyDB(db, sort_keys=True, indent=2)
        self.table = self.db.table(table)

    def get(self, key: str) -> Optional[StoredReport]:
        doc = self.table.get(where("key") == key)
        return StoredReport.load(doc) if doc else None

    def put(self, obj: StoredReport) -> Tuple[Optional[StoredReport], StoredReport]:
        old_doc = self.table.get(where("key") == obj.key)
        self.table.upsert(obj.dump(), where("key") == obj.key)
        return (StoredReport.load(old_doc) if old_doc else None), obj


def get_container():
    return FileReportContainer
