"""Lexicon management service: paged browsing, edits, preview, atomic save.

The service manages a lemma-based (or mixed) lexicon: word-form and
compiled views are derived artifacts produced by the CLI pipelines.
State lives in a WorkingLexicon; the HTTP layer is a thin JSON mapping
over it.

Wire format mirrors the XML structure field for field:

    entry = {id, lemma, pos, features: [{name, value}...],
             inflection: {paradigm} | {forms: [{form, features}...]} | null}

Writes are serialized by a lock and replace the whole immutable lexicon
value, so concurrent readers always see a consistent snapshot.  Saving
writes a temporary file in the target directory and renames it over the
source path, so a crash mid-save leaves the previous file intact.
"""

import dataclasses
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .inflect import ParadigmSet, expand_entry, InflectionError, parse_paradigms
from .model import (
    ExplicitForms,
    FeatureAssignment,
    InflectedForm,
    LemmaEntry,
    Lexicon,
    LexiconError,
    ParadigmRef,
    PartOfSpeech,
)
from .xmlio import parse_lexicon, write_lexicon


class EntryValidationError(LexiconError):
    """Field-by-field validation failure; ``errors`` maps field -> message."""

    def __init__(self, errors: dict):
        super().__init__("; ".join(f"{k}: {v}" for k, v in errors.items()))
        self.errors = errors


@dataclass(frozen=True)
class EntryPage:
    total: int
    offset: int
    limit: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.limit < 1:
            raise LexiconError("page limit must be at least 1")
        if not (0 <= self.offset <= self.total):
            raise LexiconError("page offset out of range")
        if len(self.entries) > self.limit or self.offset + len(self.entries) > self.total:
            raise LexiconError("page is inconsistent with its window")


class WorkingLexicon:
    """In-memory lexicon bound to its source file, with serialized writes."""

    def __init__(self, lexicon: Lexicon, paradigms: ParadigmSet, source_path: Path):
        if lexicon.kind == "wordform":
            raise LexiconError("the management service handles lemma or mixed lexica only")
        self._lexicon = lexicon
        self.paradigms = paradigms
        self.source_path = Path(source_path)
        self.dirty = False
        self._next_id = max((e.id for e in lexicon.entries), default=-1) + 1
        self._lock = threading.RLock()

    @classmethod
    def load(cls, source_path, paradigms: ParadigmSet) -> "WorkingLexicon":
        """Read the source file; a missing file starts an empty lemma lexicon."""
        path = Path(source_path)
        if path.exists():
            lexicon = parse_lexicon(path.read_bytes())
        else:
            lexicon = Lexicon("lemma", ())
        return cls(lexicon, paradigms, path)

    @property
    def lexicon(self) -> Lexicon:
        return self._lexicon

    @property
    def next_id(self) -> int:
        return self._next_id

    def list_entries(self, offset: int = 0, limit: int = 50, query: str | None = None) -> EntryPage:
        if limit < 1:
            raise LexiconError("limit must be at least 1")
        if offset < 0:
            raise LexiconError("offset must be non-negative")
        entries = self._lexicon.entries
        if query:
            entries = tuple(e for e in entries if query in e.lemma)
        # clamp so the echoed offset stays within the (filtered) total
        offset = min(offset, len(entries))
        return EntryPage(len(entries), offset, limit, entries[offset : offset + limit])

    def get_entry(self, entry_id: int) -> LemmaEntry | None:
        for e in self._lexicon.entries:
            if e.id == entry_id:
                return e
        return None

    def _check_paradigm(self, entry: LemmaEntry) -> None:
        if isinstance(entry.inflection, ParadigmRef):
            name = entry.inflection.paradigm
            if self.paradigms.get(name) is None:
                raise EntryValidationError({"inflection": f"unknown paradigm {name!r}"})

    def _store(self, entries: tuple) -> None:
        try:
            lexicon = Lexicon(self._lexicon.kind, entries)
        except LexiconError as exc:
            raise EntryValidationError({"inflection": str(exc)}) from exc
        self._lexicon = lexicon
        self.dirty = True

    def add_entry(self, entry: LemmaEntry) -> LemmaEntry:
        """Append with a fresh id, regardless of the id carried by ``entry``."""
        with self._lock:
            self._check_paradigm(entry)
            stored = dataclasses.replace(entry, id=self._next_id)
            self._store(self._lexicon.entries + (stored,))
            self._next_id += 1
            return stored

    def replace_entry(self, entry: LemmaEntry) -> LemmaEntry | None:
        """Replace the entry with the same id; None when the id is unknown."""
        with self._lock:
            if self.get_entry(entry.id) is None:
                return None
            self._check_paradigm(entry)
            self._store(
                tuple(entry if e.id == entry.id else e for e in self._lexicon.entries)
            )
            return entry

    def upsert_entry(self, entry: LemmaEntry) -> LemmaEntry:
        """Replace in place when the id exists, append with a new id otherwise."""
        with self._lock:
            replaced = self.replace_entry(entry)
            return replaced if replaced is not None else self.add_entry(entry)

    def delete_entry(self, entry_id: int) -> bool:
        with self._lock:
            entries = tuple(e for e in self._lexicon.entries if e.id != entry_id)
            if len(entries) == len(self._lexicon.entries):
                return False
            self._store(entries)
            return True

    def preview_inflection(self, entry: LemmaEntry) -> tuple:
        """Generated forms for an entry, without mutating the lexicon."""
        self._check_paradigm(entry)
        if isinstance(entry.inflection, ExplicitForms):
            return entry.inflection.forms
        if entry.inflection is None:
            return ()
        expanded = expand_entry(entry, self.paradigms)
        assert isinstance(expanded.inflection, ExplicitForms)
        return expanded.inflection.forms

    def persist(self) -> int:
        """Atomically write canonical XML over the source path."""
        with self._lock:
            data = write_lexicon(self._lexicon)
            directory = self.source_path.parent
            fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=".lexkit-", suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as handle:
                    handle.write(data)
                    handle.flush()
                    os.fsync(handle.fileno())
                os.replace(tmp_name, self.source_path)
            except BaseException:
                try:
                    os.unlink(tmp_name)
                except OSError:
                    pass
                raise
            self.dirty = False
            return len(data)


def entry_to_json(entry: LemmaEntry) -> dict:
    inflection = None
    if isinstance(entry.inflection, ParadigmRef):
        inflection = {"paradigm": entry.inflection.paradigm}
    elif isinstance(entry.inflection, ExplicitForms):
        inflection = {
            "forms": [
                {
                    "form": f.form,
                    "features": [{"name": a.name, "value": a.value} for a in f.features],
                }
                for f in entry.inflection.forms
            ]
        }
    return {
        "id": entry.id,
        "lemma": entry.lemma,
        "pos": entry.pos.name,
        "features": [{"name": f.name, "value": f.value} for f in entry.features],
        "inflection": inflection,
    }


def _features_from_json(raw, errors: dict, field: str) -> tuple:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        errors[field] = "features must be a list of {name, value} objects"
        return ()
    features = []
    names = set()
    for item in raw:
        if not isinstance(item, dict) or "name" not in item or "value" not in item:
            errors[field] = "each feature needs a name and a value"
            return ()
        try:
            feature = FeatureAssignment(str(item["name"]), str(item["value"]))
        except LexiconError as exc:
            errors[field] = str(exc)
            return ()
        if feature.name in names:
            errors[field] = f"duplicate feature name {feature.name!r}"
            return ()
        names.add(feature.name)
        features.append(feature)
    return tuple(features)


def entry_from_json(data, entry_id: int) -> LemmaEntry:
    """Build an entry from wire JSON, collecting per-field messages."""
    if not isinstance(data, dict):
        raise EntryValidationError({"body": "entry must be a JSON object"})
    errors: dict = {}
    lemma = data.get("lemma")
    if not isinstance(lemma, str) or not lemma:
        errors["lemma"] = "lemma must be a non-empty string"
        lemma = "placeholder"
    pos_name = data.get("pos")
    if not isinstance(pos_name, str) or not pos_name:
        errors["pos"] = "pos must be a non-empty string"
        pos_name = "placeholder"
    features = _features_from_json(data.get("features"), errors, "features")
    raw_inflection = data.get("inflection")
    inflection = None
    if raw_inflection is not None:
        if not isinstance(raw_inflection, dict):
            errors["inflection"] = "inflection must be an object or null"
        elif "paradigm" in raw_inflection:
            try:
                inflection = ParadigmRef(str(raw_inflection["paradigm"]))
            except LexiconError as exc:
                errors["inflection"] = str(exc)
        elif "forms" in raw_inflection:
            forms = []
            for item in raw_inflection["forms"] or ():
                form_errors: dict = {}
                form_features = _features_from_json(
                    item.get("features") if isinstance(item, dict) else None,
                    form_errors,
                    "inflection",
                )
                form_text = item.get("form") if isinstance(item, dict) else None
                if form_errors or not isinstance(form_text, str) or not form_text:
                    errors["inflection"] = form_errors.get(
                        "inflection", "each inflected form needs a non-empty form"
                    )
                    break
                forms.append(InflectedForm(form_text, form_features))
            else:
                if forms:
                    inflection = ExplicitForms(tuple(forms))
                else:
                    errors["inflection"] = "forms must be a non-empty list"
        else:
            errors["inflection"] = "inflection must carry a paradigm or forms"
    pos = None
    try:
        pos = PartOfSpeech(pos_name)
    except LexiconError as exc:
        errors["pos"] = str(exc)
        pos = PartOfSpeech("placeholder")
    try:
        entry = LemmaEntry(entry_id, lemma, pos, features, inflection)
    except LexiconError as exc:
        if not errors:
            errors["lemma"] = str(exc)
        entry = None
    if errors:
        raise EntryValidationError(errors)
    assert entry is not None
    return entry


def _validation_response(exc: EntryValidationError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"errors": exc.errors})


def create_app(working: WorkingLexicon, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="lexkit management service")

    @app.get("/api/entries")
    def list_entries(
        offset: int = Query(0, ge=0),
        limit: int = Query(50, ge=1),
        q: str | None = None,
    ):
        page = working.list_entries(offset, limit, q)
        return {
            "total": page.total,
            "offset": page.offset,
            "limit": page.limit,
            "entries": [entry_to_json(e) for e in page.entries],
        }

    @app.get("/api/entries/{entry_id}")
    def get_entry(entry_id: int):
        entry = working.get_entry(entry_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"no entry {entry_id}")
        return entry_to_json(entry)

    @app.post("/api/entries", status_code=201)
    def create_entry(data: dict):
        try:
            entry = entry_from_json(data, 0)
            stored = working.add_entry(entry)
        except EntryValidationError as exc:
            return _validation_response(exc)
        return entry_to_json(stored)

    @app.put("/api/entries/{entry_id}")
    def update_entry(entry_id: int, data: dict):
        try:
            entry = entry_from_json(data, entry_id)
            stored = working.replace_entry(entry)
        except EntryValidationError as exc:
            return _validation_response(exc)
        if stored is None:
            raise HTTPException(status_code=404, detail=f"no entry {entry_id}")
        return entry_to_json(stored)

    @app.delete("/api/entries/{entry_id}", status_code=204)
    def delete_entry(entry_id: int):
        if not working.delete_entry(entry_id):
            raise HTTPException(status_code=404, detail=f"no entry {entry_id}")

    @app.post("/api/preview-inflection")
    def preview(data: dict):
        raw_id = data.get("id") if isinstance(data, dict) else None
        entry_id = raw_id if isinstance(raw_id, int) and raw_id >= 0 else 0
        try:
            entry = entry_from_json(data, entry_id)
            forms = working.preview_inflection(entry)
        except EntryValidationError as exc:
            return _validation_response(exc)
        except InflectionError as exc:
            return JSONResponse(status_code=422, content={"errors": {"inflection": str(exc)}})
        return {
            "forms": [
                {
                    "form": f.form,
                    "features": [{"name": a.name, "value": a.value} for a in f.features],
                }
                for f in forms
            ]
        }

    @app.get("/api/paradigms")
    def paradigms():
        return [
            {"name": name, "rule_count": len(working.paradigms.get(name).rules)}
            for name in working.paradigms.names()
        ]

    @app.post("/api/save")
    def save():
        try:
            return {"bytes": working.persist()}
        except OSError as exc:
            return JSONResponse(status_code=500, content={"detail": f"save failed: {exc}"})

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="viewer")

    return app


def build_server_app(
    lexicon_path, paradigms_path, static_dir: Path | None = None
) -> FastAPI:
    """Wire a service from file paths (used by the CLI serve command)."""
    paradigms = parse_paradigms(Path(paradigms_path).read_text("utf-8"))
    working = WorkingLexicon.load(lexicon_path, paradigms)
    return create_app(working, static_dir)
