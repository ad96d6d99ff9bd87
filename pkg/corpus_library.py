import hashlib
import json
import os
import logging
from typing import Callable, Dict, List, Union

from pydantic import BaseModel

from complexes import PolygonalComplex, SimplicialComplex, named_complexes, named_loops
from formats import ComplexFile, PolygonalFile, PresentationFile, dumps, read_json, validate
from presentations import Presentation

logger = logging.getLogger(__name__)

MANIFEST = "MANIFEST.json"

Entry = Union[SimplicialComplex, PolygonalComplex, Presentation]


def named_presentations() -> Dict[str, Callable[[], Presentation]]:
    return {
        "dihedral6": lambda: Presentation(("r", "s"), ((1, 1, 1), (2, 2), (1, 2, 1, 2))),
        "free1": lambda: Presentation(("a",)),
        "free2": lambda: Presentation(("a", "b")),
        "z2": lambda: Presentation(("a",), ((1, 1),)),
    }


def _to_file(entry: Entry, loops: Dict[str, List[List[str]]] = None) -> BaseModel:
    if isinstance(entry, Presentation):
        return PresentationFile.from_domain(entry)
    if isinstance(entry, PolygonalComplex):
        return PolygonalFile.from_domain(entry)
    return ComplexFile.from_domain(entry, loops)


def _file_model(data: dict):
    if "generators" in data:
        return PresentationFile
    if "edges" in data:
        return PolygonalFile
    return ComplexFile


class CorpusLibrary:
    """
    Named complexes and presentations stored as JSON files in ``corpus_dir``.

    Entries missing from the directory are built from the named generator
    functions on first use.
    """

    def __init__(self, corpus_dir: str = "corpus"):
        self.entries: Dict[str, BaseModel] = {}
        self.corpus_dir: str = corpus_dir
        os.makedirs(self.corpus_dir, exist_ok=True)
        self.load_entries()

    def path(self, name: str) -> str:
        return os.path.join(self.corpus_dir, f"{name}.json")

    def add(self, name: str, entry: Entry, loops: Dict[str, List[List[str]]] = None) -> None:
        if name in self.entries:
            logger.warning(f"Overwriting existing corpus entry: {name}")
        self.entries[name] = _to_file(entry, loops)
        logger.info(f"Added corpus entry: {name}")
        self.save(name)

    def get_file(self, name: str) -> BaseModel:
        if name not in self.entries:
            self.load_entry(name)
        if name not in self.entries:
            builders = {**named_complexes(), **named_presentations()}
            if name not in builders:
                logger.warning(f"Corpus entry not found: {name}")
                raise FileNotFoundError(f"no corpus entry named {name!r} in {self.corpus_dir}")
            self.entries[name] = _to_file(builders[name](), named_loops().get(name))
        return self.entries[name]

    def get(self, name: str) -> Entry:
        return self.get_file(name).to_domain()

    def loops(self, name: str) -> Dict[str, List[List[str]]]:
        entry = self.get_file(name)
        return dict(entry.loops) if isinstance(entry, ComplexFile) else {}

    def list_entries(self) -> List[str]:
        """Stored entries and the ones that can be generated."""
        return sorted(set(self.entries) | set(named_complexes()) | set(named_presentations()))

    def remove(self, name: str) -> None:
        entry_file = self.path(name)
        if os.path.exists(entry_file):
            os.remove(entry_file)
            self.entries.pop(name, None)
            logger.info(f"Removed corpus entry: {name}")
        else:
            logger.warning(f"Cannot remove non-existent corpus entry: {name}")

    def save(self, name: str) -> None:
        with open(self.path(name), "w") as f:
            f.write(dumps(self.entries[name]) + "\n")
        logger.info(f"Saved corpus entry: {name}")

    def load_entries(self) -> None:
        for filename in sorted(os.listdir(self.corpus_dir)):
            if filename.endswith(".json") and filename != MANIFEST:
                self.load_entry(filename[:-5])
        logger.info(f"Loaded corpus from {self.corpus_dir}")

    def load_entry(self, name: str) -> None:
        entry_file = self.path(name)
        if os.path.exists(entry_file):
            data = read_json(entry_file)
            model = _file_model(data) if isinstance(data, dict) else ComplexFile
            self.entries[name] = validate(model, data, entry_file)
            logger.debug(f"Loaded corpus entry: {name}")

    def populate(self, overwrite: bool = False) -> List[str]:
        """Write every generated entry that has no file yet; returns the names written."""
        builders = {**named_complexes(), **named_presentations()}
        written = []
        for name, build in sorted(builders.items()):
            if overwrite or not os.path.exists(self.path(name)):
                self.entries[name] = _to_file(build(), named_loops().get(name))
                self.save(name)
                written.append(name)
        return written

    def _digest(self, name: str) -> str:
        with open(self.path(name), "rb") as f:
            return hashlib.sha256(f.read()).hexdigest()

    def freeze(self) -> Dict[str, str]:
        """Record a sha256 hash of every stored entry in MANIFEST.json."""
        self.populate()
        manifest = {name: self._digest(name) for name in sorted(self.entries)
                    if os.path.exists(self.path(name))}
        with open(os.path.join(self.corpus_dir, MANIFEST), "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info(f"Froze {len(manifest)} corpus entries")
        return manifest

    def verify_manifest(self) -> List[str]:
        """Names whose file is missing or no longer matches its recorded hash."""
        manifest_file = os.path.join(self.corpus_dir, MANIFEST)
        if not os.path.exists(manifest_file):
            raise FileNotFoundError(f"no {MANIFEST} in {self.corpus_dir}")
        manifest: Dict[str, str] = read_json(manifest_file)
        drifted = [name for name, digest in sorted(manifest.items())
                   if not os.path.exists(self.path(name)) or self._digest(name) != digest]
        for name in drifted:
            logger.warning(f"Corpus entry changed since freeze: {name}")
        return drifted
