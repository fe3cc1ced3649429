"""The sixteen topologically minimal non-metrizable graphs with their
published path systems and certificates, shipped as package data.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path as FsPath

from .certificates import CertificateDoc, parse_certificate, verify_certificate
from .graph import Edge, Graph, parse_graph
from .pathsys import PathSystem, check_consistency, parse_path_system


class ZooDataError(RuntimeError):
    pass


@dataclass(frozen=True)
class ZooEntry:
    id: int
    graph: Graph
    system: PathSystem
    system_text: str
    certificate: CertificateDoc
    certificate_text: str
    target: Edge

    def self_check(self) -> list[str]:
        problems = []
        if not check_consistency(self.system).consistent:
            problems.append("path system is not consistent")
        report = verify_certificate(self.system, self.certificate)
        if not report.valid:
            problems.extend(report.problems)
        if self.certificate.target != self.target:
            problems.append("certificate target differs from the recorded target")
        return problems

    def dump(self, directory: str | FsPath) -> list[FsPath]:
        """Write graph.txt, system.txt and certificate.txt under ``directory``."""
        d = FsPath(directory)
        d.mkdir(parents=True, exist_ok=True)
        out = []
        for name, text in (("graph.txt", self.graph.to_text()), ("system.txt", self.system_text),
                           ("certificate.txt", self.certificate_text)):
            (d / name).write_text(text)
            out.append(d / name)
        return out


def _raw() -> list[dict]:
    text = resources.files("metrizability").joinpath("data/zoo.json").read_text()
    return json.loads(text)["entries"]


@lru_cache(maxsize=1)
def load_zoo(verify: bool = True) -> tuple[ZooEntry, ...]:
    """All entries in id order; with ``verify`` each is self-checked on load."""
    entries = []
    for rec in _raw():
        g = parse_graph(rec["graph"])
        entry = ZooEntry(
            id=rec["id"], graph=g,
            system=parse_path_system(rec["system"], g), system_text=rec["system"],
            certificate=parse_certificate(rec["certificate"]), certificate_text=rec["certificate"],
            target=tuple(rec["target"]),
        )
        if verify:
            problems = entry.self_check()
            if problems:
                raise ZooDataError(f"zoo entry {entry.id}: {'; '.join(problems)}")
        entries.append(entry)
    return tuple(entries)


def zoo_entry(i: int) -> ZooEntry:
    for e in load_zoo():
        if e.id == i:
            return e
    raise KeyError(f"no zoo entry {i}")
