#!/usr/bin/env python3
"""Regenerate the canonical fixture documents in fixtures/ and the golden
CLI outputs in tests/golden/.  Run from the repository root after changing
fixture definitions or CLI output formats; the golden tests diff against
these files byte for byte."""

from __future__ import annotations

import contextlib
import io
import json
import os
import sys

from labgraphs import fixtures as fx
from labgraphs import jsonio
from labgraphs.cli import main as cli_main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXDIR = os.path.join(ROOT, "fixtures")
GOLDDIR = os.path.join(ROOT, "tests", "golden")


def write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {os.path.relpath(path, ROOT)}")


def fixture_documents() -> None:
    os.makedirs(FIXDIR, exist_ok=True)
    write(os.path.join(FIXDIR, "fish.json"),
          jsonio.dumps(jsonio.graph_to_json(fx.fish())))
    write(os.path.join(FIXDIR, "fish4.json"),
          jsonio.dumps(jsonio.graph_to_json(fx.fish4())))
    write(os.path.join(FIXDIR, "chain3.json"),
          jsonio.dumps(jsonio.graph_to_json(fx.chain3())))
    write(os.path.join(FIXDIR, "skewz.json"),
          jsonio.dumps(jsonio.skew_spec_to_json(fx.skewz_spec())))
    write(os.path.join(FIXDIR, "nofd.json"),
          jsonio.dumps(jsonio.skew_spec_to_json(fx.nofd_spec())))
    write(os.path.join(FIXDIR, "fdok.json"),
          jsonio.dumps(jsonio.skew_spec_to_json(fx.fdok_spec())))
    write(os.path.join(FIXDIR, "gt510-action.json"),
          jsonio.dumps(jsonio.action_to_json(
              jsonio.ActionDocument(fx.skewz_spec().group,
                                    translation=fx.skewz_spec()))))
    _, pack = fx.gt510()
    write(os.path.join(FIXDIR, "gt510-sections.json"),
          jsonio.dumps(jsonio.sections_to_json(pack)))
    write(os.path.join(FIXDIR, "fdok-action.json"),
          jsonio.dumps(jsonio.action_to_json(
              jsonio.ActionDocument(fx.fdok_spec().group,
                                    translation=fx.fdok_spec()))))
    write(os.path.join(FIXDIR, "nofd-domain.json"),
          json.dumps(["(v,0)", "(w,1)"], indent=2) + "\n")


def run_cli(argv: list[str]) -> str:
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli_main(argv)
    return f"# exit {code}\n{buffer.getvalue()}"


GOLDEN_COMMANDS = {
    "properties-fish.txt": ["properties", "fixtures/fish.json"],
    "properties-fish4.txt": ["properties", "fixtures/fish4.json"],
    "properties-chain3.txt": ["properties", "fixtures/chain3.json"],
    "properties-skewz.txt": ["properties", "fixtures/skewz.json",
                             "--window", "0:3"],
    "properties-nofd.txt": ["properties", "fixtures/nofd.json",
                            "--window", "-3:3"],
    "properties-fdok.txt": ["properties", "fixtures/fdok.json"],
    "lattice-fish.txt": ["lattice", "fixtures/fish.json"],
    "lattice-fish4.txt": ["lattice", "fixtures/fish4.json"],
    "lattice-chain3.txt": ["lattice", "fixtures/chain3.json"],
    "gross-tucker-gt510.txt": ["gross-tucker", "fixtures/gt510-action.json",
                               "--eta0", "fixtures/gt510-sections.json",
                               "--window", "-4:6"],
    "gross-tucker-fdok.txt": ["gross-tucker", "fixtures/fdok-action.json",
                              "--label-consistent"],
    "fundomain-nofd.txt": ["fundomain", "fixtures/nofd.json",
                           "--window", "-3:3"],
    "export-dot-skewz.txt": ["export-dot", "fixtures/skewz.json",
                             "--window", "0:3"],
}


def golden_outputs() -> None:
    os.makedirs(GOLDDIR, exist_ok=True)
    os.chdir(ROOT)
    for name, argv in GOLDEN_COMMANDS.items():
        write(os.path.join(GOLDDIR, name), run_cli(argv))


if __name__ == "__main__":
    fixture_documents()
    golden_outputs()
    sys.exit(0)
