"""
Batch experiments from a config
===============================

The command line driver is a thin layer over ``currents_lab.cli.run``.
"""
import tempfile
from pathlib import Path

from currents_lab import cli

with tempfile.TemporaryDirectory() as tmp:
    status = cli.run("fibonacci", tmp)
    print("exit status", status)
    print(cli.show(Path(tmp) / "manifest.json"))
    print(cli.show(Path(tmp) / "fib-orbit.json"))
    print("tampered files:", cli.verify_manifest(tmp))
