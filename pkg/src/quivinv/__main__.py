from quivinv.cli import entry

entry()
