"""Python access to the gcm engine."""

import json

from ._gcm import GcmError, Model, commands, load_model, parse_model, run

__all__ = ["GcmError", "Model", "commands", "load_model", "parse_model", "run", "report"]


def report(command, path, at=""):
    """Run a command and return (exit code, parsed JSON report)."""
    code, text, _ = run(command, path, at=at)
    return code, json.loads(text)
