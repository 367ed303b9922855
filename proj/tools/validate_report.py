#!/usr/bin/env python3
"""Validate a `nclosed verify --format json` report against a JSON Schema.

usage: validate_report.py SCHEMA REPORT
Exit status 0 when valid, 1 otherwise (the first error is printed).
"""
import json
import sys

import jsonschema


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    with open(sys.argv[1]) as f:
        schema = json.load(f)
    with open(sys.argv[2]) as f:
        report = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    error = jsonschema.exceptions.best_match(validator.iter_errors(report))
    if error is not None:
        print(f"invalid: {error.message} at {list(error.absolute_path)}", file=sys.stderr)
        return 1
    print("valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
