#!/usr/bin/env python3
"""
Entry point for the GR measure toolkit
"""
import sys

from cli.commands import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
