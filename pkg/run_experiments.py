#!/usr/bin/env python3
"""
scalereg - experiment runner

Usage:
    python run_experiments.py bounds --config config/bounds.yaml
    python run_experiments.py experiment rate --config config/desk.yaml --jobs 4 --plot
"""

import sys

from dotenv import load_dotenv

from src.cli import cli


def main():
    """Main entry point."""
    # Load environment variables from .env file
    load_dotenv()
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
