#!/usr/bin/env python3
"""
isogeny-lab - Startup Script
Checks the environment, writes a sample .env on first run, then hands the
command line to the CLI. Status lines go to stderr; stdout carries records.
"""

import os
import sys


def status(message):
    print(message, file=sys.stderr)


def check_requirements():
    """Check if all required packages are installed"""
    try:
        import numpy
        import pandas
        import dotenv
        return True
    except ImportError as e:
        status(f"✗ Missing required package: {e}")
        status("Please run: pip install -r requirements.txt")
        return False


def generate_sample_config(path='.env'):
    """Generate sample configuration if .env doesn't exist"""
    if os.path.exists(path):
        return False
    from config import SAMPLE_ENV
    with open(path, 'w') as f:
        f.write(SAMPLE_ENV)
    status(f"✓ Created {path} with sample configuration")
    return True


def main(argv=None):
    """Main startup function"""
    if not check_requirements():
        return 1

    generate_sample_config()

    from cli import main as cli_main
    try:
        return cli_main(argv)
    except KeyboardInterrupt:
        status("\n👋 Stopped by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
