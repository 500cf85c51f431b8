"""Simple script to run the toolkit: python run.py <subcommand> ..."""
import sys

from entbuffer.main import main

if __name__ == "__main__":
    sys.exit(main())
