#!/usr/bin/env python3
"""
Main entry point for the LOS MIMO conditioning toolkit.
Run from project root directory.
"""
import sys
import os

# Add project root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
