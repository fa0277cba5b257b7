#!/usr/bin/env python3
"""
Startup script for the cobweb command-line tool
"""

import os
import sys
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Add the project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from cobweb.cli.main import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
