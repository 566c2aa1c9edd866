#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
numradius
Numerical radius bounds for matrices and zero bounds for polynomials.
"""

import sys
import logging

from ui.cli import main as cli_main

# Configure logging; stdout carries report data
logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

# Create logger for the main module
logger = logging.getLogger('numradius')


def main():
    """Main entry point for the application"""
    logger.debug("Starting numradius")
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
