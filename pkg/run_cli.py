#!/usr/bin/env python3
"""
Entry script for the Block-type Lie algebra Whittaker toolkit
Sets up the environment, checks dependencies and hands off to the CLI
"""
import os
import sys
import logging

sys.path.append(os.path.join(os.path.dirname(__file__), 'src'))

# Configure logging
logging.basicConfig(level=os.getenv("BLOCKALG_LOG_LEVEL", "INFO").upper())
logger = logging.getLogger(__name__)


def setup_environment():
    """Create the report directory"""
    from config import OUTPUT_DIR

    os.makedirs(OUTPUT_DIR, exist_ok=True)
    logger.debug(f"Reports directory: {OUTPUT_DIR}")


def check_dependencies():
    """Check if all required dependencies are installed"""
    try:
        import sympy
        import dotenv
        logger.debug(f"sympy {sympy.__version__} available")
        return True
    except ImportError as e:
        logger.error(f"Missing dependency: {e}")
        return False


def main():
    """Main entry function"""
    if not check_dependencies():
        logger.error("Please install all required dependencies: pip install -r requirements.txt")
        sys.exit(1)

    setup_environment()

    from cli import main as cli_main
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
