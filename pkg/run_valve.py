"""
Executable entrypoint for the spin-valve toolkit (also used for frozen builds).
"""

from __future__ import annotations

import sys
from pathlib import Path
from multiprocessing import freeze_support

# Load .env file if exists
try:
    from dotenv import load_dotenv
    # Load .env from project root
    env_path = Path(__file__).resolve().parent / ".env"
    if env_path.exists():
        load_dotenv(env_path)
    else:
        # Try loading from current directory
        load_dotenv()
except ImportError:
    # python-dotenv not installed, skip loading .env
    pass


def main() -> int:
    from cli.main import main as cli_main

    return cli_main()


if __name__ == "__main__":
    freeze_support()
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("[valve] interrupted")
        sys.exit(130)
    except Exception as e:
        import traceback

        traceback.print_exc()
        print(f"[valve] crashed: {e!r}")
        sys.exit(1)
