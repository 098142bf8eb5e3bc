import sys

from dotenv import load_dotenv

# Load environment variables before any app module reads them
load_dotenv()

from app.frontend.cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
