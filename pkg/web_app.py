"""
GradReal - Entry point do servidor web.

Uso:
    python web_app.py --port 8000
    # ou
    uvicorn web_app:app --host 127.0.0.1 --port 8000

Endpoints em /api: run, status, status/stream, history, verbs, config.
"""

import argparse
import os

import uvicorn
from web import app


def main(argv: list = None):
    parser = argparse.ArgumentParser(description="GradReal - servidor web")
    parser.add_argument("--host", default=os.getenv("GRADREAL_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.getenv("GRADREAL_PORT", "8000")))
    parser.add_argument("--reload", action="store_true", help="recarrega ao editar fontes")
    args = parser.parse_args(argv)
    uvicorn.run("web_app:app", host=args.host, port=args.port, reload=args.reload)


if __name__ == "__main__":
    main()
