"""
GradReal - Web Application (FastAPI)
"""
import os
import sys

# Garante que o diretorio pai esta no path (para imports do pipeline)
_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from fastapi import FastAPI  # noqa: E402

app = FastAPI(title="GradReal", version="1.0")

# Include routers
from web.routes.api_config import router as config_router  # noqa: E402
from web.routes.api_run import router as run_router        # noqa: E402

app.include_router(config_router, prefix="/api")
app.include_router(run_router, prefix="/api")
