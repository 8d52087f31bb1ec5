from __future__ import annotations

import logging
import os
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from dotenv import load_dotenv

from .routes import graphs, linalg, representations, towers, verification

# Load environment variables
load_dotenv()
logging.basicConfig(level=os.getenv("CRITGROUP_LOG_LEVEL", "WARNING").upper())

app = FastAPI(title="Critical Group Toolkit API")

app.add_middleware(
    CORSMiddleware,
    allow_origins=os.getenv("CORS_ORIGINS", "http://localhost:5173").split(","),
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Register routes
app.include_router(linalg.router)
app.include_router(graphs.router)
app.include_router(representations.router)
app.include_router(towers.router)
app.include_router(verification.router)


@app.get("/")
def root():
    return {"message": "Critical Group Toolkit API", "version": "1.0.0"}


@app.get("/health")
def health_check():
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn

    HOST = os.getenv("BACKEND_HOST", "0.0.0.0")
    PORT = int(os.getenv("BACKEND_PORT", "8000"))
    DEBUG = os.getenv("DEBUG", "False").lower() == "true"
    RELOAD = os.getenv("RELOAD", "False").lower() == "true"

    uvicorn.run("backend.main:app", host=HOST, port=PORT, reload=RELOAD and DEBUG)
