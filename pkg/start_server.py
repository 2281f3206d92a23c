#!/usr/bin/env python3
"""
Startup script for the aspine API server.
Host, port and reload come from ASPINE_HOST, ASPINE_PORT and ASPINE_RELOAD
(a .env file is honoured).
"""

import uvicorn
import sys
import os
from dotenv import load_dotenv

def start_server():
    """Start the aspine API server."""
    load_dotenv()
    host = os.getenv("ASPINE_HOST", "127.0.0.1")
    port = int(os.getenv("ASPINE_PORT", "8000"))
    reload = os.getenv("ASPINE_RELOAD", "1").lower() in ("1", "true", "yes", "on")

    print("🚀 Starting aspine API Server")
    print("=" * 50)

    if not os.path.exists("main.py"):
        print("❌ Error: main.py not found. Please run from the repository root.")
        sys.exit(1)

    print(f"✅ Solver data directory: {os.getenv('ASPINE_DATA_DIR', 'data')}")
    print(f"✅ Starting server on http://{host}:{port}")
    print(f"✅ API documentation available at http://{host}:{port}/docs")
    print("✅ Press Ctrl+C to stop the server")
    print("=" * 50)

    try:
        uvicorn.run(
            "main:app",
            host=host,
            port=port,
            reload=reload,
            log_level="info"
        )
    except KeyboardInterrupt:
        print("\n👋 Server stopped by user")
    except Exception as e:
        print(f"❌ Server error: {e}")
        sys.exit(1)

if __name__ == "__main__":
    start_server()
