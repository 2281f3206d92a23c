from fastapi import FastAPI, UploadFile, Form, File, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from typing import Optional
from core.ground_model import ParseError
from core.oracle import OracleLimitError
from core.queryhandler import (
    OPTION_FIELDS, process_solve, process_oracle, process_validate, validate_program_input
)
from core.storage import record_run, get_runs, log_activity

app = FastAPI(
    title="aspine API",
    description="Conflict-driven answer set solver over completion nogoods",
    version="1.0.0"
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

BAD_INPUT = (ParseError, ValueError, OracleLimitError)


def _require_program(payload: Optional[dict]) -> str:
    if not payload or "program" not in payload:
        raise HTTPException(status_code=400, detail="Missing required field: program")
    program = payload["program"]
    is_valid, error = validate_program_input(program)
    if not is_valid:
        raise HTTPException(status_code=400, detail=error)
    return program


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "message": "Welcome to the aspine API",
        "version": "1.0.0",
        "endpoints": {
            "solve": "/solve - Solve a program given as JSON",
            "upload": "/solve/upload - Solve an uploaded program file",
            "oracle": "/oracle - Brute-force answer sets of a small program",
            "validate": "/validate - Diagnostics and nogood census",
            "runs": "/runs - Recorded solve runs"
        }
    }


@app.post("/solve")
async def solve_route(payload: dict):
    """Solve a program with the given options."""
    try:
        program = _require_program(payload)
        options = {key: payload.get(key) for key in OPTION_FIELDS}
        instance = payload.get("instance", "request")

        run = process_solve(program, options, instance)
        record_run(run)

        return {
            "message": "Program solved successfully",
            "run": run
        }

    except HTTPException:
        raise
    except BAD_INPUT as e:
        log_activity("solve_error", {"error": str(e)})
        raise HTTPException(status_code=400, detail=f"Invalid program or options: {str(e)}")
    except Exception as e:
        log_activity("solve_error", {"error": str(e)})
        raise HTTPException(status_code=500, detail=f"Error solving program: {str(e)}")


@app.post("/solve/upload")
async def solve_upload_route(
    program: UploadFile = File(...),
    mode: Optional[str] = Form(None),
    heuristic: Optional[str] = Form(None),
    workers: Optional[int] = Form(None),
    models: Optional[int] = Form(None),
    restarts: Optional[str] = Form(None),
    deps_words: Optional[int] = Form(None),
    fanout: Optional[int] = Form(None),
    verify: Optional[bool] = Form(None)
):
    """Solve an uploaded program file."""
    try:
        text = await program.read()
        is_valid, error = validate_program_input(text, program.filename)
        if not is_valid:
            raise HTTPException(status_code=400, detail=error)

        options = {
            "mode": mode, "heuristic": heuristic, "workers": workers, "models": models,
            "restarts": restarts, "deps_words": deps_words, "fanout": fanout, "verify": verify
        }
        run = process_solve(text, options, program.filename or "upload")
        record_run(run)

        return {
            "message": "Program solved successfully",
            "run": run
        }

    except HTTPException:
        raise
    except BAD_INPUT as e:
        log_activity("upload_error", {"error": str(e)})
        raise HTTPException(status_code=400, detail=f"Invalid program or options: {str(e)}")
    except Exception as e:
        log_activity("upload_error", {"error": str(e)})
        raise HTTPException(status_code=500, detail=f"Error solving program: {str(e)}")


@app.post("/oracle")
async def oracle_route(payload: dict):
    """Enumerate answer sets by brute force."""
    try:
        program = _require_program(payload)
        result = process_oracle(program)

        log_activity("oracle_completed", {"count": result["count"]})

        return {
            "message": "Answer sets enumerated successfully",
            **result
        }

    except HTTPException:
        raise
    except BAD_INPUT as e:
        log_activity("oracle_error", {"error": str(e)})
        raise HTTPException(status_code=400, detail=f"Invalid program: {str(e)}")
    except Exception as e:
        log_activity("oracle_error", {"error": str(e)})
        raise HTTPException(status_code=500, detail=f"Error enumerating answer sets: {str(e)}")


@app.post("/validate")
async def validate_route(payload: dict):
    """Diagnostics and completion nogood census of a program."""
    try:
        program = _require_program(payload)
        report = process_validate(program)

        return {
            "message": "Program validated successfully",
            "report": report
        }

    except HTTPException:
        raise
    except BAD_INPUT as e:
        log_activity("validate_error", {"error": str(e)})
        raise HTTPException(status_code=400, detail=f"Invalid program: {str(e)}")
    except Exception as e:
        log_activity("validate_error", {"error": str(e)})
        raise HTTPException(status_code=500, detail=f"Error validating program: {str(e)}")


@app.get("/runs")
async def runs_route(instance: Optional[str] = None):
    """Get recorded solve runs."""
    try:
        runs = get_runs(instance)

        return {
            "message": "Runs retrieved successfully",
            "runs": runs,
            "count": len(runs)
        }

    except Exception as e:
        log_activity("runs_error", {"error": str(e)})
        raise HTTPException(status_code=500, detail=f"Error getting runs: {str(e)}")


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
