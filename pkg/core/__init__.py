# optional, but helps Python treat this as a package
# public modules:
__all__ = [
    "assignment", "completion", "config", "decide", "driver", "ground_model", "harness",
    "instances", "learn", "nogood_store", "oracle", "propagate", "queryhandler", "storage", "workers",
]
