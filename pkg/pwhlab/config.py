import os

# Defaults can be overridden from the environment
LOG_LEVEL = os.getenv("PWHLAB_LOG_LEVEL", "WARNING").upper()

WORKERS = max(1, int(os.getenv("PWHLAB_WORKERS", str(min(4, os.cpu_count() or 1)))))

RK_METHOD = os.getenv("PWHLAB_RK_METHOD", "DOP853")

OUTPUT_DIR = os.getenv("PWHLAB_OUTPUT_DIR", "storage/outputs")
