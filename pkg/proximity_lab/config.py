import os

DATABASE_URL = os.environ.get("DATABASE_URL", "sqlite:///./proximity_lab.db")
LOG_LEVEL = os.environ.get("PROXIMITY_LAB_LOG_LEVEL", "WARNING")
STRICT_SETS = os.environ.get("PROXIMITY_LAB_STRICT_SETS", "1") not in ("0", "false", "no")

SCHEMA_VERSION = 1
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
