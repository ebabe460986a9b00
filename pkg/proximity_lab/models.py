import json
from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Integer, String, Text

from .database import Base


def _now():
    return datetime.now(timezone.utc)


class ExperimentRun(Base):
    __tablename__ = "experiment_runs"

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String, index=True)
    polynomial = Column(String, nullable=True)
    seed = Column(Integer, default=0)
    status = Column(String, index=True, default="ok")
    exit_code = Column(Integer, default=0)
    report = Column(Text, nullable=True)
    created_at = Column(DateTime(timezone=True), default=_now, index=True)

    def report_dict(self):
        return json.loads(self.report) if self.report else None
