from fastapi import FastAPI

from .database import Base, engine
from .routers.experiments import router as experiments
from .routers.runs import router as runs

app = FastAPI(
    title="Proximity Lab API",
    description="Exact grid, proximity and incidence experiments on algebraic surfaces",
    version="0.1.0"
)

# Create tables
Base.metadata.create_all(bind=engine)

# Add routers
app.include_router(experiments)
app.include_router(runs)


@app.get("/", include_in_schema=False)
async def root():
    return {"service": "proximity-lab", "docs": "/docs"}
