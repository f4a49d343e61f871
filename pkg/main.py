from dotenv import load_dotenv
load_dotenv()

from fastapi import FastAPI
from routes.health import router as health_router
from routes.plans import router as plans_router
from routes.regions import router as regions_router
from routes.simulations import router as simulations_router

app = FastAPI()

app.include_router(health_router)
app.include_router(regions_router)
app.include_router(plans_router)
app.include_router(simulations_router)
