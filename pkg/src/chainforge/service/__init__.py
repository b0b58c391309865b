"""HTTP front end; run with `uvicorn chainforge.service.api:app`."""
