# Pydantic models for the free-field workbench
