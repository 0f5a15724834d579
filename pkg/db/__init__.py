# Run history database for the free-field workbench
