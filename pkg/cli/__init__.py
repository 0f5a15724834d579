# Command-line front end for the free-field workbench
