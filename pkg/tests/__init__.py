# Test suite for the free-field workbench
