"""
Tests Package

Contains:
- conftest.py: Seeded synthetic cohorts and hand-built example fixtures
- unit/: One test module per slice (e4, dsp, windowing, activity, nn, metrics, ...)
- integration/: CLI runs through the whole pipeline (marked slow)
- mocks/: Grid cell runner replaying a fixed F1 table

Run tests with:
    pytest -m "not slow"
    pytest tests/ --cov=src --cov-report=html
"""
