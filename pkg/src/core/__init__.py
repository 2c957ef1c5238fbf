"""
Core Module - Shared Infrastructure

Contains:
- config.py: Settings (environment) and the per-command JSON pipeline config
- exceptions.py: Custom exception classes
- seeds.py: Named random substreams derived from one root seed
- logging.py: One-call logging setup shared by the CLI and scripts

This module provides the foundation that the other slices build upon.
"""
