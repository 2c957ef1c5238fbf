"""
E4 Module - Session Ingestion and Synthetic Sessions

Contains:
- types.py: ChannelKind, ChannelRecording, Session
- reader.py: read_session / write_session in the Empatica E4 export layout,
  plus cohort trees (<subject>/week_<n>/)
- synthetic.py: SyntheticConfig and the seeded session generator
- explore.py: Exploratory summaries and histograms

The on-disk layout is the public E4 export convention: one CSV per channel,
line 1 the unix start time, line 2 the sample rate, then one sample per line.
"""
from .types import CANONICAL_RATES, PHYSIO_CHANNELS, BaselineInterval, ChannelKind, ChannelRecording, Session
from .reader import read_cohort, read_session, session_directory, write_cohort, write_session
from .synthetic import EventEffect, SyntheticConfig, generate_session

__all__ = [
    "CANONICAL_RATES",
    "PHYSIO_CHANNELS",
    "BaselineInterval",
    "ChannelKind",
    "ChannelRecording",
    "Session",
    "read_cohort",
    "read_session",
    "session_directory",
    "write_cohort",
    "write_session",
    "EventEffect",
    "SyntheticConfig",
    "generate_session",
]
