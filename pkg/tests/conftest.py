"""
Pytest Configuration and Fixtures

Shared fixtures: small seeded synthetic cohorts, hand-built examples and
preprocessed sessions. Cohorts are session-scoped because generating and
filtering them dominates test time.
"""
from typing import Callable

import numpy as np
import pytest

from src.dsp.pipeline import PreprocessedSession, preprocess_sessions
from src.e4.synthetic import EventEffect, SyntheticConfig, generate_cohort
from src.e4.types import Session
from src.windowing.types import Example


# ============================================
# Synthetic cohorts
# ============================================

@pytest.fixture(scope="session")
def small_config() -> SyntheticConfig:
    """Three subjects, two weeks, half-hour sessions, three events each."""
    return SyntheticConfig(
        seed=11,
        n_subjects=3,
        weeks_per_subject=2,
        session_duration_s=1800.0,
        events_per_session=3,
        event_effect=EventEffect(eda=2.0, hr=25.0, temp=0.8, bvp=0.8, response_s=120.0),
        noise_scale=0.5,
    )


@pytest.fixture(scope="session")
def small_cohort(small_config: SyntheticConfig) -> list[Session]:
    return generate_cohort(small_config)


@pytest.fixture(scope="session")
def small_processed(small_cohort: list[Session]) -> list[PreprocessedSession]:
    return preprocess_sessions(small_cohort, 4)


# ============================================
# Hand-built examples
# ============================================

@pytest.fixture
def make_example() -> Callable[..., Example]:
    """Factory for 4 x L examples with a recognizable signal."""

    def _make(
        label: int = 0,
        subject_id: str = "S01",
        week_index: int = 1,
        window_start: float = 0.0,
        length: int = 240,
        acc_window: np.ndarray | None = None,
        fill: float | None = None,
    ) -> Example:
        if fill is None:
            rng = np.random.default_rng(int(window_start) + 1000 * label)
            signal = rng.standard_normal((4, length))
        else:
            signal = np.full((4, length), fill)
        return Example(
            signal=signal,
            label=label,
            subject_id=subject_id,
            week_index=week_index,
            window_start=window_start,
            acc_window=acc_window,
        )

    return _make


@pytest.fixture
def balanced_examples(make_example) -> list[Example]:
    """10 events and 20 non-events spread over three subjects and two weeks."""
    examples = []
    for i in range(30):
        examples.append(
            make_example(
                label=1 if i % 3 == 0 else 0,
                subject_id=f"S0{i % 3 + 1}",
                week_index=1 + (i // 3) % 2,
                window_start=60.0 * i,
            )
        )
    return examples
