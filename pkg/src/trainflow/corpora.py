"""Format-compatible synthetic stand-ins for the four pretraining corpora.

Each profile mimics its corpus's labeling style: a single task phase, one
TSST-like stress block, several events from a thresholded continuous
rating, and many in-the-wild self-tags with motion.
"""
import logging
from dataclasses import dataclass

from src.core.exceptions import InsufficientDataError
from src.core.seeds import derive_seed
from src.e4.synthetic import EventEffect, SyntheticConfig, generate_cohort
from src.e4.types import Session
from src.trainflow.config import PretrainConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusProfile:
    name: str
    role: str
    events_per_session: int
    effect_scale: float
    activity_segments: tuple[tuple[float, float], ...] = ()


STANDIN_PROFILES: tuple[CorpusProfile, ...] = (
    CorpusProfile("dtu", "task phase", 1, 1.0),
    CorpusProfile("wesad", "TSST-like block", 1, 1.5),
    CorpusProfile("affectiveroad", "thresholded continuous rating", 3, 0.8),
    CorpusProfile("adarp", "in-the-wild self-tags", 5, 1.0, ((1200.0, 1500.0),)),
)


@dataclass
class PretrainCorpus:
    name: str
    sessions: list[Session]
    role: str = ""

    def __post_init__(self) -> None:
        if not self.sessions:
            raise InsufficientDataError(f"corpus {self.name} is empty")
        subjects = {s.subject_id for s in self.sessions}
        if len(subjects) < 2:
            raise InsufficientDataError(f"corpus {self.name} needs >= 2 subjects, has {len(subjects)}")


def profile_config(profile: CorpusProfile, cfg: PretrainConfig, root_seed: int) -> SyntheticConfig:
    base = EventEffect(response_s=cfg.response_s)
    scale = cfg.event_scale * profile.effect_scale
    effect = base.model_copy(
        update={"eda": base.eda * scale, "hr": base.hr * scale, "temp": base.temp * scale, "bvp": base.bvp * scale}
    )
    return SyntheticConfig(
        seed=derive_seed(root_seed, "corpus", profile.name),
        n_subjects=cfg.subjects_per_corpus,
        weeks_per_subject=cfg.weeks_per_subject,
        session_duration_s=cfg.session_duration_s,
        events_per_session=profile.events_per_session,
        event_effect=effect,
        activity_segments=list(profile.activity_segments),
        noise_scale=cfg.noise_scale,
        include_baseline=False,
    )


def build_standin_corpora(cfg: PretrainConfig, root_seed: int = 0) -> list[PretrainCorpus]:
    corpora = []
    for profile in STANDIN_PROFILES:
        sessions = generate_cohort(profile_config(profile, cfg, root_seed))
        corpora.append(PretrainCorpus(profile.name, sessions, profile.role))
        logger.info("Corpus %s (%s): %d sessions", profile.name, profile.role, len(sessions))
    return corpora
