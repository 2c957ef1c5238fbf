from enum import Enum
from typing import Literal

Scheme = Literal["direct", "random", "personalized"]


class ApplicationMode(str, Enum):
    PRETRAINED_DIRECT = "PretrainedDirect"
    PRETRAINED_RANDOM_FT = "PretrainedRandomFT"
    PRETRAINED_PERSONALIZED_FT = "PretrainedPersonalizedFT"
    UNINIT_RANDOM = "UninitRandom"
    UNINIT_PERSONALIZED = "UninitPersonalized"

    @property
    def pretrained(self) -> bool:
        return self.value.startswith("Pretrained")

    @property
    def scheme(self) -> Scheme:
        match self:
            case ApplicationMode.PRETRAINED_DIRECT:
                return "direct"
            case ApplicationMode.PRETRAINED_RANDOM_FT | ApplicationMode.UNINIT_RANDOM:
                return "random"
            case _:
                return "personalized"


# Row order of the results table.
MODE_ORDER: tuple[ApplicationMode, ...] = tuple(ApplicationMode)
