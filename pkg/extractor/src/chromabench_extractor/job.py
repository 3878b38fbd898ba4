"""Job descriptions for feature export runs."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidJob

__all__ = ["DEFAULT_CLIP_VARIANT", "ExtractJob", "ExtractModel", "INCEPTION_DIM"]

# pool3 width is fixed by the Inception-v3 architecture
INCEPTION_DIM = 2048

DEFAULT_CLIP_VARIANT = "openai/clip-vit-base-patch32"


class ExtractModel(enum.Enum):
    """Which network (and which tower of it) produces the rows."""

    INCEPTION_POOL3 = "inception"
    CLIP_IMAGE = "clip-image"
    CLIP_TEXT = "clip-text"


@dataclass(frozen=True)
class ExtractJob:
    """One export run: where the inputs live, which model embeds them, where the CFS goes.

    input_path is an image directory for the image models and a prompts file
    (one "id<TAB>caption" or bare caption per line) for CLIP_TEXT.
    """

    input_path: Path
    model: ExtractModel
    output_path: Path
    batch_size: int = 32
    device: str = "cpu"
    clip_variant: str = DEFAULT_CLIP_VARIANT

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_path", Path(self.input_path))
        object.__setattr__(self, "output_path", Path(self.output_path))
        if not isinstance(self.model, ExtractModel):
            raise InvalidJob(f"model must be an ExtractModel, got {self.model!r}")
        if not isinstance(self.batch_size, int) or self.batch_size < 1:
            raise InvalidJob(f"batch_size must be a positive int, got {self.batch_size!r}")
        if not self.device or not isinstance(self.device, str):
            raise InvalidJob(f"device must be a non-empty string, got {self.device!r}")
        if not self.clip_variant:
            raise InvalidJob("clip_variant must be non-empty")
