"""Text -> padded index sample, bundling the preprocessing state a model was trained with."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .embedding import PaddedSample, Vocabulary, encode_and_pad
from .ingest import ReviewRecord, label_index
from .preprocess import PreprocessConfig, preprocess_pipeline


@dataclass(frozen=True)
class TextPipeline:
    preprocess: PreprocessConfig
    vocab: Vocabulary
    max_len: int = 50

    def encode(self, record: ReviewRecord) -> PaddedSample:
        label = label_index(record.label) if record.label is not None else None
        tokens = preprocess_pipeline(record, self.preprocess)
        return encode_and_pad(tokens, self.vocab, self.max_len, label=label, source_id=record.id)

    def encode_all(self, records: Sequence[ReviewRecord]) -> list[PaddedSample]:
        return [self.encode(r) for r in records]
