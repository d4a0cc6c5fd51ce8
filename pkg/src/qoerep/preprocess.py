"""Review text -> cleaned token sequence.

Stages run in a fixed order: tokenize, strip special characters, drop
stopwords, keep nouns/adjectives (optional), Porter-stem (optional).  The
part-of-speech step uses a static lexicon of surface forms, which is why it
runs before stemming.  Words missing from the lexicon are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import ParseError
from .ingest import ReviewRecord
from .porter import stem

POS_TAGS = frozenset({"noun", "adjective", "verb", "adverb", "other"})
KEEP_TAGS = frozenset({"noun", "adjective"})


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    source_id: str = ""

    def __len__(self) -> int:
        return len(self.tokens)


def _data_text(name: str) -> str:
    return resources.files("qoerep.data").joinpath(name).read_text(encoding="utf-8")


def parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return frozenset(words)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Stopword set from a file, or the bundled list when ``path`` is None."""
    text = _data_text("stopwords.txt") if path is None else Path(path).read_text(encoding="utf-8")
    return parse_stopwords(text)


def parse_pos_lexicon(text: str, source: str = "<lexicon>") -> dict[str, frozenset[str]]:
    lexicon: dict[str, frozenset[str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2:
            raise ParseError("expected word<TAB>tags", line=lineno, path=source)
        word, tag_field = parts
        tags = frozenset(t.strip() for t in tag_field.split(",") if t.strip())
        unknown = tags - POS_TAGS
        if not tags or unknown:
            raise ParseError(f"bad tag(s) {sorted(unknown) or tag_field!r}", line=lineno, path=source)
        lexicon[word] = tags
    return lexicon


def load_pos_lexicon(path: str | Path | None = None) -> dict[str, frozenset[str]]:
    if path is None:
        return parse_pos_lexicon(_data_text("pos_lexicon.tsv"), "pos_lexicon.tsv")
    return parse_pos_lexicon(Path(path).read_text(encoding="utf-8"), str(path))


@dataclass(frozen=True)
class PreprocessConfig:
    stopword_list: frozenset[str] = field(default_factory=load_stopwords)
    pos_filter_enabled: bool = True
    stemming_enabled: bool = True
    pos_lexicon: Mapping[str, frozenset[str]] = field(default_factory=load_pos_lexicon)


def tokenize(text: str) -> list[str]:
    return [tok.lower() for tok in text.split()]


def strip_specials(tokens: list[str]) -> list[str]:
    """Delete every non-alphanumeric character; drop tokens left empty."""
    out = []
    for tok in tokens:
        kept = "".join(ch for ch in tok if ch.isalnum())
        if kept:
            out.append(kept)
    return out


def remove_stopwords(tokens: list[str], stoplist: frozenset[str] | set[str]) -> list[str]:
    return [tok for tok in tokens if tok not in stoplist]


def pos_filter(tokens: list[str], lexicon: Mapping[str, frozenset[str]]) -> list[str]:
    out = []
    for tok in tokens:
        tags = lexicon.get(tok)
        if tags is None or tags & KEEP_TAGS:
            out.append(tok)
    return out


def preprocess_tokens(text: str, config: PreprocessConfig) -> list[str]:
    tokens = remove_stopwords(strip_specials(tokenize(text)), config.stopword_list)
    if config.pos_filter_enabled:
        tokens = pos_filter(tokens, config.pos_lexicon)
    if config.stemming_enabled:
        # tokens with digits are identifiers ("s3", "v2"); leave them alone
        tokens = [stem(tok) if tok.isalpha() else tok for tok in tokens]
    return tokens


def preprocess_pipeline(record: ReviewRecord, config: PreprocessConfig) -> TokenSequence:
    return TokenSequence(tuple(preprocess_tokens(record.text, config)), record.id)
