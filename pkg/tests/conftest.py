import random
import unicodedata

import pytest

from reaccent.corpus import Document
from reaccent.synth import SynthConfig, generate
from reaccent.text import DiacriticMap
from reaccent.train import TrainConfig, train_model


def text_to_docs(text: str) -> list[Document]:
    """Blank-line-separated blocks as documents, like corpus loading does."""
    docs, block = [], []

    def flush():
        if block:
            docs.append(Document(f"doc{len(docs)}", unicodedata.normalize("NFC", "\n".join(block))))
            block.clear()

    for line in text.splitlines():
        if line.strip():
            block.append(line)
        else:
            flush()
    flush()
    return docs


@pytest.fixture(scope="session")
def dmap():
    return DiacriticMap.builtin("es")


@pytest.fixture(scope="session")
def planted_docs(dmap):
    text = generate(SynthConfig(keys=4, occurrences=80), random.Random(11))
    return text_to_docs(text)


@pytest.fixture(scope="session")
def planted_model(dmap, planted_docs):
    return train_model(planted_docs, dmap, TrainConfig(), lang="es")
