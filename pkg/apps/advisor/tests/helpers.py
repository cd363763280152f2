"""
Small labeled corpora and RCS fixtures for advisor tests.
"""

import numpy as np

from apps.corpus.domain.models import Dataset, LabelRecord
from apps.corpus.tests.factories import star_dataset
from apps.encoder.domain.models import EncoderConfig
from apps.encoder.domain.services import GINEncoder, TrainedEncoder
from apps.featurizer.domain.services import fit_normalization

from ..domain.models import RCS, RcsEntry
from ..domain.services import build_rcs

ESTIMATORS = ("e1", "e2")
SMALL = EncoderConfig(n_layers=2, hidden=8, embed_dim=4, init_seed=0)


def record(
    dataset_id: str, estimator_id: str, qerr: float, latency: float = 1.0
) -> LabelRecord:
    return LabelRecord(
        dataset_id=dataset_id,
        estimator_id=estimator_id,
        qerr_mean=qerr,
        latency_mean=latency,
        unit="cost",
    )


def small_corpus(n: int = 6) -> list[Dataset]:
    """Star datasets with one or two children and varying data."""
    return [
        star_dataset(
            dataset_id=f"ds{i:04d}", n_children=1 + i % 2, domain=10 + 5 * i, seed=i
        )
        for i in range(n)
    ]


def alternating_records(
    corpus: list[Dataset], ids: tuple[str, ...] = ESTIMATORS
) -> dict[str, list[LabelRecord]]:
    """Even datasets favor the first estimator, odd ones the second."""
    out: dict[str, list[LabelRecord]] = {}
    for i, d in enumerate(corpus):
        winner = ids[i % 2]
        out[d.id] = [record(d.id, e, 1.5 if e == winner else 4.0) for e in ids]
    return out


def untrained_model(corpus: list[Dataset], w_a: float = 1.0) -> TrainedEncoder:
    features = fit_normalization(corpus)
    return TrainedEncoder(
        encoder=GINEncoder(SMALL, features.feature_dim), features=features, w_a=w_a
    )


def small_rcs(n: int = 6) -> tuple[list[Dataset], RCS]:
    corpus = small_corpus(n)
    rcs = build_rcs(
        corpus, untrained_model(corpus), alternating_records(corpus), ESTIMATORS
    )
    return corpus, rcs


def rcs_with_drift_vectors(rcs: RCS, vectors: np.ndarray) -> RCS:
    """Copy of ``rcs`` whose members sit at ``vectors`` in drift space."""
    entries = [
        RcsEntry(
            dataset_id=f"p{i}",
            embedding=np.zeros(SMALL.embed_dim),
            records=rcs.entries[0].records,
            graph=rcs.entries[0].graph,
            drift=v,
        )
        for i, v in enumerate(vectors)
    ]
    return RCS(model=rcs.model, estimator_ids=rcs.estimator_ids, entries=entries)
