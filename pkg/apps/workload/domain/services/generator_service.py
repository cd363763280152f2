"""
Random SPJ workload generation and workload files.
"""

import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from apps.corpus.domain.models import Dataset, JoinEdge

from ..models import JoinPredicate, Query, RangePredicate, Workload, WorkloadLine
from .oracle_service import WorkloadError, exact_card

logger = logging.getLogger(__name__)

WORKLOAD_FILE = "workload.jsonl"
ATTEMPTS_PER_QUERY = 20


def random_query(d: Dataset, pred_prob: float, rng: np.random.Generator) -> Query:
    """
    Draw one query: a connected table subset grown from a random start along
    schema edges, plus per-attribute range filters with probability
    ``pred_prob``.
    """
    names = d.table_names
    size = int(rng.integers(1, len(names) + 1))
    chosen = [names[int(rng.integers(0, len(names)))]]
    edges: list[JoinEdge] = []
    while len(chosen) < size:
        frontier = [
            (nbr, edge)
            for t in chosen
            for nbr, edge in d.neighbors(t)
            if nbr not in chosen
        ]
        if not frontier:
            break
        nbr, edge = frontier[int(rng.integers(0, len(frontier)))]
        chosen.append(nbr)
        edges.append(edge)

    chosen.sort(key=d.table_index)
    ranges: list[RangePredicate] = []
    for table in chosen:
        t = d.table(table)
        for column in d.attribute_columns(table):
            if rng.random() >= pred_prob or t.n_rows == 0:
                continue
            values = t.column(column).values
            lo, hi = sorted(
                int(v)
                for v in rng.integers(values.min(), values.max() + 1, size=2)
            )
            ranges.append(RangePredicate(table=table, column=column, lo=lo, hi=hi))

    return Query(
        tables=chosen,
        join_predicates=sorted(
            (JoinPredicate.from_edge(e) for e in edges), key=str
        ),
        range_predicates=ranges,
    )


def _draw_unique(
    d: Dataset,
    n: int,
    pred_prob: float,
    rng: np.random.Generator,
    exclude: set[str],
    unique: bool,
) -> list[Query]:
    out: list[Query] = []
    seen: set[str] = set()
    attempts = 0
    while len(out) < n and attempts < ATTEMPTS_PER_QUERY * n:
        attempts += 1
        q = random_query(d, pred_prob, rng)
        key = q.key()
        if key in exclude or (unique and key in seen):
            continue
        seen.add(key)
        out.append(q)
    if len(out) < n:
        logger.warning(
            "Dataset %s: only %d of %d distinct queries after %d attempts",
            d.id, len(out), n, attempts,
        )
    return out


def gen_workload(
    d: Dataset,
    n_train: int,
    n_test: int,
    pred_prob: float,
    rng: np.random.Generator,
    with_cards: bool = True,
) -> Workload:
    """
    Generate disjoint train and test queries for ``d``.

    Test queries are pairwise distinct; train queries avoid every test query
    but may repeat each other. A dataset with too few distinct queries yields
    shorter splits and a warning.

    Args:
        with_cards: Run the oracle pass so every query carries ``true_card``

    Raises:
        WorkloadError: If the dataset has no tables
    """
    if not d.tables:
        raise WorkloadError(f"Dataset '{d.id}' has no tables to query")

    test = _draw_unique(d, n_test, pred_prob, rng, exclude=set(), unique=True)
    test_keys = {q.key() for q in test}
    train = _draw_unique(d, n_train, pred_prob, rng, exclude=test_keys, unique=False)

    if with_cards:
        test = [q.model_copy(update={"true_card": exact_card(d, q)}) for q in test]
        train = [q.model_copy(update={"true_card": exact_card(d, q)}) for q in train]

    logger.debug(
        "Dataset %s: %d train / %d test queries", d.id, len(train), len(test)
    )
    return Workload(dataset_id=d.id, train=train, test=test)


def save_workload(w: Workload, path: Path | str) -> None:
    """Write one ``WorkloadLine`` JSON document per query."""
    lines = [
        WorkloadLine(dataset_id=w.dataset_id, split=split, query=q).model_dump_json()
        for split, queries in (("train", w.train), ("test", w.test))
        for q in queries
    ]
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    except OSError as e:
        raise WorkloadError(f"Failed to write workload {target}: {e}") from e


def load_workload(path: Path | str) -> Workload:
    """
    Read a workload file written by ``save_workload``.

    Raises:
        WorkloadError: If the file is missing, malformed, or mixes datasets
    """
    source = Path(path)
    if not source.is_file():
        raise WorkloadError(f"Workload file {source} does not exist")

    dataset_ids: set[str] = set()
    splits: dict[str, list[Query]] = {"train": [], "test": []}
    for lineno, line in enumerate(source.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            entry = WorkloadLine.model_validate_json(line)
        except ValidationError as e:
            raise WorkloadError(f"Malformed query at {source}:{lineno}: {e}") from e
        dataset_ids.add(entry.dataset_id)
        splits[entry.split].append(entry.query)

    if len(dataset_ids) > 1:
        raise WorkloadError(f"{source} mixes datasets {sorted(dataset_ids)}")
    try:
        return Workload(
            dataset_id=dataset_ids.pop() if dataset_ids else source.parent.name,
            train=splits["train"],
            test=splits["test"],
        )
    except ValidationError as e:
        raise WorkloadError(f"Invalid workload {source}: {e}") from e
