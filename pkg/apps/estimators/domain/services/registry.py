"""
Estimator base class and registry.
Implementations register themselves by kind with ``@register_estimator``.
"""

import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import Any, ClassVar, TypeVar

from apps.corpus.domain.models import Dataset
from apps.workload.domain.models import Query

from ..models import EstimatorSpec, Family

logger = logging.getLogger(__name__)


class EstimatorError(Exception):
    """Raised when an estimator cannot be built, trained or queried."""

    pass


class UnknownEstimatorError(EstimatorError):
    """Raised when a spec names a kind nobody registered."""

    pass


class MissingCardinalityError(EstimatorError):
    """Raised when a query-driven estimator gets unlabeled training queries."""

    pass


class CardEstimator(ABC):
    """
    Base class for a cardinality estimator.

    Subclasses declare ``kind``, ``family`` and ``defaults`` (the accepted
    hyperparameters) and implement ``_fit`` and ``_estimate``.
    """

    kind: ClassVar[str]
    family: ClassVar[Family]
    defaults: ClassVar[dict[str, Any]] = {}

    def __init__(self, **hyperparams: Any) -> None:
        unknown = sorted(set(hyperparams) - set(self.defaults))
        if unknown:
            raise EstimatorError(f"{self.kind} does not accept hyperparams {unknown}")
        self.hp: dict[str, Any] = {**self.defaults, **hyperparams}
        self.schema: dict[str, set[str]] = {}

    def fit(self, d: Dataset, train: Sequence[Query]) -> None:
        self.schema = {t.name: set(t.column_names) for t in d.tables}
        self._fit(d, train)

    def estimate(self, q: Query) -> tuple[float, int]:
        """
        Estimate the cardinality of ``q``.

        Returns:
            (estimate floored at 1.0, cost units spent)

        Raises:
            EstimatorError: If ``q`` does not fit the training schema
        """
        for table in q.tables:
            if table not in self.schema:
                raise EstimatorError(f"{self.kind}: unknown table '{table}'")
        for r in q.range_predicates:
            if r.column not in self.schema[r.table]:
                raise EstimatorError(
                    f"{self.kind}: unknown column {r.table}.{r.column}"
                )
        card, cost = self._estimate(q)
        return max(float(card), 1.0), int(cost)

    @abstractmethod
    def _fit(self, d: Dataset, train: Sequence[Query]) -> None: ...

    @abstractmethod
    def _estimate(self, q: Query) -> tuple[float, int]: ...


_REGISTRY: dict[str, type[CardEstimator]] = {}

E = TypeVar("E", bound=type[CardEstimator])

REFERENCE_KINDS = ("hist-avi", "sample-eval", "chain-bayes", "qd-linear", "qd-mlp")


def register_estimator(cls: E) -> E:
    """Class decorator adding ``cls`` to the registry under ``cls.kind``."""
    if cls.kind in _REGISTRY:
        raise ValueError(f"Estimator kind '{cls.kind}' is already registered")
    _REGISTRY[cls.kind] = cls
    return cls


def get_estimator_class(kind: str) -> type[CardEstimator]:
    try:
        return _REGISTRY[kind]
    except KeyError:
        raise UnknownEstimatorError(
            f"Unknown estimator kind '{kind}' (known: {', '.join(_REGISTRY)})"
        ) from None


def registered_kinds() -> list[str]:
    return list(_REGISTRY)


def reference_pool() -> list[EstimatorSpec]:
    """The five reference estimators, data-driven first."""
    return [
        EstimatorSpec(id=kind, kind=kind, family=get_estimator_class(kind).family)
        for kind in REFERENCE_KINDS
    ]


def check_pool(pool: Sequence[EstimatorSpec]) -> None:
    """
    Raises:
        EstimatorError: On duplicate ids, unknown kinds or a family that does
            not match the registered implementation
    """
    ids = [s.id for s in pool]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise EstimatorError(f"Duplicate estimator ids in pool: {duplicates}")
    for spec in pool:
        cls = get_estimator_class(spec.kind)
        if cls.family != spec.family:
            raise EstimatorError(
                f"Estimator '{spec.id}' declares family {spec.family} but "
                f"{spec.kind} is {cls.family}"
            )
