"""
Workload bounded context module.

Select-project-join query generation over a dataset's schema graph, the exact
cardinality oracle, and the Q-error metric.

Structure:
- domain/models: Query, JoinPredicate, RangePredicate, Workload, WorkloadParams
- domain/services: query generator, workload files, oracle and Q-error
- apps.py: Django app configuration
"""
