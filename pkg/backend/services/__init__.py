"""Service layer: dataset loading, verification suites and reporting."""
