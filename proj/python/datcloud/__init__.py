"""Multi-layered data architecture modeling toolchain."""

from datcloud._datcloud import (
    Diagnostic,
    Model,
    format_text,
    from_json,
    instantiate,
    list_templates,
    load,
    metrics,
    metrics_text,
    rule_catalog,
    savings_report,
    to_dot,
    to_json,
    trace,
    validate,
)

__all__ = [
    "Diagnostic",
    "Model",
    "format_text",
    "from_json",
    "instantiate",
    "list_templates",
    "load",
    "metrics",
    "metrics_text",
    "rule_catalog",
    "savings_report",
    "to_dot",
    "to_json",
    "trace",
    "validate",
]

__version__ = "0.1.0"
