"""Ontology compiler for factual English IS-A sentences."""

__version__ = "0.1.0"
