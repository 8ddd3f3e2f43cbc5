"""Cycle discovery for quantum thermal machines: simulators, SAC training,
baseline optimizers, and Pareto-front tooling."""

__version__ = "0.1.0"
