"""Core models: states, protocols, analytics, simulation and regimes."""
