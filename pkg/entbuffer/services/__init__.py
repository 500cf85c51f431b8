"""Orchestration between the core library and the command line."""
