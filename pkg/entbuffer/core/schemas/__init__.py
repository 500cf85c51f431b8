"""Pydantic contracts shared across the toolkit."""
