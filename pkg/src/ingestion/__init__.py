"""Ingestion module - Data-file loading with checksums and the persisted w*(N) memo cache."""
