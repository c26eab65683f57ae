"""Unit and acceptance tests for bianchi_padic."""
