"""Exact verification toolkit for Freudenthal-Kantor triple systems,
structurable algebras and the graded Lie superalgebras they generate."""

__version__ = "0.1.0"
