"""Single source of the package version for reports and metadata."""

VERSION = "0.1.0"
