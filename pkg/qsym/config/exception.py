class ValidationError(Exception):
    """A configuration or input file does not match its declared types."""
