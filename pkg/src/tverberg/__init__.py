"""Local criteria for Tverberg graphs."""
