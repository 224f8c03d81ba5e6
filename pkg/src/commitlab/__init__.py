"""Electoral competition with and without platform commitment."""
