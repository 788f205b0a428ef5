"""Skills package for the klucas MCP server."""
