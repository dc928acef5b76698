# Command-line surface and worked examples
