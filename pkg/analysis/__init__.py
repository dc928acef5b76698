# GR measures, partition of the measure line, property checks and the brute-force oracle
