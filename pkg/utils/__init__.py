# Logging, errors, configuration and memo caches
