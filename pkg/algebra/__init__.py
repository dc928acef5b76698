# Quivers, string and band modules, linear algebra over Q and the AR structure of cycle quivers
