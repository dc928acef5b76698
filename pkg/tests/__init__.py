# GR toolkit test suite
