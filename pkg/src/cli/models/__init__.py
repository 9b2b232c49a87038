"""Input and manifest models of the command line"""
