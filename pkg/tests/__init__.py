"""exact-bounds test suite"""
