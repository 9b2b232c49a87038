"""Terminal rendering"""
