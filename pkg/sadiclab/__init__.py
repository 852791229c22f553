"""sadiclab - S-adic sequences, return words and linear recurrence"""
__version__ = "0.1.0"
