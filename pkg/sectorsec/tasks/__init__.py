"""
Sweep Tasks Package
"""
