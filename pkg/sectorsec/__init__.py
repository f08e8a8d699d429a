"""
sectorsec - secrecy outage analysis for sectoral-multicast AF relay networks
"""
__version__ = "1.0.0"
