"""
Voting committee model: multiwinner rules, committee decision rules and
the ultimate satisfaction of voters.
"""

__version__ = "1.0.0"
