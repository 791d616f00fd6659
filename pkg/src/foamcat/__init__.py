"""foamcat: sl2/sl3 link homology through ladder webs and foams."""

__version__ = "0.1.0"
