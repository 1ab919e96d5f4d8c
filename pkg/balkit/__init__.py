"""
balkit - balanced simplicial complexes toolkit.
"""
