# spinparity/services/__init__.py
"""
Services Package
================
All computation: linear algebra, states, quantifiers, the Dirac model,
thermal states and discrete symmetries.
"""
