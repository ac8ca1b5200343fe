"""
Services for branescope.
"""
