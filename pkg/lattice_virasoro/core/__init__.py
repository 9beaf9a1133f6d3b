"""Core discrete complex analysis and mode algebra"""
