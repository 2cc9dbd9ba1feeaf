"""Core configuration, models and errors for conjtensor"""
