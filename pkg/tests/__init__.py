"""Test suite for conjtensor"""
