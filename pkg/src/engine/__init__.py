"""Multistart execution for the nonconvex solvers"""
