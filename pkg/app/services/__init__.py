"""
Engine services: polynomial algebra up through the Chern-number routes and verifiers
"""
