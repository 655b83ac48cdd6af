"""
HTTP routers; each mirrors a CLI command
"""
