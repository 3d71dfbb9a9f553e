"""decolab command-line interface"""
