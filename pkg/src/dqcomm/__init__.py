"""Direct quantum communication over noisy pre-shared entanglement."""
