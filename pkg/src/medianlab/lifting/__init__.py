"""Grid complexes, lifts and their verifiers."""
