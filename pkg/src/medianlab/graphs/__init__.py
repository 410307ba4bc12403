"""Graph substrate: metric, Θ-classes, median checks, amalgams and DOT export."""
