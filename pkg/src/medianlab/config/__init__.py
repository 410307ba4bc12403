"""medianlab budget configuration."""
