"""Event structures, domains and nice labelings."""
