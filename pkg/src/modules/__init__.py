"""Analysis modules: constraint checking and restructuring."""
