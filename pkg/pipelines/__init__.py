# Job runner and reproduction pipeline
