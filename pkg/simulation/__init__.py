# Time-domain lattice simulation
