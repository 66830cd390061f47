# Spin-valve physics: spinor algebra, modes, scattering, operating points, oracle
