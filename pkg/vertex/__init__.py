# Free-field vertex algebra engine: series, Fock spaces, modes, checks
