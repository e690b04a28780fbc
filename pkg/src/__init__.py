# Antilattice toolkit src package
