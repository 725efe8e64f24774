# Weyl operator package
