# Splitting package
