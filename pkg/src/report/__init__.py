# Report package
