"""Generator matrices of the reference codes, one text file per code."""
