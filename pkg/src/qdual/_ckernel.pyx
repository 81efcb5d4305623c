# cython: language_level=3, boundscheck=False, wraparound=False
# Compiled build of the term-engine loops; the source lives in _kernel.py.
include "_kernel.py"
