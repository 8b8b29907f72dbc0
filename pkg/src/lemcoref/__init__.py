"""Two-stage cross-document event coreference.

Stage one is a lemma heuristic that blocks the quadratic mention-pair
space down to a balanced candidate set; stage two hands the survivors to
a pluggable pairwise scorer whose symmetric decisions drive
connected-component clustering. Results are scored with MUC, B-cubed,
CEAF-e, LEA, and their CoNLL mean.
"""

from ._backend import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = ["kernel_backend", "__version__"]
