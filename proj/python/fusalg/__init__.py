"""Finite ring and module workbench.

Rings and right modules are given by full operation tables over element
indices; the package decides torsion, fusibility, singularity and related
predicates, builds localizations and trivial extensions, and runs the
registered theorem suite over generated corpora.
"""

try:
    from ._fusalg import *  # noqa: F401,F403  (installed package layout)
    from ._fusalg import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _fusalg import *  # noqa: F401,F403
    from _fusalg import __version__  # noqa: F401
