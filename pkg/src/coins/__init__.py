"""Explanation-aware finite-domain constraint solving with relevance-bounded
explanation retention, conflict enumeration, propagation-free what-if
simulation and user-view projection of conflicts."""

__version__ = "0.1.0"
