"""Hopf algebroids and Lie-Rinehart algebras over finitely presented commutative bases."""
