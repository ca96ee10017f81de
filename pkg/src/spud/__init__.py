"""SPUD: nonce treebank generation and LM evaluation for Universal Dependencies."""

__version__ = "0.1.0"
