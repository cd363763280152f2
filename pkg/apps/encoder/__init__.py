"""
Encoder bounded context module.

A small numpy reverse-mode core and the GIN graph encoder built on it: L
GINConv layers with learnable epsilon over symmetrized edge weights, sum
pooling and an output projection to the embedding space.

Structure:
- domain/models: EncoderConfig, Embedding, the versioned model file
- domain/services: dense layers and losses (nn), GIN encoder, model IO
- apps.py: Django app configuration
"""
