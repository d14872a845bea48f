import warnings

# Suppress tqdm experimental warning for rich integration
warnings.filterwarnings("ignore", message=".*rich is experimental.*")
